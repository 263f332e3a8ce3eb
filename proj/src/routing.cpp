#include "odlayout/routing.hpp"

#include <algorithm>

namespace odl {

std::vector<RoutedEdge> route_inner(const GraphIndex& index, const InnerLayout& inner,
                                    Point frame_origin) {
  std::vector<RoutedEdge> out;
  const auto& edges = index.graph().edges;
  for (const InnerEdge& ie : inner.edges) {
    const Edge& edge = edges.at(ie.edge);
    RoutedEdge r;
    r.id = edge.id;
    r.points.reserve(ie.points.size());
    for (Point p : ie.points) r.points.push_back(p + frame_origin);

    const Port* s = index.port(edge.source);
    const Port* t = index.port(edge.target);
    const bool diagnostic = (s && s->synthesized) || (t && t->synthesized);
    r.style = diagnostic ? EdgeStyle::Diagnostic : EdgeStyle::Flow;
    r.arrow_at = (edge.arrow_at_source != ie.reversed) ? ArrowAt::Source : ArrowAt::Target;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RoutedEdge> route_connectors(const LayoutTree& tree, const ExpansionPlan& plan,
                                         const std::map<std::string, InnerLayout>& inner,
                                         const GraphIndex& index,
                                         const ConnectorOptions& options) {
  std::vector<RoutedEdge> out;
  for (const LayoutTreeNode* parent : tree.nodes()) {
    for (const LayoutTreeNode& child : parent->children) {
      const Rect anchor = child.anchor.translated(parent->frame.origin());
      const Rect& frame = child.frame;
      RoutedEdge r;
      r.id = "connector:" + child.group_id;
      r.style = EdgeStyle::Connector;
      if (child.direction == Direction::Down) {
        const Point start{anchor.center_x(), anchor.bottom()};
        r.points = {start,
                    {std::clamp(start.x, frame.left(), frame.right()), frame.top()}};
      } else {
        const Point start{anchor.right(), anchor.center_y()};
        r.points = {start,
                    {frame.left(), std::clamp(start.y, frame.top(), frame.bottom())}};
      }
      out.push_back(std::move(r));
    }
  }
  if (options.suppress_duplicate_edges) return out;

  for (const DuplicateLink& link : plan.duplicate_links) {
    const LayoutTreeNode* rep = tree.find(link.representative);
    auto parent = index.parent(link.duplicate);
    if (!rep || !parent) continue;
    const LayoutTreeNode* parent_node = tree.find(*parent);
    auto it = inner.find(*parent);
    if (!parent_node || it == inner.end()) continue;
    auto box = it->second.children.find(link.duplicate);
    if (box == it->second.children.end()) continue;
    const Rect dup = box->second.translated(parent_node->frame.origin());
    const auto [p, q] = nearest_points(dup, rep->frame);
    RoutedEdge r;
    r.id = "duplicate:" + link.duplicate + "->" + link.representative;
    r.style = EdgeStyle::DuplicateLink;
    r.points = {p, q};
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t count_crossings(std::span<const RoutedEdge> edges) {
  struct Segment {
    Point a;
    Point b;
    double x0;
    double x1;
    std::size_t edge;
  };
  std::vector<Segment> segments;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& pts = edges[e].points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      segments.push_back({pts[i - 1], pts[i], std::min(pts[i - 1].x, pts[i].x),
                          std::max(pts[i - 1].x, pts[i].x), e});
    }
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& s, const Segment& t) { return s.x0 < t.x0; });

  std::size_t crossings = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    for (std::size_t j = i + 1; j < segments.size() && segments[j].x0 <= s.x1; ++j) {
      const Segment& t = segments[j];
      if (s.edge == t.edge) continue;
      if (segments_cross(s.a, s.b, t.a, t.b)) ++crossings;
    }
  }
  return crossings;
}

}  // namespace odl
