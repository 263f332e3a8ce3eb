#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "odlayout/geometry.hpp"
#include "odlayout/inner_layout.hpp"
#include "odlayout/model.hpp"
#include "odlayout/overview_tree.hpp"

namespace odl {

/// End of the polyline that carries the arrowhead: Source is the first point,
/// Target the last.
enum class ArrowAt { Source, Target };

struct RoutedEdge {
  std::string id;
  std::vector<Point> points;  // absolute, at least two
  EdgeStyle style = EdgeStyle::Flow;
  ArrowAt arrow_at = ArrowAt::Target;

  bool dashed() const { return style == EdgeStyle::DuplicateLink; }
  friend bool operator==(const RoutedEdge&, const RoutedEdge&) = default;
};

/// Absolute polylines for the edges of one detail frame. Polylines follow the
/// layered direction; arcs flipped during cycle removal carry the arrowhead at
/// their first point so the drawn arrow keeps the input direction.
std::vector<RoutedEdge> route_inner(const GraphIndex& index, const InnerLayout& inner,
                                    Point frame_origin);

struct ConnectorOptions {
  bool suppress_duplicate_edges = false;
};

/// Connector from each expanded group's collapsed box to its detail frame, and
/// a dashed link from every collapsed duplicate to its representative's frame.
std::vector<RoutedEdge> route_connectors(const LayoutTree& tree, const ExpansionPlan& plan,
                                         const std::map<std::string, InnerLayout>& inner,
                                         const GraphIndex& index,
                                         const ConnectorOptions& options = {});

/// Proper crossings between segments of different edges; touching endpoints
/// and collinear overlaps are not counted.
std::size_t count_crossings(std::span<const RoutedEdge> edges);

}  // namespace odl
