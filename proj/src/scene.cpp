#include "odlayout/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json_util.hpp"

namespace odl {

using detail::json;
using detail::format_fixed;

std::size_t Scene::frame_count() const {
  return static_cast<std::size_t>(std::count_if(
      boxes.begin(), boxes.end(), [](const SceneBox& b) { return b.role == "frame"; }));
}

Rect compute_canvas(const Scene& scene, double margin) {
  std::vector<Rect> rects;
  for (const SceneBox& b : scene.boxes) rects.push_back(b.rect);
  for (const ScenePort& p : scene.ports) rects.push_back({p.point.x, p.point.y, 0.0, 0.0});
  for (const RoutedEdge& e : scene.edges) {
    for (Point p : e.points) rects.push_back({p.x, p.y, 0.0, 0.0});
  }
  if (rects.empty()) return {};
  const Rect box = bounding_box(rects);
  return {box.x - margin, box.y - margin, box.width + 2.0 * margin, box.height + 2.0 * margin};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json rect_fields(json j, const Rect& r) {
  j["x"] = r.x;
  j["y"] = r.y;
  j["w"] = r.width;
  j["h"] = r.height;
  return j;
}

std::string_view arrow_name(ArrowAt a) { return a == ArrowAt::Source ? "source" : "target"; }

EdgeStyle parse_style(const std::string& s) {
  for (EdgeStyle st : {EdgeStyle::Flow, EdgeStyle::DuplicateLink, EdgeStyle::Connector,
                       EdgeStyle::Diagnostic}) {
    if (to_string(st) == s) return st;
  }
  throw Error("unknown edge style '" + s + "'");
}

Rect read_rect(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(),
          j.at("h").get<double>()};
}

}  // namespace

std::string to_json(const Scene& scene) {
  json boxes = json::array();
  for (const SceneBox& b : scene.boxes) {
    json j = rect_fields(json::object(), b.rect);
    j["id"] = b.id;
    j["ref"] = b.ref;
    j["role"] = b.role;
    j["kind"] = b.kind;
    j["label"] = b.label;
    j["expanded"] = b.expanded;
    j["diagnostic"] = b.diagnostic;
    boxes.push_back(std::move(j));
  }
  json ports = json::array();
  for (const ScenePort& p : scene.ports) {
    ports.push_back({{"id", p.id},
                     {"ref", p.ref},
                     {"box", p.box},
                     {"x", p.point.x},
                     {"y", p.point.y},
                     {"direction", to_string(p.direction)},
                     {"synthesized", p.synthesized}});
  }
  json edges = json::array();
  for (const RoutedEdge& e : scene.edges) {
    json points = json::array();
    for (Point p : e.points) points.push_back(json::array({p.x, p.y}));
    edges.push_back({{"id", e.id},
                     {"points", std::move(points)},
                     {"style", to_string(e.style)},
                     {"arrow", arrow_name(e.arrow_at)}});
  }
  json doc = {{"schema", kSceneSchema},
              {"boxes", std::move(boxes)},
              {"ports", std::move(ports)},
              {"edges", std::move(edges)},
              {"canvas", rect_fields(json::object(), scene.canvas)}};
  return detail::dump_canonical(doc);
}

Scene parse_scene(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.contains("schema") && doc.at("schema") != kSceneSchema) {
      throw Error("unsupported scene schema " + doc.at("schema").dump());
    }
    Scene scene;
    for (const json& b : doc.at("boxes")) {
      SceneBox box;
      box.id = b.at("id").get<std::string>();
      box.ref = b.value("ref", box.id);
      box.role = b.at("role").get<std::string>();
      box.kind = b.value("kind", std::string("generic"));
      box.label = b.value("label", std::string());
      box.rect = read_rect(b);
      box.expanded = b.value("expanded", false);
      box.diagnostic = b.value("diagnostic", false);
      scene.boxes.push_back(std::move(box));
    }
    for (const json& p : doc.at("ports")) {
      ScenePort port;
      port.id = p.at("id").get<std::string>();
      port.ref = p.value("ref", port.id);
      port.box = p.value("box", std::string());
      port.point = {p.at("x").get<double>(), p.at("y").get<double>()};
      port.direction =
          p.value("direction", std::string("in")) == "out" ? PortDirection::Out : PortDirection::In;
      port.synthesized = p.value("synthesized", false);
      scene.ports.push_back(std::move(port));
    }
    for (const json& e : doc.at("edges")) {
      RoutedEdge edge;
      edge.id = e.at("id").get<std::string>();
      for (const json& p : e.at("points")) edge.points.push_back({p.at(0), p.at(1)});
      edge.style = parse_style(e.value("style", std::string("flow")));
      edge.arrow_at = e.value("arrow", std::string("target")) == "source" ? ArrowAt::Source
                                                                           : ArrowAt::Target;
      scene.edges.push_back(std::move(edge));
    }
    scene.canvas = read_rect(doc.at("canvas"));
    return scene;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed scene JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string attr(std::string_view name, double v) {
  return " " + std::string(name) + "=\"" + format_fixed(v) + "\"";
}

std::string attr(std::string_view name, std::string_view v) {
  return " " + std::string(name) + "=\"" + escape_xml(v) + "\"";
}

std::string fill_for(const SvgTheme& theme, const std::string& kind) {
  auto it = theme.fills.find(kind);
  return it != theme.fills.end() ? it->second : theme.fills.at("generic");
}

}  // namespace

std::string to_svg(const Scene& scene, const SvgTheme& theme) {
  const Rect& c = scene.canvas;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"";
  out += " viewBox=\"" + format_fixed(c.x) + " " + format_fixed(c.y) + " " +
         format_fixed(c.width) + " " + format_fixed(c.height) + "\"";
  out += attr("width", c.width) + attr("height", c.height) + ">\n";

  const bool arrows = std::any_of(scene.edges.begin(), scene.edges.end(), [](const RoutedEdge& e) {
    return e.style == EdgeStyle::Flow || e.style == EdgeStyle::Diagnostic;
  });
  if (arrows) {
    out += "<defs>"
           "<marker id=\"arrow-end\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">"
           "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"" + theme.flow_stroke + "\"/></marker>"
           "<marker id=\"arrow-start\" viewBox=\"0 0 10 10\" refX=\"0\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">"
           "<path d=\"M10,0 L0,5 L10,10 z\" fill=\"" + theme.flow_stroke + "\"/></marker>"
           "</defs>\n";
  }

  for (const SceneBox& b : scene.boxes) {
    const bool frame = b.role == "frame";
    out += "<rect class=\"box " + b.role + "\"" + attr("data-id", b.id) + attr("x", b.rect.x) +
           attr("y", b.rect.y) + attr("width", b.rect.width) + attr("height", b.rect.height) +
           attr("rx", frame ? 6.0 : 3.0) + attr("fill", fill_for(theme, b.kind));
    if (frame) out += " fill-opacity=\"0.25\"";
    out += attr("stroke", b.diagnostic ? theme.diagnostic_stroke : std::string("#444444"));
    out += "/>\n";
    if (!b.label.empty()) {
      const double tx = b.rect.x + (frame ? 14.0 : 4.0);
      const double ty = frame ? b.rect.y + theme.font_size + 4.0
                              : b.rect.center_y() + theme.font_size / 3.0;
      out += "<text class=\"label\"" + attr("x", tx) + attr("y", ty) +
             attr("font-size", theme.font_size) + " font-family=\"sans-serif\">" +
             escape_xml(b.label) + "</text>\n";
    }
  }

  for (const RoutedEdge& e : scene.edges) {
    std::string stroke = theme.flow_stroke;
    if (e.style == EdgeStyle::Diagnostic) stroke = theme.diagnostic_stroke;
    if (e.style == EdgeStyle::Connector) stroke = theme.connector_stroke;
    if (e.style == EdgeStyle::DuplicateLink) stroke = theme.duplicate_stroke;
    std::string points;
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      if (i) points += ' ';
      points += format_fixed(e.points[i].x) + "," + format_fixed(e.points[i].y);
    }
    out += "<polyline class=\"edge " + std::string(to_string(e.style)) + "\"" +
           attr("data-id", e.id) + attr("points", points) + " fill=\"none\"" +
           attr("stroke", stroke) + " stroke-width=\"1.2\"";
    if (e.dashed()) out += " stroke-dasharray=\"6 4\"";
    if (e.style == EdgeStyle::Flow || e.style == EdgeStyle::Diagnostic) {
      out += e.arrow_at == ArrowAt::Target ? " marker-end=\"url(#arrow-end)\""
                                           : " marker-start=\"url(#arrow-start)\"";
    }
    out += "/>\n";
  }

  const double half = theme.port_size / 2.0;
  for (const ScenePort& p : scene.ports) {
    out += "<rect class=\"port " + std::string(to_string(p.direction)) + "\"" +
           attr("data-id", p.id) + attr("x", p.point.x - half) + attr("y", p.point.y - half) +
           attr("width", theme.port_size) + attr("height", theme.port_size) +
           attr("fill", p.synthesized ? theme.diagnostic_fill : theme.port_fill) + "/>\n";
  }
  out += "</svg>\n";
  return out;
}

// ---------------------------------------------------------------------------
// metrics

double Metrics::mean_anchor_frame_distance() const {
  if (anchor_frame_distances.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [id, d] : anchor_frame_distances) sum += d;
  return sum / static_cast<double>(anchor_frame_distances.size());
}

Metrics compute_metrics(const Scene& scene, const LayoutTree& tree) {
  Metrics m;
  for (const RoutedEdge& e : scene.edges) m.total_edge_length += polyline_length(e.points);
  m.crossing_count = count_crossings(scene.edges);
  m.bounding_area = scene.canvas.width * scene.canvas.height;
  m.frame_count = scene.frame_count();
  for (const LayoutTreeNode* parent : tree.nodes()) {
    for (const LayoutTreeNode& child : parent->children) {
      const Rect anchor = child.anchor.translated(parent->frame.origin());
      m.anchor_frame_distances[child.group_id] = rect_distance(anchor, child.frame);
    }
  }
  return m;
}

std::string to_json(const Metrics& metrics) {
  json distances = json::object();
  for (const auto& [id, d] : metrics.anchor_frame_distances) distances[id] = d;
  json doc = {{"total_edge_length", metrics.total_edge_length},
              {"crossing_count", metrics.crossing_count},
              {"anchor_frame_distances", std::move(distances)},
              {"mean_anchor_frame_distance", metrics.mean_anchor_frame_distance()},
              {"bounding_area", metrics.bounding_area},
              {"frame_count", metrics.frame_count}};
  return detail::dump_canonical(doc);
}

}  // namespace odl
