#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "odlayout/geometry.hpp"
#include "odlayout/model.hpp"
#include "odlayout/overview_tree.hpp"
#include "odlayout/routing.hpp"

namespace odl {

inline constexpr std::string_view kSceneSchema = "scene/1";

struct SceneBox {
  std::string id;
  std::string ref;   // graph id of the group or atom
  std::string role;  // "frame", "group" or "atom"
  std::string kind;  // group kind name, or "atom"
  std::string label;
  Rect rect;
  bool expanded = false;  // frames, and collapsed boxes whose frame is shown
  bool diagnostic = false;

  friend bool operator==(const SceneBox&, const SceneBox&) = default;
};

struct ScenePort {
  std::string id;
  std::string ref;  // graph port id
  std::string box;  // scene box the square sits on
  Point point;
  PortDirection direction = PortDirection::In;
  bool synthesized = false;

  friend bool operator==(const ScenePort&, const ScenePort&) = default;
};

struct Scene {
  std::vector<SceneBox> boxes;
  std::vector<ScenePort> ports;
  std::vector<RoutedEdge> edges;
  Rect canvas;

  std::size_t frame_count() const;
  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Bounding box of all geometry plus `margin`; empty scenes get a zero canvas.
Rect compute_canvas(const Scene& scene, double margin = 10.0);

/// Canonical text: sorted keys, coordinates fixed to three decimals.
std::string to_json(const Scene& scene);

/// Inverse of to_json. Throws Error on malformed input.
Scene parse_scene(std::string_view text);

struct SvgTheme {
  std::map<std::string, std::string> fills = {
      {"expression", "#a6cee3"}, {"function", "#b2df8a"}, {"loop", "#fdbf6f"},
      {"module", "#cab2d6"},     {"generic", "#d9d9d9"},  {"atom", "#ffffb3"},
  };
  std::string diagnostic_fill = "#ff0000";
  std::string port_fill = "#333333";
  std::string flow_stroke = "#555555";
  std::string diagnostic_stroke = "#d62728";
  std::string connector_stroke = "#aaaaaa";
  std::string duplicate_stroke = "#888888";
  double port_size = 8.0;
  double font_size = 11.0;
};

/// SVG 1.1 document with one shape per box, port and edge.
std::string to_svg(const Scene& scene, const SvgTheme& theme = {});

struct Metrics {
  double total_edge_length = 0.0;
  std::size_t crossing_count = 0;
  std::map<std::string, double> anchor_frame_distances;
  double bounding_area = 0.0;
  std::size_t frame_count = 0;

  double mean_anchor_frame_distance() const;
};

Metrics compute_metrics(const Scene& scene, const LayoutTree& tree);
std::string to_json(const Metrics& metrics);

}  // namespace odl
