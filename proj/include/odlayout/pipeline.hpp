#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "odlayout/inner_layout.hpp"
#include "odlayout/model.hpp"
#include "odlayout/overview_tree.hpp"
#include "odlayout/routing.hpp"
#include "odlayout/scene.hpp"

namespace odl {

struct LayoutConfig {
  InnerConfig inner;
  TreeConfig tree;
  DuplicateMode duplicate_mode = DuplicateMode::ExpandEach;
  bool suppress_duplicate_edges = false;
  bool baseline = false;
  // Every diagnostic counts as fatal.
  bool strict = false;
};

struct LayoutResult {
  CompoundGraph graph;  // after validation repairs
  std::vector<Diagnostic> diagnostics;
  bool fatal = false;
  // Filled only when validation and expansion succeeded.
  bool laid_out = false;
  ExpansionState expansion;
  ExpansionPlan plan;
  std::map<std::string, InnerLayout> inner;
  LayoutTree tree;
  Scene scene;
  Metrics metrics;
};

/// validate -> close_expansion -> resolve_duplicates -> inner layout per
/// planned frame -> frame tree -> routing -> scene and metrics.
/// Structural errors and unknown expansion ids stop before layout. Under
/// `strict` any diagnostic sets `fatal`, but a repairable graph is still laid out.
LayoutResult run_pipeline(const CompoundGraph& graph, const std::set<std::string>& expand,
                          const LayoutConfig& config = {});

/// Scene assembly from finished layouts. Frames are "frame:<group>", boxes use
/// the element id, ports "<box>/<port>".
Scene build_scene(const GraphIndex& index, const ExpansionPlan& plan,
                  const std::map<std::string, InnerLayout>& inner, const LayoutTree& tree,
                  const ConnectorOptions& connectors = {});

/// One compact JSON object: {"code","message","severity","subject"}.
std::string to_json(const Diagnostic& diagnostic);

std::optional<DuplicateMode> parse_duplicate_mode(std::string_view text);
std::optional<ProximityMetric> parse_proximity_metric(std::string_view text);

}  // namespace odl
