#include "odlayout/pipeline.hpp"

#include "json_util.hpp"

namespace odl {

namespace {

void add_ports(Scene& scene, const GraphIndex& index, const std::string& box,
               const std::map<std::string, Point>& anchors, const Group& owner, Point origin) {
  for (const auto* row : {&owner.in_ports, &owner.out_ports}) {
    for (const Port& p : *row) {
      auto it = anchors.find(p.id);
      if (it == anchors.end()) continue;
      const Port* port = index.port(p.id);
      ScenePort sp;
      sp.id = box + "/" + p.id;
      sp.ref = p.id;
      sp.box = box;
      sp.point = it->second + origin;
      sp.direction = p.direction;
      sp.synthesized = port ? port->synthesized : p.synthesized;
      scene.ports.push_back(std::move(sp));
    }
  }
}

}  // namespace

Scene build_scene(const GraphIndex& index, const ExpansionPlan& plan,
                  const std::map<std::string, InnerLayout>& inner, const LayoutTree& tree,
                  const ConnectorOptions& connectors) {
  Scene scene;
  for (const LayoutTreeNode* node : tree.nodes()) {
    const Group* group = index.group(node->group_id);
    const InnerLayout& layout = inner.at(node->group_id);
    const Point origin = node->frame.origin();
    const std::string frame_id = "frame:" + node->group_id;

    SceneBox frame;
    frame.id = frame_id;
    frame.ref = node->group_id;
    frame.role = "frame";
    frame.kind = std::string(to_string(group->kind));
    frame.label = group->label;
    frame.rect = node->frame;
    frame.expanded = true;
    frame.diagnostic = group->diagnostic;
    scene.boxes.push_back(std::move(frame));
    add_ports(scene, index, frame_id, layout.port_anchors, *group, origin);

    for (const std::string& child : layout.child_order) {
      SceneBox box;
      box.id = child;
      box.ref = child;
      box.rect = layout.children.at(child).translated(origin);
      if (const Group* g = index.group(child)) {
        box.role = "group";
        box.kind = std::string(to_string(g->kind));
        box.label = g->label;
        box.expanded = plan.expanded.contains(child);
        box.diagnostic = g->diagnostic;
        scene.boxes.push_back(std::move(box));
        add_ports(scene, index, child, layout.child_ports, *g, origin);
      } else {
        const Atom* a = index.atom(child);
        box.role = "atom";
        box.kind = "atom";
        box.label = a ? a->label : child;
        scene.boxes.push_back(std::move(box));
      }
    }

    auto routed = route_inner(index, layout, origin);
    scene.edges.insert(scene.edges.end(), routed.begin(), routed.end());
  }
  auto links = route_connectors(tree, plan, inner, index, connectors);
  scene.edges.insert(scene.edges.end(), links.begin(), links.end());
  scene.canvas = compute_canvas(scene);
  return scene;
}

LayoutResult run_pipeline(const CompoundGraph& graph, const std::set<std::string>& expand,
                          const LayoutConfig& config) {
  LayoutResult result;
  ValidationResult validation = validate(graph);
  const bool structural = validation.fatal();
  result.graph = std::move(validation.graph);
  result.diagnostics = std::move(validation.diagnostics);
  result.fatal = structural || (config.strict && !result.diagnostics.empty());
  if (structural) return result;

  try {
    result.expansion = close_expansion(result.graph, expand);
  } catch (const UnknownIdError& e) {
    result.diagnostics.push_back(
        {DiagnosticCode::UnknownGroup, Severity::Fatal, e.id(), e.what()});
    result.fatal = true;
    return result;
  }

  const GraphIndex index(result.graph);
  result.plan = resolve_duplicates(result.graph, result.expansion, config.duplicate_mode);
  for (const std::string& id : result.plan.expanded) {
    if (index.group(id)) result.inner.emplace(id, layout_group(index, id, config.inner));
  }
  result.tree = config.baseline
                    ? layout_tree_baseline(index, result.plan, result.inner, config.tree)
                    : layout_tree(index, result.plan, result.inner, config.tree);
  result.scene = build_scene(index, result.plan, result.inner, result.tree,
                             {config.suppress_duplicate_edges});
  result.metrics = compute_metrics(result.scene, result.tree);
  result.laid_out = true;
  return result;
}

std::string to_json(const Diagnostic& d) {
  const detail::json j = {{"code", to_string(d.code)},
                          {"severity", to_string(d.severity)},
                          {"subject", d.subject},
                          {"message", d.message}};
  return detail::dump_canonical(j);
}

std::optional<DuplicateMode> parse_duplicate_mode(std::string_view text) {
  if (text == "each") return DuplicateMode::ExpandEach;
  if (text == "single") return DuplicateMode::SingleExpansion;
  return std::nullopt;
}

std::optional<ProximityMetric> parse_proximity_metric(std::string_view text) {
  if (text == "edge_gap") return ProximityMetric::EdgeGap;
  if (text == "center_gap") return ProximityMetric::CenterGap;
  return std::nullopt;
}

}  // namespace odl
