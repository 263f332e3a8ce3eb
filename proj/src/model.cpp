#include "odlayout/model.hpp"

#include <algorithm>
#include <deque>

namespace odl {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Expression: return "expression";
    case GroupKind::Function: return "function";
    case GroupKind::Loop: return "loop";
    case GroupKind::Module: return "module";
    case GroupKind::Generic: return "generic";
  }
  return "generic";
}

std::string_view to_string(PortDirection direction) {
  return direction == PortDirection::In ? "in" : "out";
}

std::string_view to_string(EdgeStyle style) {
  switch (style) {
    case EdgeStyle::Flow: return "flow";
    case EdgeStyle::DuplicateLink: return "duplicate";
    case EdgeStyle::Connector: return "connector";
    case EdgeStyle::Diagnostic: return "diagnostic";
  }
  return "flow";
}

std::optional<GroupKind> parse_group_kind(std::string_view text) {
  for (GroupKind kind : {GroupKind::Expression, GroupKind::Function, GroupKind::Loop,
                         GroupKind::Module, GroupKind::Generic}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::UndefinedPort: return "UndefinedPort";
    case DiagnosticCode::HierarchyCycle: return "HierarchyCycle";
    case DiagnosticCode::DuplicateId: return "DuplicateId";
    case DiagnosticCode::MultipleParents: return "MultipleParents";
    case DiagnosticCode::UnknownChild: return "UnknownChild";
    case DiagnosticCode::InvalidRoot: return "InvalidRoot";
    case DiagnosticCode::UnscopedEdge: return "UnscopedEdge";
    case DiagnosticCode::InvalidEndpoint: return "InvalidEndpoint";
    case DiagnosticCode::OrphanAtom: return "OrphanAtom";
    case DiagnosticCode::UnknownGroup: return "UnknownGroup";
  }
  return "Unknown";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Fatal ? "fatal" : "warning";
}

// ---------------------------------------------------------------------------
// GraphIndex

GraphIndex::GraphIndex(const CompoundGraph& graph) : graph_(&graph) {
  for (const Group& g : graph.groups) {
    groups_.emplace(g.id, &g);
    for (const Port& p : g.in_ports) ports_.emplace(p.id, &p);
    for (const Port& p : g.out_ports) ports_.emplace(p.id, &p);
  }
  for (const Atom& a : graph.atoms) atoms_.emplace(a.id, &a);
  for (const Group& g : graph.groups) {
    for (const std::string& child : g.children) parents_.emplace(child, g.id);
  }
  if (!graph.roots.empty()) {
    roots_ = graph.roots;
  } else {
    for (const Group& g : graph.groups) {
      if (!parents_.contains(g.id)) roots_.push_back(g.id);
    }
  }
}

const Group* GraphIndex::group(std::string_view id) const {
  auto it = groups_.find(id);
  return it == groups_.end() ? nullptr : it->second;
}

const Atom* GraphIndex::atom(std::string_view id) const {
  auto it = atoms_.find(id);
  return it == atoms_.end() ? nullptr : it->second;
}

const Port* GraphIndex::port(std::string_view id) const {
  auto it = ports_.find(id);
  return it == ports_.end() ? nullptr : it->second;
}

std::optional<std::string> GraphIndex::parent(std::string_view id) const {
  auto it = parents_.find(id);
  if (it == parents_.end()) return std::nullopt;
  return it->second;
}

bool GraphIndex::is_root(std::string_view id) const {
  return std::find(roots_.begin(), roots_.end(), id) != roots_.end();
}

std::vector<std::string> GraphIndex::ancestors(std::string_view id) const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen{std::string(id)};
  auto current = parent(id);
  while (current && seen.insert(*current).second) {
    out.push_back(*current);
    current = parent(*current);
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate

bool ValidationResult::fatal() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Fatal; });
}

namespace {

void report(std::vector<Diagnostic>& out, DiagnosticCode code, Severity severity,
            std::string subject, std::string message) {
  out.push_back({code, severity, std::move(subject), std::move(message)});
}

void check_structure(const CompoundGraph& graph, std::vector<Diagnostic>& diags) {
  std::map<std::string, int> seen;
  auto note = [&](const std::string& id, std::string_view what) {
    if (++seen[id] == 2) {
      report(diags, DiagnosticCode::DuplicateId, Severity::Fatal, id,
             "id '" + id + "' is declared more than once (" + std::string(what) + ")");
    }
  };
  for (const Group& g : graph.groups) {
    note(g.id, "group");
    for (const Port& p : g.in_ports) note(p.id, "port");
    for (const Port& p : g.out_ports) note(p.id, "port");
  }
  for (const Atom& a : graph.atoms) note(a.id, "atom");
  std::map<std::string, int> edge_ids;
  for (const Edge& e : graph.edges) {
    if (++edge_ids[e.id] == 2) {
      report(diags, DiagnosticCode::DuplicateId, Severity::Fatal, e.id,
             "edge id '" + e.id + "' is declared more than once");
    }
  }

  std::set<std::string> group_ids;
  std::set<std::string> atom_ids;
  for (const Group& g : graph.groups) group_ids.insert(g.id);
  for (const Atom& a : graph.atoms) atom_ids.insert(a.id);

  std::map<std::string, std::string> parent;
  for (const Group& g : graph.groups) {
    for (const std::string& child : g.children) {
      if (!group_ids.contains(child) && !atom_ids.contains(child)) {
        report(diags, DiagnosticCode::UnknownChild, Severity::Fatal, child,
               "group '" + g.id + "' lists unknown child '" + child + "'");
        continue;
      }
      auto [it, inserted] = parent.emplace(child, g.id);
      if (!inserted) {
        report(diags, DiagnosticCode::MultipleParents, Severity::Fatal, child,
               "'" + child + "' is a child of both '" + it->second + "' and '" + g.id + "'");
      }
    }
  }

  // Cycle detection on the first-parent relation.
  std::set<std::string> reported;
  for (const Group& g : graph.groups) {
    std::vector<std::string> path{g.id};
    std::set<std::string> on_path{g.id};
    auto it = parent.find(g.id);
    while (it != parent.end()) {
      if (on_path.contains(it->second)) {
        auto start = std::find(path.begin(), path.end(), it->second);
        std::vector<std::string> cycle(start, path.end());
        const std::string key = *std::min_element(cycle.begin(), cycle.end());
        if (reported.insert(key).second) {
          std::string chain;
          for (const auto& id : cycle) chain += id + " -> ";
          report(diags, DiagnosticCode::HierarchyCycle, Severity::Fatal, key,
                 "group hierarchy contains a cycle: " + chain + it->second);
        }
        break;
      }
      path.push_back(it->second);
      on_path.insert(it->second);
      it = parent.find(it->second);
    }
  }

  for (const std::string& root : graph.roots) {
    if (!group_ids.contains(root)) {
      report(diags, DiagnosticCode::InvalidRoot, Severity::Fatal, root,
             "root '" + root + "' is not a group");
    } else if (parent.contains(root)) {
      report(diags, DiagnosticCode::InvalidRoot, Severity::Fatal, root,
             "root '" + root + "' has parent '" + parent.at(root) + "'");
    }
  }
  if (!graph.roots.empty()) {
    std::set<std::string> declared(graph.roots.begin(), graph.roots.end());
    for (const Group& g : graph.groups) {
      if (!parent.contains(g.id) && !declared.contains(g.id)) {
        report(diags, DiagnosticCode::InvalidRoot, Severity::Warning, g.id,
               "group '" + g.id + "' has no parent and is not a declared root; it is not drawn");
      }
    }
  }
  for (const Atom& a : graph.atoms) {
    if (!parent.contains(a.id)) {
      report(diags, DiagnosticCode::OrphanAtom, Severity::Warning, a.id,
             "atom '" + a.id + "' belongs to no group; it is not drawn");
    }
  }
}

enum class EndRole { Source, Target };

// Frame in which a port endpoint naturally sits: an In port used as a source
// or an Out port used as a target is seen from inside its owner.
bool seen_from_inside(PortDirection direction, EndRole role) {
  return (direction == PortDirection::In) == (role == EndRole::Source);
}

// Candidate frames for drawing an endpoint, most natural first.
std::vector<std::string> frames_for(const GraphIndex& index, const std::string& id,
                                    EndRole role) {
  std::vector<std::string> out;
  if (index.atom(id)) {
    if (auto p = index.parent(id)) out.push_back(*p);
    return out;
  }
  const Port* port = index.port(id);
  if (!port) return out;
  const std::string& owner = port->owner;
  auto outside = index.parent(owner);
  if (seen_from_inside(port->direction, role)) {
    out.push_back(owner);
    if (outside) out.push_back(*outside);
  } else {
    if (outside) out.push_back(*outside);
    out.push_back(owner);
  }
  return out;
}

struct UndefinedRef {
  std::string port_id;
  EndRole role;
  std::optional<std::string> owner_hint;
  std::size_t edge;
};

// Frame implied by the other (resolvable) endpoint of an edge, if any.
std::optional<std::string> other_frame(const GraphIndex& index, const Edge& edge,
                                       EndRole undefined_role) {
  if (edge.scope) return edge.scope;
  const bool other_is_target = undefined_role == EndRole::Source;
  const std::string& other = other_is_target ? edge.target : edge.source;
  auto frames = frames_for(index, other, other_is_target ? EndRole::Target : EndRole::Source);
  if (frames.empty()) return std::nullopt;
  return frames.front();
}

}  // namespace

ValidationResult validate(const CompoundGraph& input) {
  ValidationResult result{input, {}};
  check_structure(input, result.diagnostics);
  if (result.fatal()) return result;

  CompoundGraph& graph = result.graph;
  std::vector<UndefinedRef> undefined;
  {
    GraphIndex index(graph);
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
      const Edge& e = graph.edges[i];
      for (EndRole role : {EndRole::Source, EndRole::Target}) {
        const std::string& id = role == EndRole::Source ? e.source : e.target;
        if (index.atom(id) || index.port(id)) continue;
        if (index.group(id)) {
          report(result.diagnostics, DiagnosticCode::InvalidEndpoint, Severity::Warning, e.id,
                 "edge '" + e.id + "' ends at group '" + id + "' instead of one of its ports");
          continue;
        }
        const auto& hint = role == EndRole::Source ? e.source_owner : e.target_owner;
        undefined.push_back({id, role, hint, i});
      }
    }
  }

  // Synthesize one port per undefined id; the first reference decides owner and
  // direction.
  std::set<std::string> synthesized;
  for (const UndefinedRef& ref : undefined) {
    if (!synthesized.insert(ref.port_id).second) continue;
    GraphIndex index(graph);
    const Edge& edge = graph.edges[ref.edge];
    auto frame = other_frame(index, edge, ref.role);

    std::string owner;
    bool inside = false;
    if (ref.owner_hint && index.group(*ref.owner_hint)) {
      owner = *ref.owner_hint;
      inside = frame && *frame == owner;
    } else {
      if (!frame && !index.roots().empty()) frame = index.roots().front();
      owner = "undefined@" + (frame ? *frame : std::string("graph"));
      if (!index.group(owner)) {
        Group placeholder;
        placeholder.id = owner;
        placeholder.label = "undefined";
        placeholder.diagnostic = true;
        if (frame) {
          for (Group& g : graph.groups) {
            if (g.id == *frame) g.children.push_back(owner);
          }
        } else if (!graph.roots.empty()) {
          graph.roots.push_back(owner);
        }
        graph.groups.push_back(std::move(placeholder));
      }
    }

    Port port;
    port.id = ref.port_id;
    port.owner = owner;
    port.synthesized = true;
    const bool as_source = ref.role == EndRole::Source;
    port.direction = (as_source != inside) ? PortDirection::Out : PortDirection::In;
    for (Group& g : graph.groups) {
      if (g.id != owner) continue;
      (port.direction == PortDirection::In ? g.in_ports : g.out_ports).push_back(port);
    }
    report(result.diagnostics, DiagnosticCode::UndefinedPort, Severity::Warning, ref.port_id,
           "edge '" + edge.id + "' references undefined port '" + ref.port_id + "' (owner '" +
               owner + "')");
  }

  // Derive the frame each edge is drawn in.
  GraphIndex index(graph);
  for (Edge& e : graph.edges) {
    auto src = frames_for(index, e.source, EndRole::Source);
    auto dst = frames_for(index, e.target, EndRole::Target);
    if (src.empty() || dst.empty()) {
      if (index.atom(e.source) || index.port(e.source) || index.atom(e.target) ||
          index.port(e.target)) {
        report(result.diagnostics, DiagnosticCode::UnscopedEdge, Severity::Warning, e.id,
               "edge '" + e.id + "' has an endpoint outside every group; it is not drawn");
      }
      e.scope.reset();
      continue;
    }
    auto drawable = [&](const std::string& frame) {
      return std::find(src.begin(), src.end(), frame) != src.end() &&
             std::find(dst.begin(), dst.end(), frame) != dst.end();
    };
    if (e.scope) {
      if (!drawable(*e.scope)) {
        report(result.diagnostics, DiagnosticCode::UnscopedEdge, Severity::Warning, e.id,
               "edge '" + e.id + "' cannot be drawn inside its scope '" + *e.scope + "'");
        e.scope.reset();
      }
      continue;
    }
    if (src.front() == dst.front()) {
      e.scope = src.front();
      continue;
    }
    for (const std::string& frame : src) {
      if (drawable(frame)) {
        e.scope = frame;
        break;
      }
    }
    if (!e.scope) {
      report(result.diagnostics, DiagnosticCode::UnscopedEdge, Severity::Warning, e.id,
             "edge '" + e.id + "' connects elements of different groups without ports; "
             "it is not drawn");
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// expansion

ExpansionState close_expansion(const CompoundGraph& graph,
                               const std::set<std::string>& requested) {
  GraphIndex index(graph);
  ExpansionState state;
  for (const std::string& id : requested) {
    if (!index.group(id)) throw UnknownIdError(id);
    state.expanded.insert(id);
    for (const std::string& ancestor : index.ancestors(id)) {
      if (index.is_root(ancestor)) break;
      state.expanded.insert(ancestor);
    }
  }
  return state;
}

ExpansionPlan resolve_duplicates(const CompoundGraph& graph, const ExpansionState& state,
                                 DuplicateMode mode) {
  GraphIndex index(graph);
  ExpansionPlan plan;
  plan.expanded = state.expanded;
  plan.expanded.insert(index.roots().begin(), index.roots().end());
  if (mode == DuplicateMode::ExpandEach) return plan;

  // Top-down over visible frames so that collapsed duplicates prune their
  // subtrees before those subtrees are examined.
  std::deque<std::string> queue(index.roots().begin(), index.roots().end());
  while (!queue.empty()) {
    const std::string parent_id = queue.front();
    queue.pop_front();
    const Group* parent = index.group(parent_id);
    if (!parent || !plan.expanded.contains(parent_id)) continue;

    std::map<std::string, std::vector<std::string>> by_definition;
    for (const std::string& child : parent->children) {
      const Group* g = index.group(child);
      if (g && g->definition_id) by_definition[*g->definition_id].push_back(child);
    }
    for (auto& [definition, members] : by_definition) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      auto rep = std::find_if(members.begin(), members.end(), [&](const std::string& id) {
        return plan.expanded.contains(id);
      });
      if (rep == members.end()) continue;
      const std::string representative = *rep;
      for (const std::string& member : members) {
        if (member == representative) continue;
        plan.expanded.erase(member);
        plan.duplicate_links.push_back({member, representative});
      }
    }
    for (const std::string& child : parent->children) {
      if (index.group(child)) queue.push_back(child);
    }
  }

  // Drop expansions whose parent frame is no longer shown.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = plan.expanded.begin(); it != plan.expanded.end();) {
      auto p = index.parent(*it);
      if (p && !plan.expanded.contains(*p)) {
        it = plan.expanded.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return plan;
}

}  // namespace odl
