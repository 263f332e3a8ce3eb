#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace odl {

/// Base class for contract violations and malformed input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is given an id that does not name a group.
class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(std::string id)
      : Error("unknown group id '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

enum class GroupKind { Expression, Function, Loop, Module, Generic };
enum class PortDirection { In, Out };
enum class EdgeStyle { Flow, DuplicateLink, Connector, Diagnostic };

std::string_view to_string(GroupKind kind);
std::string_view to_string(PortDirection direction);
std::string_view to_string(EdgeStyle style);
std::optional<GroupKind> parse_group_kind(std::string_view text);

struct Port {
  std::string id;
  std::string owner;
  PortDirection direction = PortDirection::In;
  std::optional<std::string> label;
  // Created by validate() for a reference to an undeclared port.
  bool synthesized = false;

  friend bool operator==(const Port&, const Port&) = default;
};

struct Group {
  std::string id;
  std::string label;
  GroupKind kind = GroupKind::Generic;
  std::vector<std::string> children;
  std::vector<Port> in_ports;
  std::vector<Port> out_ports;
  std::optional<std::string> definition_id;
  // Placeholder group created by validate() to own ports whose owner is unknown.
  bool diagnostic = false;

  friend bool operator==(const Group&, const Group&) = default;
};

/// Leaf node.
struct Atom {
  std::string id;
  std::string label;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Edge {
  std::string id;
  std::string source;
  std::string target;
  EdgeStyle style = EdgeStyle::Flow;
  // The rendered arrowhead belongs at the source end (set for Function Network
  // wires whose direction was flipped for layout).
  bool arrow_at_source = false;
  // Group whose detail frame draws the edge. Derived by validate() when absent.
  std::optional<std::string> scope;
  // Owner hints used when an endpoint names an undeclared port.
  std::optional<std::string> source_owner;
  std::optional<std::string> target_owner;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct CompoundGraph {
  std::vector<Group> groups;
  std::vector<Atom> atoms;
  std::vector<Edge> edges;
  // Top-level groups. When empty, every group without a parent is a root.
  std::vector<std::string> roots;

  friend bool operator==(const CompoundGraph&, const CompoundGraph&) = default;
};

/// Lookup tables over a CompoundGraph. Holds pointers into the graph, which
/// must outlive the index and stay unmodified.
class GraphIndex {
 public:
  explicit GraphIndex(const CompoundGraph& graph);

  const CompoundGraph& graph() const { return *graph_; }
  const Group* group(std::string_view id) const;
  const Atom* atom(std::string_view id) const;
  const Port* port(std::string_view id) const;
  /// Parent group of a group or atom; nullopt for roots and orphans.
  std::optional<std::string> parent(std::string_view id) const;
  /// Effective roots: declared roots, or every parentless group.
  const std::vector<std::string>& roots() const { return roots_; }
  bool is_root(std::string_view id) const;
  /// Group ids from the parent of `id` up to its root. Stops on cycles.
  std::vector<std::string> ancestors(std::string_view id) const;

 private:
  const CompoundGraph* graph_;
  std::map<std::string, const Group*, std::less<>> groups_;
  std::map<std::string, const Atom*, std::less<>> atoms_;
  std::map<std::string, const Port*, std::less<>> ports_;
  std::map<std::string, std::string, std::less<>> parents_;
  std::vector<std::string> roots_;
};

enum class DiagnosticCode {
  UndefinedPort,
  HierarchyCycle,
  DuplicateId,
  MultipleParents,
  UnknownChild,
  InvalidRoot,
  UnscopedEdge,
  InvalidEndpoint,
  OrphanAtom,
  UnknownGroup,
};

enum class Severity { Warning, Fatal };

std::string_view to_string(DiagnosticCode code);
std::string_view to_string(Severity severity);

struct Diagnostic {
  DiagnosticCode code;
  Severity severity;
  std::string subject;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationResult {
  // Input graph plus synthesized ports, placeholder groups and derived edge
  // scopes. Identical to the input when a fatal diagnostic was raised.
  CompoundGraph graph;
  std::vector<Diagnostic> diagnostics;

  bool fatal() const;
};

/// Checks structure and edge endpoints. Undefined port references are repaired
/// by synthesizing ports; structural errors are reported as fatal and left
/// unrepaired.
ValidationResult validate(const CompoundGraph& graph);

struct ExpansionState {
  std::set<std::string> expanded;
  friend bool operator==(const ExpansionState&, const ExpansionState&) = default;
};

/// Smallest superset of `requested` in which every member's parent is either
/// a member or a root. Roots are implicitly expanded and only appear when
/// requested. Throws UnknownIdError for ids that do not name a group.
ExpansionState close_expansion(const CompoundGraph& graph,
                               const std::set<std::string>& requested);

enum class DuplicateMode { ExpandEach, SingleExpansion };

struct DuplicateLink {
  std::string duplicate;       // collapsed copy
  std::string representative;  // expanded copy
  friend bool operator==(const DuplicateLink&, const DuplicateLink&) = default;
};

struct ExpansionPlan {
  // Groups that get a detail frame; always includes every root.
  std::set<std::string> expanded;
  std::vector<DuplicateLink> duplicate_links;
  friend bool operator==(const ExpansionPlan&, const ExpansionPlan&) = default;
};

ExpansionPlan resolve_duplicates(const CompoundGraph& graph, const ExpansionState& state,
                                 DuplicateMode mode);

}  // namespace odl
