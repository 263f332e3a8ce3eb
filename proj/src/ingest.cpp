#include "odlayout/ingest.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace odl {

using detail::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, path);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": JSON syntax error",
                     "", line, column);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail(path + "." + key, "expected a string");
  return it->get<std::string>();
}

bool optional_bool(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) fail(path + "." + key, "expected a boolean");
  return it->get<bool>();
}

const json& optional_array(const json& obj, const std::string& key, const std::string& path) {
  static const json empty = json::array();
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return empty;
  if (!it->is_array()) fail(path + "." + key, "expected an array");
  return *it;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

GroupKind kind_from(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return parse_group_kind(lower).value_or(GroupKind::Generic);
}

std::vector<Port> read_ports(const json& list, const std::string& path, const std::string& owner,
                             PortDirection direction) {
  std::vector<Port> ports;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = index_path(path, i);
    Port port;
    port.owner = owner;
    port.direction = direction;
    if (list[i].is_string()) {
      port.id = list[i].get<std::string>();
    } else {
      port.id = require_string(list[i], "id", p);
      port.label = optional_string(list[i], "label", p);
      port.synthesized = optional_bool(list[i], "synthesized", p);
    }
    ports.push_back(std::move(port));
  }
  return ports;
}

}  // namespace

CompoundGraph parse_generic(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) fail("$", "expected an object");
  CompoundGraph graph;

  const json& groups = optional_array(doc, "groups", "$");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string path = index_path("groups", i);
    const json& g = groups[i];
    Group group;
    group.id = require_string(g, "id", path);
    group.label = optional_string(g, "label", path).value_or(group.id);
    group.kind = kind_from(optional_string(g, "kind", path).value_or("generic"));
    const json& children = optional_array(g, "children", path);
    for (std::size_t c = 0; c < children.size(); ++c) {
      if (!children[c].is_string()) fail(index_path(path + ".children", c), "expected a string");
      group.children.push_back(children[c].get<std::string>());
    }
    group.in_ports = read_ports(optional_array(g, "in_ports", path), path + ".in_ports", group.id,
                                PortDirection::In);
    group.out_ports = read_ports(optional_array(g, "out_ports", path), path + ".out_ports",
                                 group.id, PortDirection::Out);
    group.definition_id = optional_string(g, "definition_id", path);
    group.diagnostic = optional_bool(g, "diagnostic", path);
    graph.groups.push_back(std::move(group));
  }

  const json& atoms = optional_array(doc, "atoms", "$");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = index_path("atoms", i);
    Atom atom;
    atom.id = require_string(atoms[i], "id", path);
    atom.label = optional_string(atoms[i], "label", path).value_or(atom.id);
    graph.atoms.push_back(std::move(atom));
  }

  const json& edges = optional_array(doc, "edges", "$");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = index_path("edges", i);
    const json& e = edges[i];
    Edge edge;
    edge.id = require_string(e, "id", path);
    edge.source = require_string(e, "source", path);
    edge.target = require_string(e, "target", path);
    if (auto style = optional_string(e, "style", path); style && *style != "flow") {
      fail(path + ".style", "only flow edges may appear in input, got '" + *style + "'");
    }
    if (auto arrow = optional_string(e, "arrow", path)) {
      if (*arrow != "source" && *arrow != "target") {
        fail(path + ".arrow", "expected \"source\" or \"target\"");
      }
      edge.arrow_at_source = *arrow == "source";
    }
    edge.scope = optional_string(e, "scope", path);
    edge.source_owner = optional_string(e, "source_owner", path);
    edge.target_owner = optional_string(e, "target_owner", path);
    graph.edges.push_back(std::move(edge));
  }

  const json& roots = optional_array(doc, "roots", "$");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!roots[i].is_string()) fail(index_path("roots", i), "expected a string");
    graph.roots.push_back(roots[i].get<std::string>());
  }
  return graph;
}

std::string to_generic_json(const CompoundGraph& graph) {
  auto ports_json = [](const std::vector<Port>& ports) {
    json list = json::array();
    for (const Port& p : ports) {
      json j = {{"id", p.id}};
      if (p.label) j["label"] = *p.label;
      if (p.synthesized) j["synthesized"] = true;
      list.push_back(std::move(j));
    }
    return list;
  };
  json groups = json::array();
  for (const Group& g : graph.groups) {
    json j = {{"id", g.id},
              {"label", g.label},
              {"kind", to_string(g.kind)},
              {"children", g.children},
              {"in_ports", ports_json(g.in_ports)},
              {"out_ports", ports_json(g.out_ports)}};
    if (g.definition_id) j["definition_id"] = *g.definition_id;
    if (g.diagnostic) j["diagnostic"] = true;
    groups.push_back(std::move(j));
  }
  json atoms = json::array();
  for (const Atom& a : graph.atoms) atoms.push_back({{"id", a.id}, {"label", a.label}});
  json edges = json::array();
  for (const Edge& e : graph.edges) {
    json j = {{"id", e.id}, {"source", e.source}, {"target", e.target}};
    if (e.arrow_at_source) j["arrow"] = "source";
    if (e.scope) j["scope"] = *e.scope;
    if (e.source_owner) j["source_owner"] = *e.source_owner;
    if (e.target_owner) j["target_owner"] = *e.target_owner;
    edges.push_back(std::move(j));
  }
  json doc = {{"groups", std::move(groups)}, {"atoms", std::move(atoms)}, {"edges", std::move(edges)}};
  if (!graph.roots.empty()) doc["roots"] = graph.roots;
  return detail::dump_canonical(doc);
}

// ---------------------------------------------------------------------------
// Function Network subset

namespace {

class FunctionNetworkReader {
 public:
  explicit FunctionNetworkReader(const FunctionNetworkOptions& options) : options_(options) {}

  CompoundGraph read(const json& doc) {
    if (!doc.is_object()) fail("$", "expected an object");
    const json& boxes = optional_array(doc, "boxes", "$");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      graph_.roots.push_back(read_box(boxes[i], index_path("boxes", i)));
    }
    read_wires(optional_array(doc, "wires", "$"), "wires", std::nullopt);
    return std::move(graph_);
  }

 private:
  std::string read_box(const json& b, const std::string& path) {
    Group group;
    group.id = require_string(b, "id", path);
    group.label = optional_string(b, "name", path)
                      .value_or(optional_string(b, "label", path).value_or(group.id));
    group.kind = kind_from(optional_string(b, "type", path).value_or("generic"));
    group.definition_id = optional_string(b, "definition", path);

    const json& ports = optional_array(b, "ports", path);
    for (std::size_t i = 0; i < ports.size(); ++i) {
      const std::string p = index_path(path + ".ports", i);
      Port port;
      port.id = require_string(ports[i], "id", p);
      port.owner = group.id;
      port.label = optional_string(ports[i], "name", p);
      const std::string dir = require_string(ports[i], "direction", p);
      if (dir != "in" && dir != "out") fail(p + ".direction", "expected \"in\" or \"out\"");
      port.direction = dir == "in" ? PortDirection::In : PortDirection::Out;
      (port.direction == PortDirection::In ? group.in_ports : group.out_ports)
          .push_back(std::move(port));
    }

    const std::size_t slot = graph_.groups.size();
    graph_.groups.push_back(std::move(group));
    const std::string id = graph_.groups[slot].id;

    const json& children = optional_array(b, "boxes", path);
    std::vector<std::string> child_ids;
    for (std::size_t i = 0; i < children.size(); ++i) {
      child_ids.push_back(read_box(children[i], index_path(path + ".boxes", i)));
    }
    graph_.groups[slot].children = std::move(child_ids);
    read_wires(optional_array(b, "wires", path), path + ".wires", id);
    return id;
  }

  void read_wires(const json& wires, const std::string& path,
                  const std::optional<std::string>& scope) {
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const std::string p = index_path(path, i);
      const json& w = wires[i];
      Edge edge;
      edge.id = optional_string(w, "id", p).value_or("wire" + std::to_string(++anonymous_));
      std::string src = require_string(w, "src", p);
      std::string tgt = require_string(w, "tgt", p);
      auto src_box = optional_string(w, "src_box", p);
      auto tgt_box = optional_string(w, "tgt_box", p);
      // The arrow runs src -> tgt and points at the value's producer.
      if (options_.reverse_arrows) {
        std::swap(src, tgt);
        std::swap(src_box, tgt_box);
        edge.arrow_at_source = true;
      }
      edge.source = std::move(src);
      edge.target = std::move(tgt);
      edge.source_owner = std::move(src_box);
      edge.target_owner = std::move(tgt_box);
      edge.scope = scope;
      graph_.edges.push_back(std::move(edge));
    }
  }

  FunctionNetworkOptions options_;
  CompoundGraph graph_;
  std::size_t anonymous_ = 0;
};

}  // namespace

CompoundGraph parse_function_network(std::string_view text, const FunctionNetworkOptions& options) {
  return FunctionNetworkReader(options).read(parse_text(text));
}

std::optional<InputFormat> parse_input_format(std::string_view name) {
  if (name == "generic") return InputFormat::Generic;
  if (name == "fn") return InputFormat::FunctionNetwork;
  return std::nullopt;
}

InputFormat format_for_path(std::string_view path) {
  constexpr std::string_view fn = ".fn.json";
  if (path.size() >= fn.size() && path.substr(path.size() - fn.size()) == fn) {
    return InputFormat::FunctionNetwork;
  }
  return InputFormat::Generic;
}

CompoundGraph parse_graph(std::string_view text, InputFormat format,
                          const FunctionNetworkOptions& options) {
  return format == InputFormat::FunctionNetwork ? parse_function_network(text, options)
                                                : parse_generic(text);
}

}  // namespace odl
