#include "odlayout/inner_layout.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>

namespace odl {

// ---------------------------------------------------------------------------
// cycle removal

CycleRemoval remove_cycles(std::size_t vertex_count, std::span<const Arc> arcs) {
  CycleRemoval out;
  std::vector<int> indeg(vertex_count, 0);
  std::vector<int> outdeg(vertex_count, 0);
  std::vector<std::vector<std::size_t>> out_arcs(vertex_count);
  std::vector<std::vector<std::size_t>> in_arcs(vertex_count);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.source == a.target) {
      out.self_loops.push_back(i);
      continue;
    }
    ++outdeg[a.source];
    ++indeg[a.target];
    out_arcs[a.source].push_back(i);
    in_arcs[a.target].push_back(i);
  }

  std::vector<bool> removed(vertex_count, false);
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::size_t remaining = vertex_count;

  auto remove = [&](std::size_t v) {
    removed[v] = true;
    --remaining;
    for (std::size_t i : out_arcs[v]) --indeg[arcs[i].target];
    for (std::size_t i : in_arcs[v]) --outdeg[arcs[i].source];
  };

  while (remaining > 0) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!removed[v] && outdeg[v] == 0) {
          right.push_back(v);
          remove(v);
          progress = true;
        }
      }
      for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!removed[v] && indeg[v] == 0) {
          left.push_back(v);
          remove(v);
          progress = true;
        }
      }
    }
    if (remaining == 0) break;
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (removed[v]) continue;
      if (!best || outdeg[v] - indeg[v] > outdeg[*best] - indeg[*best]) best = v;
    }
    left.push_back(*best);
    remove(*best);
  }

  std::vector<std::size_t> position(vertex_count, 0);
  std::size_t p = 0;
  for (std::size_t v : left) position[v] = p++;
  for (auto it = right.rbegin(); it != right.rend(); ++it) position[*it] = p++;

  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    if (a.source == a.target) continue;
    if (position[a.source] > position[a.target]) {
      out.reversed.push_back(i);
      out.arcs.push_back({a.target, a.source});
    } else {
      out.arcs.push_back(a);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// layering

std::vector<int> assign_layers(std::span<const VertexRole> roles, std::span<const Arc> dag) {
  const std::size_t n = roles.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const Arc& a : dag) {
    if (a.source >= n || a.target >= n || a.source == a.target) {
      throw std::logic_error("assign_layers: invalid arc");
    }
    if (roles[a.target] == VertexRole::InPort || roles[a.source] == VertexRole::OutPort) {
      throw std::logic_error("assign_layers: arc runs against a port row");
    }
    succ[a.source].push_back(a.target);
    ++indeg[a.target];
  }

  const bool has_in = std::any_of(roles.begin(), roles.end(),
                                  [](VertexRole r) { return r == VertexRole::InPort; });
  const int base = has_in ? 1 : 0;
  std::vector<int> layer(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (roles[v] != VertexRole::InPort && roles[v] != VertexRole::OutPort) layer[v] = base;
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    ++visited;
    for (std::size_t w : succ[v]) {
      if (roles[w] != VertexRole::OutPort) layer[w] = std::max(layer[w], layer[v] + 1);
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (visited != n) throw std::logic_error("assign_layers: arcs contain a cycle");

  int content_max = -1;
  for (std::size_t v = 0; v < n; ++v) {
    if (roles[v] != VertexRole::InPort && roles[v] != VertexRole::OutPort) {
      content_max = std::max(content_max, layer[v]);
    }
  }
  const int out_layer = content_max >= 0 ? content_max + 1 : base;
  for (std::size_t v = 0; v < n; ++v) {
    if (roles[v] == VertexRole::InPort) layer[v] = 0;
    if (roles[v] == VertexRole::OutPort) layer[v] = out_layer;
  }
  return layer;
}

bool LayeredGraph::fixed_layer(std::size_t l) const {
  if (l >= order.size() || order[l].empty()) return false;
  return std::all_of(order[l].begin(), order[l].end(), [&](std::size_t v) {
    return vertices[v].role == VertexRole::InPort || vertices[v].role == VertexRole::OutPort;
  });
}

LayeredGraph make_proper(std::vector<LayeredGraph::Vertex> vertices, std::span<const Arc> dag,
                         std::span<const std::size_t> edge_of_arc,
                         const std::vector<bool>& reversed_arc, std::vector<int> layers) {
  LayeredGraph g;
  g.vertices = std::move(vertices);
  g.layer = std::move(layers);
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const Arc& a = dag[i];
    const int span = g.layer[a.target] - g.layer[a.source];
    if (span < 1) throw std::logic_error("make_proper: arc does not descend");
    LayeredGraph::Chain chain;
    chain.edge = edge_of_arc[i];
    chain.reversed = reversed_arc[i];
    chain.vertices.push_back(a.source);
    std::size_t prev = a.source;
    for (int k = 1; k < span; ++k) {
      const std::size_t d = g.vertices.size();
      g.vertices.push_back({"", VertexRole::Dummy, 0.0, 0.0});
      g.layer.push_back(g.layer[a.source] + k);
      g.arcs.push_back({prev, d});
      chain.vertices.push_back(d);
      prev = d;
    }
    g.arcs.push_back({prev, a.target});
    chain.vertices.push_back(a.target);
    g.chains.push_back(std::move(chain));
  }
  int max_layer = -1;
  for (int l : g.layer) max_layer = std::max(max_layer, l);
  g.order.assign(static_cast<std::size_t>(max_layer + 1), {});
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    g.order[static_cast<std::size_t>(g.layer[v])].push_back(v);
  }
  return g;
}

// ---------------------------------------------------------------------------
// crossing reduction

namespace {

std::vector<std::size_t> positions_of(const LayeredGraph& g,
                                      const std::vector<std::vector<std::size_t>>& order) {
  std::vector<std::size_t> pos(g.vertices.size(), 0);
  for (const auto& row : order) {
    for (std::size_t i = 0; i < row.size(); ++i) pos[row[i]] = i;
  }
  return pos;
}

}  // namespace

std::size_t count_layer_crossings(const LayeredGraph& graph,
                                  const std::vector<std::vector<std::size_t>>& order) {
  const auto pos = positions_of(graph, order);
  std::vector<std::vector<std::pair<long, long>>> by_layer(order.size());
  for (const Arc& a : graph.arcs) {
    by_layer[static_cast<std::size_t>(graph.layer[a.source])].push_back(
        {static_cast<long>(pos[a.source]), static_cast<long>(pos[a.target])});
  }
  std::size_t crossings = 0;
  for (const auto& arcs : by_layer) {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        if ((arcs[i].first - arcs[j].first) * (arcs[i].second - arcs[j].second) < 0) {
          ++crossings;
        }
      }
    }
  }
  return crossings;
}

CrossingReduction reduce_crossings(const LayeredGraph& graph, int max_rounds) {
  CrossingReduction result;
  result.order = graph.order;
  result.initial_crossings = count_layer_crossings(graph, graph.order);
  result.final_crossings = result.initial_crossings;
  if (result.initial_crossings == 0) return result;

  std::vector<std::vector<std::size_t>> up(graph.vertices.size());
  std::vector<std::vector<std::size_t>> down(graph.vertices.size());
  for (const Arc& a : graph.arcs) {
    down[a.source].push_back(a.target);
    up[a.target].push_back(a.source);
  }

  enum class Key { Barycenter, Median };
  auto run = [&](Key kind, bool upward_first) {
    CrossingReduction out;
    out.order = graph.order;
    out.final_crossings = result.initial_crossings;
    auto order = graph.order;
    auto sweep_layer = [&](std::size_t l, const std::vector<std::vector<std::size_t>>& adj) {
      if (graph.fixed_layer(l)) return;
      const auto pos = positions_of(graph, order);
      auto& row = order[l];
      std::vector<std::pair<double, std::size_t>> keyed;
      keyed.reserve(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& nbrs = adj[row[i]];
        double key = static_cast<double>(i);
        if (!nbrs.empty()) {
          std::vector<double> p;
          for (std::size_t w : nbrs) p.push_back(static_cast<double>(pos[w]));
          if (kind == Key::Barycenter) {
            double sum = 0.0;
            for (double x : p) sum += x;
            key = sum / static_cast<double>(p.size());
          } else {
            std::sort(p.begin(), p.end());
            const std::size_t m = p.size() / 2;
            key = p.size() % 2 ? p[m] : (p[m - 1] + p[m]) / 2.0;
          }
        }
        keyed.push_back({key, row[i]});
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 0; i < row.size(); ++i) row[i] = keyed[i].second;
    };
    for (int round = 0; round < max_rounds; ++round) {
      auto top_down = [&] {
        for (std::size_t l = 1; l < order.size(); ++l) sweep_layer(l, up);
      };
      auto bottom_up = [&] {
        for (std::size_t l = order.size(); l-- > 1;) sweep_layer(l - 1, down);
      };
      if (upward_first) {
        bottom_up();
        top_down();
      } else {
        top_down();
        bottom_up();
      }
      ++out.rounds;
      const std::size_t c = count_layer_crossings(graph, order);
      if (c >= out.final_crossings) break;
      out.final_crossings = c;
      out.order = order;
      if (c == 0) break;
    }
    return out;
  };

  // Barycenter and median keys, each starting with either sweep; the first
  // strictly better result wins.
  CrossingReduction best = run(Key::Barycenter, false);
  for (auto [kind, upward] : {std::pair{Key::Median, false}, std::pair{Key::Barycenter, true},
                              std::pair{Key::Median, true}}) {
    if (best.final_crossings == 0) break;
    CrossingReduction other = run(kind, upward);
    if (other.final_crossings < best.final_crossings) best = std::move(other);
  }
  result.order = std::move(best.order);
  result.final_crossings = best.final_crossings;
  result.rounds = best.rounds;
  return result;
}

// ---------------------------------------------------------------------------
// coordinates

namespace {

// Order-preserving placement closest (least squares) to `desired` centres with
// consecutive centres at least `gaps[i]` apart; pool-adjacent-violators.
std::vector<double> place_row(const std::vector<double>& desired, const std::vector<double>& gaps) {
  const std::size_t n = desired.size();
  std::vector<double> offset(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) offset[i] = offset[i - 1] + gaps[i - 1];

  struct Block {
    double sum;
    double count;
    std::size_t size;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    blocks.push_back({desired[i] - offset[i], 1.0, 1});
    while (blocks.size() > 1) {
      const Block& b = blocks.back();
      const Block& a = blocks[blocks.size() - 2];
      if (a.sum / a.count <= b.sum / b.count) break;
      Block merged{a.sum + b.sum, a.count + b.count, a.size + b.size};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> x(n, 0.0);
  std::size_t i = 0;
  for (const Block& b : blocks) {
    const double value = b.sum / b.count;
    for (std::size_t k = 0; k < b.size; ++k, ++i) x[i] = value + offset[i];
  }
  return x;
}

}  // namespace

Coordinates assign_coordinates(const LayeredGraph& graph,
                               const std::vector<std::vector<std::size_t>>& order,
                               const InnerConfig& config) {
  const std::size_t n = graph.vertices.size();
  const std::size_t layers = order.size();
  std::vector<std::vector<std::size_t>> up(n);
  std::vector<std::vector<std::size_t>> down(n);
  for (const Arc& a : graph.arcs) {
    down[a.source].push_back(a.target);
    up[a.target].push_back(a.source);
  }

  std::vector<std::vector<double>> gaps(layers);
  std::vector<double> cx(n, 0.0);
  for (std::size_t l = 0; l < layers; ++l) {
    const auto& row = order[l];
    double cursor = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double w = graph.vertices[row[i]].width;
      cx[row[i]] = cursor + w / 2.0;
      cursor += w + config.node_spacing;
      if (i + 1 < row.size()) {
        gaps[l].push_back((w + graph.vertices[row[i + 1]].width) / 2.0 + config.node_spacing);
      }
    }
  }

  auto align = [&](std::size_t l, bool use_up, bool use_down) {
    const auto& row = order[l];
    if (row.empty()) return;
    std::vector<double> desired(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      double sum = 0.0;
      std::size_t count = 0;
      if (use_up) {
        for (std::size_t w : up[row[i]]) sum += cx[w], ++count;
      }
      if (use_down) {
        for (std::size_t w : down[row[i]]) sum += cx[w], ++count;
      }
      desired[i] = count ? sum / static_cast<double>(count) : cx[row[i]];
    }
    const auto placed = place_row(desired, gaps[l]);
    for (std::size_t i = 0; i < row.size(); ++i) cx[row[i]] = placed[i];
  };

  constexpr int kAlignmentRounds = 4;
  for (int round = 0; round < kAlignmentRounds; ++round) {
    for (std::size_t l = 1; l < layers; ++l) align(l, true, false);
    for (std::size_t l = layers; l-- > 1;) align(l - 1, false, true);
  }
  for (std::size_t l = 0; l < layers; ++l) align(l, true, true);

  // Rows top to bottom.
  std::vector<double> row_height(layers, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& h = row_height[static_cast<std::size_t>(graph.layer[v])];
    h = std::max(h, graph.vertices[v].height);
  }
  std::vector<double> row_y(layers, 0.0);
  for (std::size_t l = 1; l < layers; ++l) {
    row_y[l] = row_y[l - 1] + row_height[l - 1] + config.layer_spacing;
  }

  Coordinates out;
  out.vertices.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& vx = graph.vertices[v];
    const auto l = static_cast<std::size_t>(graph.layer[v]);
    out.vertices[v] = {cx[v] - vx.width / 2.0, row_y[l] + (row_height[l] - vx.height) / 2.0,
                       vx.width, vx.height};
  }

  const double pad = config.frame_padding;
  const bool in_row = layers > 0 && graph.fixed_layer(0) &&
                      graph.vertices[order[0].front()].role == VertexRole::InPort;
  const bool out_row = layers > 0 && graph.fixed_layer(layers - 1) &&
                       graph.vertices[order[layers - 1].front()].role == VertexRole::OutPort;

  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  if (n > 0) {
    const Rect box = bounding_box(out.vertices);
    x0 = box.left() - pad;
    x1 = box.right() + pad;
    y0 = in_row ? row_y.front() : box.top() - pad;
    y1 = out_row ? row_y.back() : box.bottom() + pad;
  } else {
    x1 = 2.0 * pad;
    y1 = 2.0 * pad;
  }
  for (Rect& r : out.vertices) r = r.translated({-x0, -y0});
  out.frame = {x1 - x0, y1 - y0};
  return out;
}

// ---------------------------------------------------------------------------
// group layout

Size collapsed_size(const Group& group, const InnerConfig& config) {
  const auto ports = std::max(group.in_ports.size(), group.out_ports.size());
  const double label = static_cast<double>(group.label.size()) * config.char_width +
                       config.label_padding;
  const double port_span = static_cast<double>(ports + 1) * config.port_pitch;
  return {std::max({config.min_group_width, label, port_span}), config.group_height};
}

Size atom_size(const Atom& atom, const InnerConfig& config) {
  const double label = static_cast<double>(atom.label.size()) * config.char_width +
                       config.label_padding;
  return {std::max(config.min_atom_width, label), config.atom_height};
}

Point collapsed_port_offset(const Group& owner, const Port& port, Size box) {
  const bool in = port.direction == PortDirection::In;
  const auto& row = in ? owner.in_ports : owner.out_ports;
  std::size_t index = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].id == port.id) index = i;
  }
  const double x = box.width * static_cast<double>(index + 1) /
                   static_cast<double>(row.size() + 1);
  return {x, in ? 0.0 : box.height};
}

namespace {

// Where an edge endpoint attaches inside the frame being laid out.
struct Endpoint {
  std::size_t vertex = 0;
  enum class Kind { FramePort, ChildPort, Atom } kind = Kind::Atom;
  Point offset;  // ChildPort: offset from the child box's top-left corner
};

std::optional<Endpoint> resolve_endpoint(const GraphIndex& index, const Group& group,
                                         const std::map<std::string, std::size_t>& vertex_of,
                                         const std::map<std::string, Size>& sizes,
                                         const std::string& id) {
  if (index.atom(id)) {
    auto it = vertex_of.find(id);
    if (it == vertex_of.end()) return std::nullopt;
    return Endpoint{it->second, Endpoint::Kind::Atom, {}};
  }
  const Port* port = index.port(id);
  if (!port) return std::nullopt;
  if (port->owner == group.id) {
    return Endpoint{vertex_of.at(id), Endpoint::Kind::FramePort, {}};
  }
  auto it = vertex_of.find(port->owner);
  if (it == vertex_of.end()) return std::nullopt;
  const Group* owner = index.group(port->owner);
  return Endpoint{it->second, Endpoint::Kind::ChildPort,
                  collapsed_port_offset(*owner, *port, sizes.at(port->owner))};
}

Point attach_point(const Endpoint& end, const Rect& box, bool lower_end) {
  switch (end.kind) {
    case Endpoint::Kind::FramePort: return {box.center_x(), box.y};
    case Endpoint::Kind::ChildPort: return box.origin() + end.offset;
    case Endpoint::Kind::Atom:
      return {box.center_x(), lower_end ? box.top() : box.bottom()};
  }
  return box.center();
}

}  // namespace

InnerLayout layout_group(const GraphIndex& index, const std::string& group_id,
                         const InnerConfig& config) {
  const Group* group = index.group(group_id);
  if (!group) throw UnknownIdError(group_id);

  std::vector<LayeredGraph::Vertex> vertices;
  std::vector<VertexRole> roles;
  std::map<std::string, std::size_t> vertex_of;
  std::map<std::string, Size> sizes;
  auto add = [&](const std::string& ref, VertexRole role, Size size) {
    vertex_of[ref] = vertices.size();
    vertices.push_back({ref, role, size.width, size.height});
    roles.push_back(role);
  };

  for (const Port& p : group->in_ports) add(p.id, VertexRole::InPort, {config.port_size, 0.0});
  std::size_t box_count = 0;
  InnerLayout layout;
  layout.group_id = group_id;
  for (const std::string& child : group->children) {
    Size size;
    if (const Group* g = index.group(child)) {
      size = collapsed_size(*g, config);
    } else if (const Atom* a = index.atom(child)) {
      size = atom_size(*a, config);
    } else {
      continue;
    }
    sizes[child] = size;
    add(child, VertexRole::Box, size);
    layout.child_order.push_back(child);
    ++box_count;
  }
  for (const Port& p : group->out_ports) add(p.id, VertexRole::OutPort, {config.port_size, 0.0});
  if (box_count == 0 && !vertices.empty()) {
    vertices.push_back({"", VertexRole::Separator, 0.0, 0.0});
    roles.push_back(VertexRole::Separator);
  }

  // Edges drawn in this frame.
  struct Pending {
    std::size_t edge;
    Endpoint source;
    Endpoint target;
  };
  std::vector<Pending> pending;
  const auto& edges = index.graph().edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (!e.scope || *e.scope != group_id) continue;
    auto s = resolve_endpoint(index, *group, vertex_of, sizes, e.source);
    auto t = resolve_endpoint(index, *group, vertex_of, sizes, e.target);
    if (s && t) pending.push_back({i, *s, *t});
  }

  // Arcs that cannot be layered: self-loops and arcs within one port row.
  std::vector<Arc> arcs;
  std::vector<bool> flipped;
  std::vector<std::size_t> arc_pending;
  std::vector<std::size_t> flat;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    std::size_t s = pending[k].source.vertex;
    std::size_t t = pending[k].target.vertex;
    const bool same_row =
        s == t || ((roles[s] == VertexRole::InPort || roles[s] == VertexRole::OutPort) &&
                   roles[s] == roles[t]);
    if (same_row) {
      flat.push_back(k);
      continue;
    }
    const bool flip = roles[t] == VertexRole::InPort || roles[s] == VertexRole::OutPort;
    if (flip) std::swap(s, t);
    arcs.push_back({s, t});
    flipped.push_back(flip);
    arc_pending.push_back(k);
  }

  CycleRemoval dag = remove_cycles(vertices.size(), arcs);
  std::vector<bool> reversed(arcs.size(), false);
  for (std::size_t i : dag.reversed) reversed[i] = true;
  std::vector<bool> chain_reversed(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) chain_reversed[i] = flipped[i] != reversed[i];

  const auto layers = assign_layers(roles, dag.arcs);
  LayeredGraph layered = make_proper(vertices, dag.arcs, arc_pending, chain_reversed, layers);
  const CrossingReduction crossing = reduce_crossings(layered);
  const Coordinates coords = assign_coordinates(layered, crossing.order, config);

  layout.frame = coords.frame;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& vx = vertices[v];
    const Rect& r = coords.vertices[v];
    switch (vx.role) {
      case VertexRole::Box: layout.children[vx.ref] = r; break;
      case VertexRole::InPort: layout.port_anchors[vx.ref] = {r.center_x(), 0.0}; break;
      case VertexRole::OutPort:
        layout.port_anchors[vx.ref] = {r.center_x(), layout.frame.height};
        break;
      default: break;
    }
  }
  for (const std::string& child : layout.child_order) {
    const Group* g = index.group(child);
    if (!g) continue;
    const Rect& box = layout.children.at(child);
    for (const auto* row : {&g->in_ports, &g->out_ports}) {
      for (const Port& p : *row) {
        layout.child_ports[p.id] = box.origin() + collapsed_port_offset(*g, p, box.size());
      }
    }
  }

  auto box_of = [&](std::size_t v) {
    Rect r = coords.vertices[v];
    if (roles[v] == VertexRole::OutPort) r.y = layout.frame.height;
    if (roles[v] == VertexRole::InPort) r.y = 0.0;
    return r;
  };

  for (const auto& chain : layered.chains) {
    const Pending& p = pending[chain.edge];
    const Endpoint& upper = chain.reversed ? p.target : p.source;
    const Endpoint& lower = chain.reversed ? p.source : p.target;
    InnerEdge ie;
    ie.edge = p.edge;
    ie.reversed = chain.reversed;
    ie.points.push_back(attach_point(upper, box_of(chain.vertices.front()), false));
    for (std::size_t k = 1; k + 1 < chain.vertices.size(); ++k) {
      ie.points.push_back(coords.vertices[chain.vertices[k]].center());
    }
    ie.points.push_back(attach_point(lower, box_of(chain.vertices.back()), true));
    layout.edges.push_back(std::move(ie));
  }

  const double delta = std::min(config.frame_padding, config.node_spacing) / 2.0;
  for (std::size_t k : flat) {
    const Pending& p = pending[k];
    InnerEdge ie;
    ie.edge = p.edge;
    ie.self_loop = true;
    const Point a = attach_point(p.source, box_of(p.source.vertex), false);
    const Point b = attach_point(p.target, box_of(p.target.vertex), true);
    if (roles[p.source.vertex] == VertexRole::InPort ||
        roles[p.source.vertex] == VertexRole::OutPort) {
      const double dy = roles[p.source.vertex] == VertexRole::InPort ? delta : -delta;
      ie.points = {a, {a.x, a.y + dy}, {b.x, b.y + dy}, b};
    } else {
      const Rect box = coords.vertices[p.source.vertex];
      const double below = std::max(a.y, box.bottom()) + delta;
      const double above = std::min(b.y, box.top()) - delta;
      const double side = box.right() + delta;
      ie.points = {a, {a.x, below}, {side, below}, {side, above}, {b.x, above}, b};
    }
    layout.edges.push_back(std::move(ie));
  }
  std::stable_sort(layout.edges.begin(), layout.edges.end(),
                   [](const InnerEdge& x, const InnerEdge& y) { return x.edge < y.edge; });
  return layout;
}

}  // namespace odl
