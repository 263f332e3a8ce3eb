#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "odlayout/geometry.hpp"
#include "odlayout/model.hpp"

namespace odl {

/// Sizing and spacing for the per-group layered layout, in layout units.
struct InnerConfig {
  double node_spacing = 20.0;
  double layer_spacing = 40.0;
  double frame_padding = 15.0;
  double port_size = 8.0;
  double atom_height = 28.0;
  double group_height = 36.0;
  double min_atom_width = 48.0;
  double min_group_width = 64.0;
  double char_width = 7.0;
  double label_padding = 16.0;
  // Horizontal distance between neighbouring port squares on a collapsed box.
  double port_pitch = 16.0;
};

/// Directed arc between vertex indices.
struct Arc {
  std::size_t source = 0;
  std::size_t target = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct CycleRemoval {
  std::vector<Arc> arcs;               // input arcs with reversed ones flipped
  std::vector<std::size_t> reversed;   // indices into the input, ascending
  std::vector<std::size_t> self_loops; // indices of dropped self-loops
};

/// Greedy sink/source peeling (Eades-Lin-Smyth). Self-loops are removed from
/// `arcs` and reported in `self_loops`.
CycleRemoval remove_cycles(std::size_t vertex_count, std::span<const Arc> arcs);

enum class VertexRole { Box, InPort, OutPort, Dummy, Separator };

/// Longest-path layering. In-port vertices occupy layer 0, out-port vertices
/// the last layer, everything else the rows between. Throws std::logic_error
/// when the arcs contain a cycle.
std::vector<int> assign_layers(std::span<const VertexRole> roles, std::span<const Arc> dag);

/// Layered graph in which every arc spans exactly one layer.
struct LayeredGraph {
  struct Vertex {
    std::string ref;  // child id, port id, or empty for dummies
    VertexRole role = VertexRole::Box;
    double width = 0.0;
    double height = 0.0;
  };
  struct Chain {
    // Vertex path from the layered source to the layered target.
    std::vector<std::size_t> vertices;
    std::size_t edge = 0;  // index into the owning group's edge list
    bool reversed = false;
  };

  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;  // unit-span arcs after dummy insertion
  std::vector<Chain> chains;
  std::vector<int> layer;
  std::vector<std::vector<std::size_t>> order;  // per layer, left to right

  std::size_t layer_count() const { return order.size(); }
  /// Port rows keep their declared order.
  bool fixed_layer(std::size_t l) const;
};

/// Splits every arc spanning several layers with dummy vertices and builds the
/// initial within-layer order (vertex index order).
LayeredGraph make_proper(std::vector<LayeredGraph::Vertex> vertices, std::span<const Arc> dag,
                         std::span<const std::size_t> edge_of_arc,
                         const std::vector<bool>& reversed_arc, std::vector<int> layers);

/// Number of pairwise crossings between consecutive layers under `order`.
std::size_t count_layer_crossings(const LayeredGraph& graph,
                                  const std::vector<std::vector<std::size_t>>& order);

struct CrossingReduction {
  std::vector<std::vector<std::size_t>> order;
  std::size_t initial_crossings = 0;
  std::size_t final_crossings = 0;
  int rounds = 0;
};

/// Down/up layer sweeps, at most `max_rounds`, stopping at the first round
/// without improvement; run with barycenter and median keys, each starting with
/// either sweep.
/// Returns the best order seen, so the crossing count never increases.
CrossingReduction reduce_crossings(const LayeredGraph& graph, int max_rounds = 8);

struct InnerEdge {
  std::size_t edge = 0;       // index into CompoundGraph::edges
  std::vector<Point> points;  // in layered direction (downwards)
  bool reversed = false;      // arc was flipped by cycle removal
  bool self_loop = false;
};

/// Per-group placement in frame-local coordinates, (0, 0) at the frame's
/// top-left corner.
struct InnerLayout {
  std::string group_id;
  Size frame;
  std::map<std::string, Rect> children;
  std::vector<std::string> child_order;  // declaration order
  std::map<std::string, Point> port_anchors;  // the group's own ports
  std::map<std::string, Point> child_ports;   // port squares on collapsed child boxes
  std::vector<InnerEdge> edges;
};

/// Horizontal coordinates by iterated barycenter alignment with order-preserving
/// overlap removal, vertical coordinates by cumulative layer heights. Vertex
/// rectangles are returned in frame-local coordinates together with the frame.
struct Coordinates {
  std::vector<Rect> vertices;
  Size frame;
};
Coordinates assign_coordinates(const LayeredGraph& graph,
                               const std::vector<std::vector<std::size_t>>& order,
                               const InnerConfig& config);

/// Collapsed box size for a child group or atom.
Size collapsed_size(const Group& group, const InnerConfig& config);
Size atom_size(const Atom& atom, const InnerConfig& config);

/// Offset of a port square centre relative to the top-left corner of its
/// owner's collapsed box.
Point collapsed_port_offset(const Group& owner, const Port& port, Size box);

/// Full layered layout of the direct children of `group_id`. Edges are taken
/// from those whose scope is the group.
InnerLayout layout_group(const GraphIndex& index, const std::string& group_id,
                         const InnerConfig& config);

}  // namespace odl
