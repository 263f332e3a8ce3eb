#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odlayout/geometry.hpp"
#include "odlayout/inner_layout.hpp"
#include "odlayout/model.hpp"

namespace odl {

enum class Direction { Root, Right, Down };
enum class ProximityMetric { EdgeGap, CenterGap };

std::string_view to_string(Direction direction);

struct TreeConfig {
  double sibling_gap = 30.0;
  ProximityMetric proximity = ProximityMetric::EdgeGap;
};

/// Rectilinear outline of a subtree, kept as the set of frame rectangles it
/// covers. Queries are interval tests against those rectangles.
class Contour {
 public:
  Contour() = default;
  explicit Contour(std::vector<Rect> rects) : rects_(std::move(rects)) {}

  const std::vector<Rect>& rects() const { return rects_; }
  bool empty() const { return rects_.empty(); }
  Rect bounds() const { return bounding_box(rects_); }

  void merge(const Contour& other);
  void translate(Point d);
  Contour translated(Point d) const;

  /// Occupied extent along `axis` for rectangles whose cross-axis extent
  /// intersects the open interval (lo, hi); nullopt when nothing is there.
  std::optional<std::pair<double, double>> extent(Axis axis, double lo, double hi) const;

 private:
  std::vector<Rect> rects_;
};

/// Smallest t >= 0 such that `moving` translated by t along +axis keeps a gap of
/// at least `gap` to every rectangle of `fixed`. Rectangles may nest into
/// notches of a non-convex outline.
double clearance_shift(const Contour& fixed, const Contour& moving, Axis axis, double gap);

/// Right when the anchor is at least as close to the parent's right boundary as
/// to its bottom boundary. Throws Error when the anchor is outside the frame.
Direction choose_direction(const Rect& anchor, const Rect& parent_frame,
                           ProximityMetric metric = ProximityMetric::EdgeGap);

/// Initial child frame origin relative to the parent frame origin: beyond the
/// parent on the growth axis, centred on the anchor on the cross axis.
Point initialize_child(const Rect& anchor, Size child, Direction direction, Size parent,
                       double sibling_gap);

/// Scans `children` in order, pushing each along +axis by the least amount that
/// clears every previously placed child and `fixed`. Returns one shift per child.
std::vector<double> separate_same_direction(std::span<const Contour> children, Axis axis,
                                            double sibling_gap, const Contour& fixed = {});

struct CrossSeparation {
  std::optional<Axis> axis;  // nullopt when the contours are already clear
  double shift = 0.0;
  double y_candidate = 0.0;  // shift of the Down group along y
  double x_candidate = 0.0;  // shift of the Right group along x
};

/// Chooses the cheaper of moving the Down group along y or the Right group
/// along x; ties prefer y. The moved group also keeps clear of `fixed`.
CrossSeparation separate_cross_direction(const Contour& right_group, const Contour& down_group,
                                         double sibling_gap, const Contour& fixed = {});

/// Component-wise mean of the child displacements; zero for no children.
Point recenter_parent(std::span<const Point> displacements);

struct LayoutTreeNode {
  std::string group_id;
  Rect frame;   // absolute
  Rect anchor;  // collapsed box in the parent's frame, parent-local
  Direction direction = Direction::Root;
  Point offset;  // frame origin relative to the parent frame origin
  std::vector<LayoutTreeNode> children;

  // Placement record for inspection.
  Point initial_offset;
  Point displacement;
  Point recenter_delta;
  std::optional<Axis> cross_axis;
  double cross_shift = 0.0;
};

struct LayoutTree {
  std::vector<LayoutTreeNode> roots;

  /// Depth-first, children in placement order.
  std::vector<const LayoutTreeNode*> nodes() const;
  const LayoutTreeNode* find(std::string_view group_id) const;
};

/// Anchor-aligned two-direction placement of every planned detail frame.
LayoutTree layout_tree(const GraphIndex& index, const ExpansionPlan& plan,
                       const std::map<std::string, InnerLayout>& inner,
                       const TreeConfig& config);

/// Comparison mode: every child grows to the right, centred on its parent.
LayoutTree layout_tree_baseline(const GraphIndex& index, const ExpansionPlan& plan,
                                const std::map<std::string, InnerLayout>& inner,
                                const TreeConfig& config);

}  // namespace odl
