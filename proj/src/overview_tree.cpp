#include "odlayout/overview_tree.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace odl {

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::Root: return "root";
    case Direction::Right: return "right";
    case Direction::Down: return "down";
  }
  return "root";
}

// ---------------------------------------------------------------------------
// Contour

void Contour::merge(const Contour& other) {
  rects_.insert(rects_.end(), other.rects_.begin(), other.rects_.end());
}

void Contour::translate(Point d) {
  for (Rect& r : rects_) r = r.translated(d);
}

Contour Contour::translated(Point d) const {
  Contour c = *this;
  c.translate(d);
  return c;
}

std::optional<std::pair<double, double>> Contour::extent(Axis axis, double lo, double hi) const {
  std::optional<std::pair<double, double>> out;
  for (const Rect& r : rects_) {
    const double c0 = axis == Axis::Y ? r.left() : r.top();
    const double c1 = axis == Axis::Y ? r.right() : r.bottom();
    if (c1 <= lo || c0 >= hi) continue;
    const double p0 = axis == Axis::Y ? r.top() : r.left();
    const double p1 = axis == Axis::Y ? r.bottom() : r.right();
    if (!out) {
      out = {p0, p1};
    } else {
      out->first = std::min(out->first, p0);
      out->second = std::max(out->second, p1);
    }
  }
  return out;
}

double clearance_shift(const Contour& fixed, const Contour& moving, Axis axis, double gap) {
  // Each conflicting pair forbids an open interval of shifts; the answer is the
  // smallest t >= 0 outside all of them.
  std::vector<std::pair<double, double>> forbidden;
  for (const Rect& a : fixed.rects()) {
    const double a_c0 = axis == Axis::Y ? a.left() : a.top();
    const double a_c1 = axis == Axis::Y ? a.right() : a.bottom();
    const double a_p0 = axis == Axis::Y ? a.top() : a.left();
    const double a_p1 = axis == Axis::Y ? a.bottom() : a.right();
    for (const Rect& b : moving.rects()) {
      const double b_c0 = axis == Axis::Y ? b.left() : b.top();
      const double b_c1 = axis == Axis::Y ? b.right() : b.bottom();
      if (!(b_c0 < a_c1 + gap - kEpsilon && a_c0 < b_c1 + gap - kEpsilon)) continue;
      const double b_p0 = axis == Axis::Y ? b.top() : b.left();
      const double b_p1 = axis == Axis::Y ? b.bottom() : b.right();
      forbidden.push_back({a_p0 - gap - b_p1, a_p1 + gap - b_p0});
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  double t = 0.0;
  for (const auto& [lo, hi] : forbidden) {
    if (lo + kEpsilon >= t) break;
    if (hi - kEpsilon > t) t = hi;
  }
  return t;
}

// ---------------------------------------------------------------------------
// placement primitives

Direction choose_direction(const Rect& anchor, const Rect& parent_frame, ProximityMetric metric) {
  if (!parent_frame.contains(anchor)) {
    throw Error("anchor rectangle lies outside its parent frame");
  }
  const double right_gap = metric == ProximityMetric::EdgeGap
                               ? parent_frame.right() - anchor.right()
                               : parent_frame.right() - anchor.center_x();
  const double bottom_gap = metric == ProximityMetric::EdgeGap
                                ? parent_frame.bottom() - anchor.bottom()
                                : parent_frame.bottom() - anchor.center_y();
  return right_gap <= bottom_gap ? Direction::Right : Direction::Down;
}

Point initialize_child(const Rect& anchor, Size child, Direction direction, Size parent,
                       double sibling_gap) {
  if (direction == Direction::Down) {
    return {anchor.center_x() - child.width / 2.0, parent.height + sibling_gap};
  }
  return {parent.width + sibling_gap, anchor.center_y() - child.height / 2.0};
}

std::vector<double> separate_same_direction(std::span<const Contour> children, Axis axis,
                                            double sibling_gap, const Contour& fixed) {
  std::vector<double> shifts;
  shifts.reserve(children.size());
  Contour placed = fixed;
  for (const Contour& child : children) {
    const double t = clearance_shift(placed, child, axis, sibling_gap);
    shifts.push_back(t);
    placed.merge(child.translated(axis == Axis::Y ? Point{0.0, t} : Point{t, 0.0}));
  }
  return shifts;
}

CrossSeparation separate_cross_direction(const Contour& right_group, const Contour& down_group,
                                         double sibling_gap, const Contour& fixed) {
  CrossSeparation out;
  Contour below = right_group;
  below.merge(fixed);
  Contour beside = down_group;
  beside.merge(fixed);
  out.y_candidate = clearance_shift(below, down_group, Axis::Y, sibling_gap);
  out.x_candidate = clearance_shift(beside, right_group, Axis::X, sibling_gap);
  if (out.y_candidate <= 0.0 && out.x_candidate <= 0.0) return out;
  if (out.y_candidate <= out.x_candidate) {
    out.axis = Axis::Y;
    out.shift = out.y_candidate;
  } else {
    out.axis = Axis::X;
    out.shift = out.x_candidate;
  }
  return out;
}

Point recenter_parent(std::span<const Point> displacements) {
  if (displacements.empty()) return {};
  Point sum;
  for (Point d : displacements) sum = sum + d;
  return sum * (1.0 / static_cast<double>(displacements.size()));
}

// ---------------------------------------------------------------------------
// tree layout

std::vector<const LayoutTreeNode*> LayoutTree::nodes() const {
  std::vector<const LayoutTreeNode*> out;
  std::vector<const LayoutTreeNode*> stack;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.push_back(&*it);
  while (!stack.empty()) {
    const LayoutTreeNode* n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
  }
  return out;
}

const LayoutTreeNode* LayoutTree::find(std::string_view group_id) const {
  for (const LayoutTreeNode* n : nodes()) {
    if (n->group_id == group_id) return n;
  }
  return nullptr;
}

namespace {

struct Subtree {
  LayoutTreeNode node;  // offsets are relative; frame holds only the size
  Contour contour;      // relative to this node's frame origin
};

class TreePlacer {
 public:
  TreePlacer(const GraphIndex& index, const ExpansionPlan& plan,
             const std::map<std::string, InnerLayout>& inner, const TreeConfig& config,
             bool baseline)
      : index_(index), plan_(plan), inner_(inner), config_(config), baseline_(baseline) {}

  LayoutTree run() {
    LayoutTree tree;
    double cursor_y = 0.0;
    for (const std::string& root : index_.roots()) {
      if (!index_.group(root)) continue;
      Subtree sub = place(root, true);
      // Stack further roots below the drawing so far.
      const Rect bounds = sub.contour.bounds();
      sub.node.offset = {0.0, cursor_y};
      assign_absolute(sub.node, {0.0, 0.0});
      cursor_y += bounds.bottom() + config_.sibling_gap;
      tree.roots.push_back(std::move(sub.node));
    }
    return tree;
  }

 private:
  const InnerLayout& inner_of(const std::string& id) const {
    auto it = inner_.find(id);
    if (it == inner_.end()) throw Error("missing inner layout for group '" + id + "'");
    return it->second;
  }

  Subtree place(const std::string& id, bool is_root) {
    const InnerLayout& inner = inner_of(id);
    const Size size = inner.frame;
    const Rect parent_frame{0.0, 0.0, size.width, size.height};
    const double gap = config_.sibling_gap;

    const Contour parent_contour({parent_frame});

    Subtree out;
    out.node.group_id = id;
    out.node.direction = Direction::Root;
    out.node.frame = parent_frame;

    struct Child {
      Subtree sub;
      Point init;
      Point displacement;
    };
    std::vector<Child> children;
    for (const std::string& child_id : inner.child_order) {
      if (!index_.group(child_id) || !plan_.expanded.contains(child_id)) continue;
      Child c{place(child_id, false), {}, {}};
      const Rect anchor = inner.children.at(child_id);
      const Size child_size = c.sub.node.frame.size();
      const Rect sub_bounds = c.sub.contour.bounds();
      Direction dir = baseline_ ? Direction::Right
                                : choose_direction(anchor, parent_frame, config_.proximity);
      Point init;
      if (baseline_) {
        init = {size.width + gap, size.height / 2.0 - child_size.height / 2.0};
      } else {
        init = initialize_child(anchor, child_size, dir, size, gap);
      }
      // The subtree may wrap around the parent but must not touch it; the top
      // level also stays below/right of the root's origin.
      const Axis growth = dir == Direction::Right ? Axis::X : Axis::Y;
      const double clear =
          clearance_shift(parent_contour, c.sub.contour.translated(init), growth, gap);
      (growth == Axis::X ? init.x : init.y) += clear;
      if (is_root) {
        init.x = std::max(init.x, -sub_bounds.left());
        init.y = std::max(init.y, -sub_bounds.top());
      }
      c.sub.node.direction = dir;
      c.sub.node.anchor = anchor;
      c.sub.node.initial_offset = init;
      c.init = init;
      children.push_back(std::move(c));
    }

    std::vector<std::size_t> right;
    std::vector<std::size_t> down;
    for (std::size_t i = 0; i < children.size(); ++i) {
      (children[i].sub.node.direction == Direction::Right ? right : down).push_back(i);
    }
    auto by_anchor = [&](Axis axis) {
      return [&children, axis](std::size_t a, std::size_t b) {
        const Rect& ra = children[a].sub.node.anchor;
        const Rect& rb = children[b].sub.node.anchor;
        if (axis == Axis::Y) {
          return std::tie(ra.y, ra.x, children[a].sub.node.group_id) <
                 std::tie(rb.y, rb.x, children[b].sub.node.group_id);
        }
        return std::tie(ra.x, ra.y, children[a].sub.node.group_id) <
               std::tie(rb.x, rb.y, children[b].sub.node.group_id);
      };
    };
    std::stable_sort(right.begin(), right.end(), by_anchor(Axis::Y));
    std::stable_sort(down.begin(), down.end(), by_anchor(Axis::X));

    auto separate = [&](const std::vector<std::size_t>& group, Axis axis) {
      std::vector<Contour> contours;
      for (std::size_t i : group) contours.push_back(children[i].sub.contour.translated(children[i].init));
      const auto shifts = separate_same_direction(contours, axis, gap, parent_contour);
      Contour merged;
      for (std::size_t k = 0; k < group.size(); ++k) {
        Point& d = children[group[k]].displacement;
        (axis == Axis::Y ? d.y : d.x) += shifts[k];
        merged.merge(children[group[k]].sub.contour.translated(children[group[k]].init + d));
      }
      return merged;
    };
    Contour right_contour = separate(right, Axis::Y);
    Contour down_contour = separate(down, Axis::X);

    const CrossSeparation cross = separate_cross_direction(right_contour, down_contour, gap, parent_contour);
    if (cross.axis) {
      const bool move_down = *cross.axis == Axis::Y;
      for (std::size_t i : move_down ? down : right) {
        (move_down ? children[i].displacement.y : children[i].displacement.x) += cross.shift;
      }
      (move_down ? down_contour : right_contour)
          .translate(move_down ? Point{0.0, cross.shift} : Point{cross.shift, 0.0});
    }
    out.node.cross_axis = cross.axis;
    out.node.cross_shift = cross.shift;

    std::vector<Point> displacements;
    for (const Child& c : children) displacements.push_back(c.displacement);
    const Point mean = recenter_parent(displacements);
    // The parent follows the mean displacement as far as it stays clear of its
    // children and keeps each child on its growth side (and, at the top level,
    // keeps every child below/right of its origin).
    Contour all = right_contour;
    all.merge(down_contour);
    auto admissible = [&](Point d) {
      if (d.x < 0.0 || d.y < 0.0) return false;
      if (is_root && !children.empty() &&
          (d.x > all.bounds().left() + kEpsilon || d.y > all.bounds().top() + kEpsilon)) {
        return false;
      }
      const Rect moved = parent_frame.translated(d);
      for (const Rect& r : all.rects()) {
        if (!separated(moved, r, gap)) return false;
      }
      for (const Child& c : children) {
        const Point o = c.init + c.displacement;
        if (c.sub.node.direction == Direction::Right) {
          if (o.x < moved.right() + gap - kEpsilon) return false;
        } else if (o.y < moved.bottom() + gap - kEpsilon) {
          return false;
        }
      }
      return true;
    };
    Point delta;
    for (Point candidate : {mean, Point{mean.x, 0.0}, Point{0.0, mean.y}}) {
      if (admissible(candidate)) {
        delta = candidate;
        break;
      }
    }
    out.node.recenter_delta = delta;

    out.contour = Contour({parent_frame});
    for (Child& c : children) {
      c.sub.node.displacement = c.displacement;
      c.sub.node.offset = c.init + c.displacement - delta;
      out.contour.merge(c.sub.contour.translated(c.sub.node.offset));
      out.node.children.push_back(std::move(c.sub.node));
    }
    return out;
  }

  static void assign_absolute(LayoutTreeNode& node, Point parent_origin) {
    const Point origin = parent_origin + node.offset;
    node.frame = {origin.x, origin.y, node.frame.width, node.frame.height};
    for (LayoutTreeNode& child : node.children) assign_absolute(child, origin);
  }

  const GraphIndex& index_;
  const ExpansionPlan& plan_;
  const std::map<std::string, InnerLayout>& inner_;
  const TreeConfig& config_;
  bool baseline_;
};

}  // namespace

LayoutTree layout_tree(const GraphIndex& index, const ExpansionPlan& plan,
                       const std::map<std::string, InnerLayout>& inner,
                       const TreeConfig& config) {
  return TreePlacer(index, plan, inner, config, false).run();
}

LayoutTree layout_tree_baseline(const GraphIndex& index, const ExpansionPlan& plan,
                                const std::map<std::string, InnerLayout>& inner,
                                const TreeConfig& config) {
  return TreePlacer(index, plan, inner, config, true).run();
}

}  // namespace odl
