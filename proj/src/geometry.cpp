#include "odlayout/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace odl {

bool Rect::contains(const Rect& other, double eps) const {
  return other.left() >= left() - eps && other.right() <= right() + eps &&
         other.top() >= top() - eps && other.bottom() <= bottom() + eps;
}

bool Rect::contains(Point p, double eps) const {
  return p.x >= left() - eps && p.x <= right() + eps && p.y >= top() - eps &&
         p.y <= bottom() + eps;
}

bool separated(const Rect& a, const Rect& b, double margin, double eps) {
  return a.right() + margin <= b.left() + eps || b.right() + margin <= a.left() + eps ||
         a.bottom() + margin <= b.top() + eps || b.bottom() + margin <= a.top() + eps;
}

namespace {

// Closest coordinates of two intervals along one axis.
std::pair<double, double> nearest_on_axis(double a0, double a1, double b0, double b1) {
  if (a1 < b0) return {a1, b0};
  if (b1 < a0) return {a0, b1};
  const double mid = (std::max(a0, b0) + std::min(a1, b1)) / 2.0;
  return {mid, mid};
}

double orientation(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int sign(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

bool near_allowed(Point p, std::span<const Point> allowed, double eps) {
  return std::any_of(allowed.begin(), allowed.end(), [&](Point q) {
    return std::abs(p.x - q.x) <= eps && std::abs(p.y - q.y) <= eps;
  });
}

// Intersection of segment ab with the axis-aligned segment {coord = c, other in
// [lo, hi]}; `vertical` selects which coordinate is fixed.
bool hits_side(Point a, Point b, double c, double lo, double hi, bool vertical,
               std::span<const Point> allowed, double eps) {
  const double fa = vertical ? a.x : a.y;
  const double fb = vertical ? b.x : b.y;
  const double oa = vertical ? a.y : a.x;
  const double ob = vertical ? b.y : b.x;
  auto make = [&](double fixed, double other) {
    return vertical ? Point{fixed, other} : Point{other, fixed};
  };

  if (std::abs(fa - c) <= eps && std::abs(fb - c) <= eps) {
    const double s0 = std::max(std::min(oa, ob), lo);
    const double s1 = std::min(std::max(oa, ob), hi);
    if (s1 < s0 - eps) return false;
    if (s1 - s0 > eps) return true;
    return !near_allowed(make(c, s0), allowed, eps);
  }
  if ((fa - c) * (fb - c) > 0.0 && std::abs(fa - c) > eps && std::abs(fb - c) > eps) {
    return false;
  }
  double t = (c - fa) / (fb - fa);
  t = std::clamp(t, 0.0, 1.0);
  const double other = oa + t * (ob - oa);
  if (other < lo - eps || other > hi + eps) return false;
  return !near_allowed(make(c, other), allowed, eps);
}

}  // namespace

double rect_distance(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, b.left() - a.right(), a.left() - b.right()});
  const double dy = std::max({0.0, b.top() - a.bottom(), a.top() - b.bottom()});
  return std::hypot(dx, dy);
}

std::pair<Point, Point> nearest_points(const Rect& a, const Rect& b) {
  const auto [ax, bx] = nearest_on_axis(a.left(), a.right(), b.left(), b.right());
  const auto [ay, by] = nearest_on_axis(a.top(), a.bottom(), b.top(), b.bottom());
  return {{ax, ay}, {bx, by}};
}

Rect bounding_box(std::span<const Rect> rects) {
  if (rects.empty()) return {};
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  for (const Rect& r : rects) {
    x0 = std::min(x0, r.left());
    y0 = std::min(y0, r.top());
    x1 = std::max(x1, r.right());
    y1 = std::max(y1, r.bottom());
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  const int o1 = sign(orientation(a, b, c));
  const int o2 = sign(orientation(a, b, d));
  const int o3 = sign(orientation(c, d, a));
  const int o4 = sign(orientation(c, d, b));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segment_hits_boundary(Point a, Point b, const Rect& r, std::span<const Point> allowed,
                           double eps) {
  return hits_side(a, b, r.top(), r.left(), r.right(), false, allowed, eps) ||
         hits_side(a, b, r.bottom(), r.left(), r.right(), false, allowed, eps) ||
         hits_side(a, b, r.left(), r.top(), r.bottom(), true, allowed, eps) ||
         hits_side(a, b, r.right(), r.top(), r.bottom(), true, allowed, eps);
}

double polyline_length(std::span<const Point> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    total += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
  }
  return total;
}

}  // namespace odl
