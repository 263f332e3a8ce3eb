#pragma once

#include <span>
#include <utility>
#include <vector>

namespace odl {

/// Tolerance used by all geometric predicates in layout units.
inline constexpr double kEpsilon = 1e-6;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(const Point&, const Point&) = default;
};

struct Size {
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const Size&, const Size&) = default;
};

/// Axis-aligned rectangle; (x, y) is the top-left corner, y grows downwards.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double left() const { return x; }
  double right() const { return x + width; }
  double top() const { return y; }
  double bottom() const { return y + height; }
  double center_x() const { return x + width / 2.0; }
  double center_y() const { return y + height / 2.0; }
  Point origin() const { return {x, y}; }
  Point center() const { return {center_x(), center_y()}; }
  Size size() const { return {width, height}; }

  Rect translated(Point d) const { return {x + d.x, y + d.y, width, height}; }
  bool contains(const Rect& other, double eps = kEpsilon) const;
  bool contains(Point p, double eps = kEpsilon) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Axis { X, Y };

/// True when a and b are disjoint with a gap of at least `margin` along at
/// least one axis.
bool separated(const Rect& a, const Rect& b, double margin, double eps = kEpsilon);

/// Euclidean distance between the closest points of two rectangles (0 when they
/// touch or overlap).
double rect_distance(const Rect& a, const Rect& b);

/// Closest pair of points (p on a, q on b). For overlapping extents along an
/// axis the midpoint of the overlap is used.
std::pair<Point, Point> nearest_points(const Rect& a, const Rect& b);

/// Bounding box of a non-empty rectangle set; a default Rect when empty.
Rect bounding_box(std::span<const Rect> rects);

/// True when segments ab and cd intersect in a single point interior to both.
bool segments_cross(Point a, Point b, Point c, Point d);

/// True when segment ab touches the boundary of r at any point other than the
/// given allowed points.
bool segment_hits_boundary(Point a, Point b, const Rect& r,
                           std::span<const Point> allowed, double eps = kEpsilon);

double polyline_length(std::span<const Point> points);

}  // namespace odl
