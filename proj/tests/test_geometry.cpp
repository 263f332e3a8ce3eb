#include <random>

#include <gtest/gtest.h>

#include "odlayout/geometry.hpp"
#include "oracles.hpp"

namespace odl {
namespace {

TEST(Geometry, SeparatedNeedsGapOnOneAxis) {
  const Rect a{0, 0, 10, 10};
  EXPECT_TRUE(separated(a, {15, 0, 10, 10}, 5));
  EXPECT_FALSE(separated(a, {14, 0, 10, 10}, 5));
  EXPECT_TRUE(separated(a, {12, 20, 10, 10}, 5));
  EXPECT_FALSE(separated(a, {5, 5, 10, 10}, 0));
  EXPECT_TRUE(separated(a, {10, 0, 10, 10}, 0));
}

TEST(Geometry, RectDistance) {
  EXPECT_DOUBLE_EQ(rect_distance({0, 0, 1, 1}, {4, 5, 1, 1}), 5.0);
  EXPECT_DOUBLE_EQ(rect_distance({0, 0, 10, 10}, {10, 2, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(rect_distance({0, 0, 10, 10}, {2, 2, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(rect_distance({0, 0, 10, 10}, {2, 17, 3, 3}), 7.0);
}

TEST(Geometry, NearestPointsRealiseDistance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-50, 50), len(1, 30);
  for (int i = 0; i < 500; ++i) {
    const Rect a{pos(rng), pos(rng), len(rng), len(rng)};
    const Rect b{pos(rng), pos(rng), len(rng), len(rng)};
    const auto [p, q] = nearest_points(a, b);
    EXPECT_TRUE(a.contains(p, 1e-9));
    EXPECT_TRUE(b.contains(q, 1e-9));
    EXPECT_NEAR(std::hypot(p.x - q.x, p.y - q.y), rect_distance(a, b), 1e-9);
  }
}

TEST(Geometry, SegmentsCrossExamples) {
  EXPECT_TRUE(segments_cross({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(segments_cross({0, 0}, {2, 0}, {0, 1}, {2, 1}));    // parallel
  EXPECT_FALSE(segments_cross({0, 0}, {2, 2}, {2, 2}, {3, 0}));    // shared endpoint
  EXPECT_FALSE(segments_cross({0, 0}, {4, 0}, {1, 0}, {3, 0}));    // collinear overlap
  EXPECT_FALSE(segments_cross({0, 0}, {4, 0}, {2, 0}, {2, 3}));    // T junction
}

TEST(Geometry, SegmentsCrossMatchesParametricOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(0, 12);
  for (int i = 0; i < 20000; ++i) {
    const Point a{double(coord(rng)), double(coord(rng))}, b{double(coord(rng)), double(coord(rng))};
    const Point c{double(coord(rng)), double(coord(rng))}, d{double(coord(rng)), double(coord(rng))};
    if (a == b || c == d) continue;
    ASSERT_EQ(segments_cross(a, b, c, d), testing::parametric_cross(a, b, c, d))
        << a.x << "," << a.y << " " << b.x << "," << b.y << " / " << c.x << "," << c.y << " "
        << d.x << "," << d.y;
  }
}

TEST(Geometry, SegmentHitsBoundary) {
  const Rect r{0, 0, 10, 10};
  const Point port{5, 0};
  EXPECT_FALSE(segment_hits_boundary({5, -5}, {5, 0}, r, std::span(&port, 1)));
  EXPECT_TRUE(segment_hits_boundary({4, -5}, {4, 5}, r, std::span(&port, 1)));
  EXPECT_FALSE(segment_hits_boundary({2, 2}, {8, 8}, r, {}));
  EXPECT_TRUE(segment_hits_boundary({0, 2}, {0, 8}, r, {}));
}

TEST(Geometry, BoundingBoxAndLength) {
  const std::vector<Rect> rs{{0, 0, 1, 1}, {5, -2, 1, 1}};
  EXPECT_EQ(bounding_box(rs), (Rect{0, -2, 6, 3}));
  EXPECT_EQ(bounding_box({}), Rect{});
  const std::vector<Point> pts{{0, 0}, {3, 4}, {3, 10}};
  EXPECT_DOUBLE_EQ(polyline_length(pts), 11.0);
}

}  // namespace
}  // namespace odl
