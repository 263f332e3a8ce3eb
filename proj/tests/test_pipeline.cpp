#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "odlayout/ingest.hpp"
#include "odlayout/pipeline.hpp"

namespace odl {
namespace {

CompoundGraph fixture(const std::string& name) {
  return parse_graph(testing::fixture_text(name), format_for_path(name));
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(Pipeline, ExpansionIsClosedAndFramed) {
  const auto r = run_pipeline(fixture("two_group.cg.json"), {"B"});
  ASSERT_TRUE(r.laid_out);
  EXPECT_FALSE(r.fatal);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.expansion.expanded, (std::set<std::string>{"B"}));  // A is a root
  EXPECT_EQ(r.plan.expanded, (std::set<std::string>{"A", "B"}));
  EXPECT_EQ(r.scene.frame_count(), 2u);
  EXPECT_EQ(r.metrics.frame_count, 2u);
}

TEST(Pipeline, UnknownExpansionIsFatal) {
  const auto r = run_pipeline(fixture("two_group.cg.json"), {"nope"});
  EXPECT_TRUE(r.fatal);
  EXPECT_FALSE(r.laid_out);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, DiagnosticCode::UnknownGroup);
  EXPECT_EQ(r.diagnostics[0].subject, "nope");
}

TEST(Pipeline, StructuralErrorsStopBeforeLayout) {
  const CompoundGraph g = parse_generic(
      R"({"groups":[{"id":"A","children":["B"]},{"id":"B","children":["A"]}]})");
  const auto r = run_pipeline(g, {});
  EXPECT_TRUE(r.fatal);
  EXPECT_FALSE(r.laid_out);
}

TEST(Pipeline, RedPortsAndStrictMode) {
  const CompoundGraph g = fixture("red_ports.fn.json");
  const std::set<std::string> all{"main", "f1", "f2", "l1"};
  const auto r = run_pipeline(g, all);
  ASSERT_TRUE(r.laid_out);
  EXPECT_FALSE(r.fatal);
  EXPECT_EQ(r.diagnostics.size(), 3u);
  std::set<std::string> synthesized;
  for (const ScenePort& p : r.scene.ports) {
    if (p.synthesized) synthesized.insert(p.ref);
  }
  EXPECT_EQ(synthesized, (std::set<std::string>{"f2.k", "l1.acc", "l1.init"}));

  LayoutConfig strict;
  strict.strict = true;
  const auto s = run_pipeline(g, all, strict);
  EXPECT_TRUE(s.fatal);
  EXPECT_TRUE(s.laid_out);
}

TEST(Pipeline, RedPortsAllDrawnRed) {
  // Only the top frame open: every synthesized port sits on a collapsed box.
  const auto r = run_pipeline(fixture("red_ports.fn.json"), {});
  std::size_t synthesized = 0;
  for (const ScenePort& p : r.scene.ports) synthesized += p.synthesized;
  EXPECT_EQ(synthesized, 3u);
  EXPECT_EQ(count_of(to_svg(r.scene), "fill=\"#ff0000\""), 3u);
}

TEST(Pipeline, DuplicatePolicies) {
  const CompoundGraph g = fixture("duplicates.cg.json");
  const std::set<std::string> all{"g1", "g2", "g3"};
  auto frames_of_copies = [](const Scene& s) {
    return std::count_if(s.boxes.begin(), s.boxes.end(), [](const SceneBox& b) {
      return b.role == "frame" && b.ref != "prog";
    });
  };
  auto dashed = [](const Scene& s) {
    return std::count_if(s.edges.begin(), s.edges.end(),
                         [](const RoutedEdge& e) { return e.dashed(); });
  };
  LayoutConfig cfg;
  cfg.duplicate_mode = DuplicateMode::SingleExpansion;
  const auto single = run_pipeline(g, all, cfg);
  EXPECT_EQ(frames_of_copies(single.scene), 1);
  EXPECT_EQ(dashed(single.scene), 2);
  cfg.duplicate_mode = DuplicateMode::ExpandEach;
  const auto each = run_pipeline(g, all, cfg);
  EXPECT_EQ(frames_of_copies(each.scene), 3);
  EXPECT_EQ(dashed(each.scene), 0);
}

TEST(Pipeline, SceneIdsUniqueAndCanvasCoversGeometry) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto c = testing::corpus_case(seed);
    const auto r = run_pipeline(c.graph, c.expansion);
    ASSERT_TRUE(r.laid_out);
    std::set<std::string> ids;
    for (const auto& b : r.scene.boxes) EXPECT_TRUE(ids.insert("box " + b.id).second) << b.id;
    for (const auto& p : r.scene.ports) EXPECT_TRUE(ids.insert("port " + p.id).second) << p.id;
    for (const auto& e : r.scene.edges) EXPECT_TRUE(ids.insert("edge " + e.id).second) << e.id;
    const Rect& canvas = r.scene.canvas;
    for (const auto& b : r.scene.boxes) EXPECT_TRUE(canvas.contains(b.rect));
    for (const auto& p : r.scene.ports) EXPECT_TRUE(canvas.contains(p.point));
    for (const auto& e : r.scene.edges) {
      for (Point p : e.points) EXPECT_TRUE(canvas.contains(p));
    }
  }
}

TEST(Pipeline, DeterministicAcrossRuns) {
  for (const char* name :
       {"two_group.cg.json", "red_ports.fn.json", "duplicates.cg.json", "oblong.cg.json"}) {
    const CompoundGraph g = fixture(name);
    std::set<std::string> all;
    for (const Group& grp : g.groups) all.insert(grp.id);
    const auto a = run_pipeline(g, all);
    const auto b = run_pipeline(fixture(name), all);
    EXPECT_EQ(to_json(a.scene), to_json(b.scene)) << name;
    EXPECT_EQ(to_svg(a.scene), to_svg(b.scene)) << name;
    EXPECT_EQ(to_json(a.metrics), to_json(b.metrics)) << name;
  }
}

TEST(Pipeline, ConfigNames) {
  EXPECT_EQ(parse_duplicate_mode("single"), DuplicateMode::SingleExpansion);
  EXPECT_EQ(parse_duplicate_mode("each"), DuplicateMode::ExpandEach);
  EXPECT_FALSE(parse_duplicate_mode("all"));
  EXPECT_EQ(parse_proximity_metric("center_gap"), ProximityMetric::CenterGap);
  EXPECT_FALSE(parse_proximity_metric("manhattan"));
}

TEST(Pipeline, DiagnosticJson) {
  const Diagnostic d{DiagnosticCode::UndefinedPort, Severity::Warning, "p9", "undefined port"};
  EXPECT_EQ(to_json(d),
            R"({"code":"UndefinedPort","message":"undefined port","severity":"warning","subject":"p9"})");
}

}  // namespace
}  // namespace odl
