#include <algorithm>

#include <gtest/gtest.h>
#include <json.hpp>

#include "corpus.hpp"
#include "odlayout/ingest.hpp"

namespace odl {
namespace {

const Edge& edge(const CompoundGraph& g, std::string_view id) {
  for (const Edge& e : g.edges) {
    if (e.id == id) return e;
  }
  throw std::runtime_error("no edge " + std::string(id));
}

const Group& group(const CompoundGraph& g, std::string_view id) {
  for (const Group& x : g.groups) {
    if (x.id == id) return x;
  }
  throw std::runtime_error("no group " + std::string(id));
}

TEST(ParseGeneric, Minimal) {
  const CompoundGraph g = parse_generic(R"({"groups":[],"atoms":[],"edges":[]})");
  EXPECT_TRUE(g.groups.empty());
  EXPECT_TRUE(g.atoms.empty());
  EXPECT_TRUE(g.edges.empty());
}

TEST(ParseGeneric, TwoGroupFixture) {
  const CompoundGraph g = parse_generic(testing::fixture_text("two_group.cg.json"));
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_EQ(g.groups[0].id, "A");
  EXPECT_EQ(g.groups[1].id, "B");
  EXPECT_EQ(g.groups[0].label, "Outer");
  EXPECT_EQ(g.groups[0].kind, GroupKind::Module);
  EXPECT_EQ(g.groups[0].children, (std::vector<std::string>{"B", "x"}));
  EXPECT_EQ(g.groups[0].in_ports.at(0).id, "A.in");
  EXPECT_EQ(g.edges.size(), 5u);
}

TEST(ParseGeneric, SyntaxErrorHasPosition) {
  try {
    parse_generic("{\n  \"groups\": [,]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 0u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ParseGeneric, MissingFieldHasPath) {
  try {
    parse_generic(R"({"groups":[{"id":"a"},{"label":"b"}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "groups[1].id");
    EXPECT_EQ(e.line(), 0u);
  }
  try {
    parse_generic(R"({"edges":[{"id":"e","source":"a"}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "edges[0].target");
  }
}

TEST(ParseGeneric, UnknownFieldsIgnored) {
  const CompoundGraph g = parse_generic(
      R"({"version":7,"groups":[{"id":"a","colour":"blue"}],"atoms":[{"id":"x","weight":2}]})");
  EXPECT_EQ(g.groups.size(), 1u);
  EXPECT_EQ(g.atoms.size(), 1u);
}

TEST(ParseGeneric, GeneratedStylesRejected) {
  EXPECT_THROW(parse_generic(R"({"edges":[{"id":"e","source":"a","target":"b","style":"connector"}]})"),
               ParseError);
}

TEST(ParseGeneric, RoundTripOverCorpus) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto c = testing::corpus_case(seed);
    const std::string text = to_generic_json(c.graph);
    const CompoundGraph back = parse_generic(text);
    EXPECT_EQ(back, c.graph) << "seed " << seed;
    EXPECT_EQ(to_generic_json(back), text);
  }
  const CompoundGraph fixture = parse_generic(testing::fixture_text("two_group.cg.json"));
  EXPECT_EQ(parse_generic(to_generic_json(fixture)), fixture);
}

std::pair<std::size_t, std::size_t> count_boxes_and_wires(const nlohmann::json& box) {
  std::size_t boxes = 0, wires = box.value("wires", nlohmann::json::array()).size();
  for (const auto& child : box.value("boxes", nlohmann::json::array())) {
    const auto [b, w] = count_boxes_and_wires(child);
    boxes += 1 + b;
    wires += w;
  }
  return {boxes, wires};
}

TEST(ParseFunctionNetwork, KeepsEveryBoxAndWire) {
  const std::string text = testing::fixture_text("red_ports.fn.json");
  const CompoundGraph g = parse_function_network(text);
  const auto [boxes, wires] = count_boxes_and_wires(nlohmann::json::parse(text));
  EXPECT_EQ(g.groups.size(), boxes);
  EXPECT_EQ(g.edges.size(), wires);
}

TEST(ParseFunctionNetwork, NestingAndKinds) {
  const CompoundGraph g = parse_function_network(testing::fixture_text("red_ports.fn.json"));
  EXPECT_EQ(g.roots, (std::vector<std::string>{"main"}));
  EXPECT_EQ(group(g, "main").kind, GroupKind::Module);
  EXPECT_EQ(group(g, "f1").kind, GroupKind::Function);
  EXPECT_EQ(group(g, "l1").kind, GroupKind::Loop);
  EXPECT_EQ(group(g, "e1").kind, GroupKind::Expression);
  const auto& main_children = group(g, "main").children;
  EXPECT_NE(std::find(main_children.begin(), main_children.end(), "f1"), main_children.end());
  EXPECT_EQ(group(g, "f1").children, (std::vector<std::string>{"e1"}));
}

TEST(ParseFunctionNetwork, ReverseArrows) {
  const std::string text = testing::fixture_text("red_ports.fn.json");
  // Wire w2 points from f2.in back to its value source f1.out.
  const Edge& flipped = edge(parse_function_network(text), "w2");
  EXPECT_EQ(flipped.source, "f1.out");
  EXPECT_EQ(flipped.target, "f2.in");
  EXPECT_TRUE(flipped.arrow_at_source);

  const Edge& kept = edge(parse_function_network(text, {false}), "w2");
  EXPECT_EQ(kept.source, "f2.in");
  EXPECT_EQ(kept.target, "f1.out");
  EXPECT_FALSE(kept.arrow_at_source);
}

TEST(ParseFunctionNetwork, UndefinedPortsReachValidation) {
  const CompoundGraph g = parse_function_network(testing::fixture_text("red_ports.fn.json"));
  const ValidationResult v = validate(g);
  std::vector<std::string> undefined;
  for (const Diagnostic& d : v.diagnostics) {
    if (d.code == DiagnosticCode::UndefinedPort) undefined.push_back(d.subject);
  }
  std::sort(undefined.begin(), undefined.end());
  EXPECT_EQ(undefined, (std::vector<std::string>{"f2.k", "l1.acc", "l1.init"}));
  EXPECT_FALSE(v.fatal());
}

TEST(ParseFunctionNetwork, DefaultWireIds) {
  const CompoundGraph g = parse_function_network(R"({"boxes":[{"id":"m","type":"module",
    "ports":[{"id":"m.a","direction":"in"},{"id":"m.b","direction":"out"}],
    "wires":[{"src":"m.b","tgt":"m.a"}]}]})");
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_FALSE(g.edges[0].id.empty());
}

TEST(ParseFunctionNetwork, SyntaxError) {
  EXPECT_THROW(parse_function_network("{\"boxes\": ["), ParseError);
  EXPECT_THROW(parse_function_network(R"({"boxes":[{"type":"module"}]})"), ParseError);
}

TEST(InputFormat, Selection) {
  EXPECT_EQ(format_for_path("a/b/net.fn.json"), InputFormat::FunctionNetwork);
  EXPECT_EQ(format_for_path("graph.cg.json"), InputFormat::Generic);
  EXPECT_EQ(format_for_path("graph.json"), InputFormat::Generic);
  EXPECT_EQ(parse_input_format("fn"), InputFormat::FunctionNetwork);
  EXPECT_EQ(parse_input_format("generic"), InputFormat::Generic);
  EXPECT_FALSE(parse_input_format("xml"));
}

}  // namespace
}  // namespace odl
