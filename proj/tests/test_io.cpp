#include <gtest/gtest.h>

#include "support.hpp"

using namespace nccr;
using io::json;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

ErrorCode parse_error(const std::string& text) {
  try {
    io::parse_polygon(json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::UnknownClass;
}

}  // namespace

TEST(Io, PolygonParsing) {
  const auto d = io::parse_polygon(json::parse(R"({"points": [[0,0],[1,0],[1,1],[0,1]]})"));
  EXPECT_EQ(d.size(), 4U);
  EXPECT_EQ(parse_error(R"([1,2])"), ErrorCode::InvalidInput);
  EXPECT_EQ(parse_error(R"({"points": [[0,0],[1]]})"), ErrorCode::InvalidInput);
  EXPECT_EQ(parse_error(R"({"points": [[0,0],[1,0.5],[0,1]]})"), ErrorCode::InvalidInput);
  EXPECT_EQ(parse_error(R"({"points": [[0,0],[1,1],[2,2]]})"), ErrorCode::NonConvex);
  EXPECT_THROW(io::read_polygon("/nonexistent/polygon.json"), Error);
}

TEST(Io, RationalsAreExactStrings) {
  EXPECT_EQ(io::to_json(rat(3, 6)), "1/2");
  EXPECT_EQ(io::to_json(rat(-4, 2)), "-2");
  const auto an = analyze(test::fixture("conifold"));
  const json q = io::quiver_json(an.quivers[0]);
  ASSERT_EQ(q["vertices"].size(), 2U);
  EXPECT_TRUE(q["vertices"][1]["kappa"][0].is_string());
  for (const auto& a : q["arrows"]) {
    EXPECT_TRUE(a.contains("slack"));
    EXPECT_TRUE(a.contains("m"));
    EXPECT_TRUE(a["lift"][2].is_string());
  }
}

TEST(Io, DimerJsonAndSvgAreDeterministic) {
  auto render = [] {
    const auto an = analyze(test::fixture("refl_6b"));
    std::string out;
    for (const auto& q : an.quivers) {
      DimerModel d = extract_dimer(q);
      d.rcharge = find_rcharge(an.data, d);
      auto pms = perfect_matchings(d);
      assign_pm_vectors(d, pms);
      out += io::dimer_json(an.data, d, pms).dump() + io::dimer_svg(d);
    }
    return out;
  };
  EXPECT_EQ(render(), render());
}

TEST(Io, SvgContents) {
  const auto an = analyze(test::fixture("refl_4a"));
  const DimerModel d = extract_dimer(an.quivers[0]);
  const std::string svg = io::dimer_svg(d);
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_EQ(count(svg, "<circle"), d.quiver.vertices.size());
  EXPECT_GE(count(svg, "<line"), d.quiver.arrows.size());
  EXPECT_GE(count(svg, "<polygon"), d.faces_pos.size());
  EXPECT_EQ(count(svg, "\"nan") + count(svg, ",nan") + count(svg, "\"-nan"), 0U);
}

TEST(Io, DimerJsonCarriesTypeOnlyForReflexive) {
  for (const auto& [name, reflexive] : std::vector<std::pair<std::string, bool>>{{"refl_3a", true}, {"conifold", false}}) {
    const auto an = analyze(test::fixture(name));
    const DimerModel d = extract_dimer(an.quivers[0]);
    const json j = io::dimer_json(an.data, d, perfect_matchings(d));
    EXPECT_EQ(j.contains("type"), reflexive) << name;
    EXPECT_EQ(j["matchings"].size(), perfect_matchings(d).size());
  }
}

TEST(Io, MutationDot) {
  MutationGraph g;
  g.nodes = 2;
  g.edges = {{0, 3, 1}, {1, 0, 0}};
  const std::string dot = io::mutation_dot(g, {"6a", "6b"}, {false, true});
  EXPECT_NE(dot.find("n0 [label=\"6a\"]"), std::string::npos);
  EXPECT_NE(dot.find("n1 [label=\"6b*\"]"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1 [label=\"v3\"]"), std::string::npos);
}
