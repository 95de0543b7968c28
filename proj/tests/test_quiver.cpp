#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace nccr;

namespace {

Analysis analysis(const std::string& name) { return analyze(test::fixture(name)); }

Int pair(const IVec3& m, const IVec3& v) { return m[0] * v[0] + m[1] * v[1] + m[2] * v[2]; }

using ArrowTriple = std::tuple<std::size_t, std::size_t, IVec3>;

// Irreducible monomial maps between the summands, found by factoring every
// small-slack monomial through every summand. A map T_t -> T_h of degree m
// exists iff <m, v_i> >= h_i - t_i; it is reducible iff it splits as
// T_t -> T_d -> T_h with neither factor an identity.
std::set<ArrowTriple> brute_arrows(const ToricData& d, const std::vector<BVector>& s, Int r) {
  const std::size_t k = d.size();
  auto slack = [&](const IVec3& m, const BVector& from, const BVector& to, std::size_t i) {
    return pair(m, d.ray(i)) - (to[i] - from[i]);
  };
  std::set<ArrowTriple> out;
  for (std::size_t t = 0; t < s.size(); ++t)
    for (std::size_t h = 0; h < s.size(); ++h)
      for (Int x = -r; x <= r; ++x)
        for (Int y = -r; y <= r; ++y)
          for (Int z = -r; z <= r; ++z) {
            const IVec3 m{x, y, z};
            if (t == h && m == IVec3{0, 0, 0}) continue;
            bool small = true;
            for (std::size_t i = 0; i < k && small; ++i) {
              const Int sl = slack(m, s[t], s[h], i);
              small = sl >= 0 && sl <= 2;
            }
            if (!small) continue;
            bool reducible = false;
            for (std::size_t w = 0; w < s.size() && !reducible; ++w)
              for (Int a = -r; a <= r && !reducible; ++a)
                for (Int b = -r; b <= r && !reducible; ++b)
                  for (Int c = -r; c <= r && !reducible; ++c) {
                    const IVec3 m1{a, b, c};
                    const IVec3 m2 = m - m1;
                    if ((w == t && m1 == IVec3{0, 0, 0}) || (w == h && m2 == IVec3{0, 0, 0})) continue;
                    bool ok = true;
                    for (std::size_t i = 0; i < k && ok; ++i)
                      ok = slack(m1, s[t], s[w], i) >= 0 && slack(m2, s[w], s[h], i) >= 0;
                    reducible = ok;
                  }
            if (!reducible) {
              EXPECT_LT(std::max({std::abs(x), std::abs(y), std::abs(z)}), r) << "search box too small";
              out.insert({t, h, m});
            }
          }
  return out;
}

}  // namespace

TEST(Quiver, C3IsOneVertexWithThreeLoops) {
  const auto an = analysis("c3");
  ASSERT_EQ(an.quivers.size(), 1U);
  const auto& q = an.quivers[0];
  EXPECT_EQ(q.vertices.size(), 1U);
  ASSERT_EQ(q.arrows.size(), 3U);
  std::set<BVector> slacks;
  for (const auto& a : q.arrows) {
    EXPECT_EQ(a.tail, 0U);
    EXPECT_EQ(a.head, 0U);
    EXPECT_EQ(a.slack_weight(), 1);
    slacks.insert(a.slack);
  }
  EXPECT_EQ(slacks.size(), 3U);
}

TEST(Quiver, Conifold) {
  const auto an = analysis("conifold");
  ASSERT_EQ(an.quivers.size(), 2U);
  for (const auto& q : an.quivers) {
    EXPECT_EQ(q.vertices.size(), 2U);
    EXPECT_EQ(q.arrows.size(), 4U);
    for (const auto& a : q.arrows) EXPECT_NE(a.tail, a.head);
  }
  EXPECT_EQ(an.classes.raw_reps.size(), 1U);
  EXPECT_EQ(an.classes.classes.size(), 1U);
  EXPECT_FALSE(an.classes.classes[0].asterisk);
}

TEST(Quiver, ArrowsMatchFactorizationSearch) {
  for (const auto& name : {"conifold", "c3", "simplicial_3", "refl_3a", "refl_4a", "refl_5a", "para_1_0_0_2", "refl_6a"}) {
    const auto an = analysis(name);
    const std::size_t limit = std::string(name) == "refl_6a" ? 3 : an.mm.size();
    for (std::size_t j = 0; j < limit; ++j) {
      const auto& q = an.quivers[j];
      std::set<ArrowTriple> got;
      for (const auto& a : q.arrows) got.insert({a.tail, a.head, a.monomial});
      EXPECT_EQ(got.size(), q.arrows.size()) << name;
      EXPECT_EQ(got, brute_arrows(an.data, q.vertices, 5)) << name << " set " << j;
    }
  }
}

TEST(Quiver, ArrowInvariantsOnAllFixtures) {
  for (const auto& name : test::all_fixtures()) {
    const auto an = analysis(name);
    for (const auto& q : an.quivers) EXPECT_EQ(arrow_violation(an.data, q), "") << name;
  }
}

TEST(Quiver, OppositeIsAnInvolution) {
  for (const auto& name : {"refl_5a", "refl_6b", "para_2_1_m1_2"}) {
    const auto an = analysis(name);
    for (const auto& q : an.quivers) {
      const auto opp = opposite(an.data, q);
      const auto back = opposite(an.data, opp);
      EXPECT_EQ(back.vertices, q.vertices);
      EXPECT_TRUE(affine_equivalent(q, back).has_value());
    }
  }
}

TEST(Quiver, EquivalenceMapIsUnimodularAndCarriesArrows) {
  const auto an = analysis("refl_6a");
  for (std::size_t i = 0; i < an.quivers.size(); ++i) {
    const std::size_t rep = an.classes.raw_reps[an.classes.raw_class_of[i]];
    const auto map = affine_equivalent(an.quivers[rep], an.quivers[i]);
    ASSERT_TRUE(map.has_value());
    EXPECT_EQ(std::abs(det3(map->a)), 1);
    std::multiset<QVec3> image, target;
    for (const auto& a : an.quivers[rep].arrows) image.insert(map->apply_vector(a.lift));
    for (const auto& a : an.quivers[i].arrows) target.insert(a.lift);
    EXPECT_EQ(image, target);
  }
  // Different raw classes are never equivalent.
  for (std::size_t a = 0; a < an.classes.raw_reps.size(); ++a)
    for (std::size_t b = 0; b < an.classes.raw_reps.size(); ++b)
      if (a != b) {
        EXPECT_FALSE(affine_equivalent(an.quivers[an.classes.raw_reps[a]], an.quivers[an.classes.raw_reps[b]]).has_value());
      }
}

TEST(Quiver, ClassCountsInvariantUnderLatticeAutomorphisms) {
  // (x, y) -> (x + 2y + 3, -y + 1) is an affine automorphism of Z^2.
  for (const auto& name : {"refl_5a", "refl_6b", "para_2_1_m1_2"}) {
    const auto base = analysis(name);
    std::vector<IVec2> moved;
    for (const auto& v : base.data.rays()) moved.push_back({v[0] + 2 * v[1] + 3, -v[1] + 1});
    const auto an = analyze(ToricData::from_points(std::span<const IVec2>(moved)));
    EXPECT_EQ(an.cm.size(), base.cm.size()) << name;
    EXPECT_EQ(an.mm.size(), base.mm.size()) << name;
    EXPECT_EQ(an.classes.raw_reps.size(), base.classes.raw_reps.size()) << name;
    EXPECT_EQ(an.classes.classes.size(), base.classes.classes.size()) << name;
  }
}
