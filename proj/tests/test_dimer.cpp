#include <gtest/gtest.h>

#include "support.hpp"

using namespace nccr;

namespace {

struct Built {
  Analysis an;
  std::vector<DimerModel> dimers;
};

Built build(const std::string& name) {
  Built b{analyze(test::fixture(name)), {}};
  for (const auto& q : b.an.quivers) b.dimers.push_back(extract_dimer(q));
  return b;
}

// Every arrow subset meeting each face exactly once, by exhaustive search.
std::vector<std::vector<std::size_t>> brute_matchings(const DimerModel& d) {
  const std::size_t n = d.quiver.arrows.size();
  std::vector<std::vector<std::size_t>> faces = d.faces_pos;
  faces.insert(faces.end(), d.faces_neg.begin(), d.faces_neg.end());
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    bool ok = true;
    for (const auto& f : faces) {
      int hits = 0;
      for (auto a : f) hits += (mask >> a) & 1U;
      ok = ok && hits == 1;
    }
    if (!ok) continue;
    std::vector<std::size_t> m;
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1U) m.push_back(a);
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(Dimer, ConifoldTilesTheTorusByTwoSquares) {
  const auto b = build("conifold");
  for (const auto& d : b.dimers) {
    EXPECT_EQ(d.quiver.vertices.size(), 2U);
    EXPECT_EQ(d.quiver.arrows.size(), 4U);
    ASSERT_EQ(d.faces_pos.size(), 1U);
    ASSERT_EQ(d.faces_neg.size(), 1U);
    EXPECT_EQ(d.faces_pos[0].size(), 4U);
    EXPECT_EQ(d.faces_neg[0].size(), 4U);
    auto pms = perfect_matchings(d);
    EXPECT_EQ(pms.size(), 4U);
    assign_pm_vectors(d, pms);
    std::vector<IVec3> vecs;
    for (const auto& p : pms) vecs.push_back(p.nvec);
    std::sort(vecs.begin(), vecs.end());
    auto rays = b.an.data.rays();
    std::sort(rays.begin(), rays.end());
    EXPECT_EQ(vecs, rays);
  }
}

TEST(Dimer, C3HasTwoTriangles) {
  const auto b = build("c3");
  const auto& d = b.dimers.at(0);
  EXPECT_EQ(d.faces_pos.size(), 1U);
  EXPECT_EQ(d.faces_neg.size(), 1U);
  EXPECT_EQ(d.faces_pos[0].size(), 3U);
  EXPECT_EQ(d.faces_neg[0].size(), 3U);
  EXPECT_EQ(perfect_matchings(d).size(), 3U);
}

TEST(Dimer, MatchingsAgreeWithSubsetSearch) {
  for (const auto& name : test::all_fixtures()) {
    const auto b = build(name);
    for (const auto& d : b.dimers) {
      if (d.quiver.arrows.size() > 22) continue;
      std::vector<std::vector<std::size_t>> got;
      for (const auto& p : perfect_matchings(d)) got.push_back(p.arrows);
      auto want = brute_matchings(d);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want) << name;
    }
  }
}

TEST(Dimer, AxiomsOnEveryFixture) {
  for (const auto& name : test::all_fixtures()) {
    const auto b = build(name);
    const BVector ones(std::vector<Int>(b.an.data.size(), 1));
    for (const auto& d : b.dimers) {
      const auto& q = d.quiver;
      EXPECT_EQ(static_cast<long>(q.vertices.size()) - static_cast<long>(q.arrows.size()) + static_cast<long>(d.face_count()), 0) << name;
      // Each arrow bounds exactly one face of each sign.
      std::vector<int> pos(q.arrows.size(), 0), neg(q.arrows.size(), 0);
      for (const auto& f : d.faces_pos)
        for (auto a : f) ++pos[a];
      for (const auto& f : d.faces_neg)
        for (auto a : f) ++neg[a];
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        EXPECT_EQ(pos[a], 1) << name;
        EXPECT_EQ(neg[a], 1) << name;
      }
      for (const auto* faces : {&d.faces_pos, &d.faces_neg})
        for (const auto& f : *faces) {
          EXPECT_GE(f.size(), 3U);
          EXPECT_EQ(face_slack(d, f), ones) << name;
          // Consecutive arrows chain head to tail and the lifts close up.
          QVec3 sum{};
          for (std::size_t i = 0; i < f.size(); ++i) {
            EXPECT_EQ(q.arrows[f[i]].head, q.arrows[f[(i + 1) % f.size()]].tail);
            sum = sum + q.arrows[f[i]].lift;
          }
          EXPECT_EQ(sum[0], 0);
          EXPECT_EQ(sum[1], 0);
        }
    }
  }
}

TEST(Dimer, CorruptedModelsAreRejected) {
  const auto b = build("refl_4a");
  DimerModel d = b.dimers.at(0);
  d.faces_pos.pop_back();
  EXPECT_THROW(validate_dimer(d), Error);
  DimerModel e = b.dimers.at(0);
  e.faces_pos.front().erase(e.faces_pos.front().begin());
  EXPECT_THROW(validate_dimer(e), Error);
}

TEST(Dimer, RChargesOnEveryFixture) {
  for (const auto& name : test::all_fixtures()) {
    const auto b = build(name);
    for (const auto& d : b.dimers) {
      const auto rc = find_rcharge(b.an.data, d);
      EXPECT_TRUE(interior_covector(b.an.data, rc.x));
      for (const auto& r : rc.values) {
        EXPECT_GT(r, 0);
        EXPECT_LT(r, 2);
      }
      EXPECT_TRUE(rcharge_identities_hold(d, rc.values));
    }
  }
}

TEST(Dimer, SymmetricTriangleHasEqualCharges) {
  const auto b = build("refl_3a");
  const auto values = rcharge_values(b.an.data, b.dimers.at(0), {0, 0, 1});
  EXPECT_EQ(b.dimers.at(0).quiver.arrows.size(), 9U);
  for (const auto& r : values) EXPECT_EQ(r, rat(2, 3));
  EXPECT_THROW(find_rcharge(b.an.data, b.dimers.at(0), IVec3{5, 0, 1}), Error);
}

TEST(Dimer, PolygonRecoveryOnEveryFixture) {
  for (const auto& name : test::all_fixtures()) {
    const auto b = build(name);
    for (const auto& d : b.dimers) {
      auto pms = perfect_matchings(d);
      assign_pm_vectors(d, pms);
      auto corners = recovered_polygon(b.an.data, pms);
      auto rays = b.an.data.rays();
      std::sort(corners.begin(), corners.end());
      std::sort(rays.begin(), rays.end());
      EXPECT_EQ(corners, rays) << name;
      for (const auto& p : pms) EXPECT_EQ(p.nvec[2], 1) << name;
    }
  }
}

TEST(Dimer, RecoveryRejectsTheWrongPolygon) {
  const auto b = build("refl_4a");
  auto pms = perfect_matchings(b.dimers.at(0));
  assign_pm_vectors(b.dimers.at(0), pms);
  EXPECT_THROW(recovered_polygon(test::fixture("refl_4b"), pms), Error);
}

TEST(Dimer, TypeSequences) {
  const auto b = build("refl_3a");
  EXPECT_EQ(type_sequence(b.an.data, b.an.quivers.at(0)), (std::vector<Int>{1, 1, 1}));
  const auto c = build("conifold");
  try {
    type_sequence(c.an.data, c.an.quivers.at(0));
    ADD_FAILURE() << "expected NotReflexive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReflexive);
  }
}

TEST(Dimer, ReflexiveTable) {
  const auto& table = reflexive_polygons();
  ASSERT_EQ(table.size(), 16U);
  for (const auto& p : table) {
    const auto d = ToricData::from_points(std::span<const IVec2>(p.corners));
    EXPECT_EQ(interior_points(d), (std::vector<IVec2>{{0, 0}})) << p.label;
    EXPECT_EQ(type_label(self_intersections(p.corners)), p.label);
    // The boundary count is the number in the label.
    EXPECT_EQ(std::to_string(boundary_points(p.corners).size()), p.label.substr(0, 1));
  }
}
