#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace nccr;

namespace {

const ToricData& conifold() {
  static const auto d = test::fixture("conifold");
  return d;
}

// Plus-set of a sign vector is a cyclic arc iff the sign changes at most twice around the cycle.
bool arc(const std::vector<bool>& s) {
  int changes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) changes += s[i] != s[(i + 1) % s.size()];
  return changes <= 2;
}

std::vector<bool> signs(const ToricData& d, const BVector& b, const IVec3& m) {
  std::vector<bool> s;
  for (std::size_t i = 0; i < d.size(); ++i) s.push_back(m[0] * d.ray(i)[0] + m[1] * d.ray(i)[1] + m[2] * d.ray(i)[2] >= b[i]);
  return s;
}

// Direct scan of a fixed box for a lattice point with a non-arc signature.
std::optional<IVec3> brute_witness(const ToricData& d, const BVector& b, Int r) {
  for (Int x = -r; x <= r; ++x)
    for (Int y = -r; y <= r; ++y)
      for (Int z = -r; z <= r; ++z)
        if (!arc(signs(d, b, {x, y, z}))) return IVec3{x, y, z};
  return std::nullopt;
}

}  // namespace

TEST(Cm, ConifoldExamples) {
  EXPECT_TRUE(is_cm(conifold(), {0, 0, 0, 0}).cm);
  EXPECT_TRUE(is_cm(conifold(), {0, 1, 1, 1}).cm);
  EXPECT_TRUE(is_cm(conifold(), {1, 1, 2, 1}).cm);
  const auto w = is_cm(conifold(), {0, 1, 0, 1});
  ASSERT_FALSE(w.cm);
  EXPECT_EQ(w.point, (IVec3{0, 0, 0}));
  EXPECT_EQ(to_string(w.signature), "+-+-");
  const auto v = is_cm_by_cells(conifold(), {0, 1, 0, 1});
  EXPECT_FALSE(v.cm);
  EXPECT_EQ(v.point, w.point);
}

TEST(Cm, ConifoldClasses) {
  const std::vector<BVector> expected = {{0, 0, 0, 0}, {0, 1, 1, 1}, {1, 1, 2, 1}};
  EXPECT_EQ(enumerate_cm(conifold()), expected);
}

TEST(Cm, SimplicialClassCountIsDeterminant) {
  for (const auto& name : {"c3", "simplicial_2", "simplicial_3", "refl_3a", "refl_4c", "refl_6d", "refl_8c", "refl_9a"}) {
    const auto d = test::fixture(name);
    ASSERT_EQ(d.size(), 3U);
    const IMat3 m = {d.ray(0), d.ray(1), d.ray(2)};
    EXPECT_EQ(static_cast<Int>(enumerate_cm(d).size()), std::abs(det3(m))) << name;
  }
}

TEST(Cm, ConifoldInterval) {
  const std::vector<Int> zero = {0, 0, 0};
  EXPECT_EQ(cm_interval(conifold(), 3, zero, 0), (Interval{-1, 1}));
  const std::vector<Int> p = {0, 1, 0};
  EXPECT_EQ(cm_interval(conifold(), 3, p, 17), cm_interval(conifold(), 3, p, -17));
  for (Int z = -5; z <= 5; ++z) EXPECT_EQ(is_cm(conifold(), {0, 0, 0, z}).cm, z >= -1 && z <= 1) << z;
}

TEST(Cm, NonCmPrefixIsRejected) {
  const auto d = test::fixture("refl_5a");
  const auto reduced = d.without(4);
  std::optional<std::vector<Int>> bad;
  for (Int x = 0; x <= 2 && !bad; ++x)
    for (Int y = 0; y <= 2 && !bad; ++y)
      if (!is_cm(reduced, {0, x, 0, y}).cm) bad = std::vector<Int>{0, x, 0, y};
  ASSERT_TRUE(bad.has_value());
  try {
    cm_interval(d, 4, *bad, 0);
    ADD_FAILURE() << "expected PrefixNotCM";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrefixNotCM);
  }
}

TEST(Cm, AgreesWithDirectScan) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> dist(-3, 3);
  for (const auto& name : test::all_fixtures()) {
    const auto d = test::fixture(name);
    for (int n = 0; n < 150; ++n) {
      BVector b(std::vector<Int>(d.size(), 0));
      for (auto& x : b.entries) x = dist(rng);
      const auto w = is_cm(d, b);
      const auto brute = brute_witness(d, b, 7);
      if (w.cm) {
        EXPECT_FALSE(brute.has_value()) << name << " " << to_string(b);
      } else {
        EXPECT_FALSE(arc(signs(d, b, w.point))) << name << " " << to_string(b);
        if (std::abs(w.point[0]) <= 7 && std::abs(w.point[1]) <= 7 && std::abs(w.point[2]) <= 7) {
          EXPECT_TRUE(brute.has_value()) << name << " " << to_string(b);
        }
      }
    }
  }
}

TEST(Cm, EnumerationMatchesScanOfSmallVectors) {
  // Every vector with entries in [-2,2] is CM iff its normalized class is listed.
  for (const auto& name : {"conifold", "refl_4a", "refl_5a", "para_1_0_0_2"}) {
    const auto d = test::fixture(name);
    const auto cm = enumerate_cm(d);
    const std::size_t k = d.size();
    std::vector<Int> b(k, -2);
    for (;;) {
      const BVector v(b);
      const bool listed = std::binary_search(cm.begin(), cm.end(), d.normalized(v));
      EXPECT_EQ(!brute_witness(d, v, 7).has_value(), listed) << name << " " << to_string(v);
      std::size_t i = 0;
      while (i < k && b[i] == 2) b[i++] = -2;
      if (i == k) break;
      ++b[i];
    }
  }
}
