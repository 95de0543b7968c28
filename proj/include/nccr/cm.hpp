#pragma once

// Cohen-Macaulay test for graded rank one reflexive modules T(b) over a three
// dimensional cone, and enumeration of all CM classes.
//
// T(b) is CM iff no lattice point m has a non-segment signature, where the
// signature is + at i iff <m,v_i> >= b_i. A signature fails to be a segment iff
// it alternates on some quadruple i1<i2<i3<i4, so it suffices to search the
// (bounded) alternating regions for lattice points.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <vector>

#include "nccr/lattice.hpp"

namespace nccr {

/// Signature of a lattice point: true means '+'.
using Signature = std::vector<bool>;

struct CmWitness {
  bool cm = true;
  IVec3 point{};        // offending lattice point when !cm
  Signature signature;  // its signature when !cm

  explicit operator bool() const { return cm; }
};

inline Signature signature_of(const ToricData& data, const BVector& b, const IVec3& m) {
  Signature s(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) s[i] = dot(m, data.ray(i)) >= b[i];
  return s;
}

/// The '+' positions form a cyclic arc (possibly empty or everything).
inline bool is_segment(const Signature& s) {
  std::size_t changes = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != s[(i + 1) % s.size()]) ++changes;
  return changes <= 2;
}

inline std::string to_string(const Signature& s) {
  std::string r;
  for (bool p : s) r += p ? '+' : '-';
  return r;
}

namespace detail {

/// <x, normal> >= bound
struct Halfspace {
  IVec3 normal;
  Int bound;
};

struct Region {
  std::array<Halfspace, 4> faces;
  IVec3 lo, hi;  // integer bounding box

  bool contains(const IVec3& x) const {
    return std::all_of(faces.begin(), faces.end(), [&](const Halfspace& h) { return dot(x, h.normal) >= h.bound; });
  }
};

/// Closed polytope {x : <x,v_i> >= b_i for '+', <x,v_i> <= b_i - 1 for '-'}.
/// Returns nullopt when empty. Any three normals are independent, so the
/// vertices are exactly the feasible triple intersections.
inline std::optional<Region> make_region(const std::array<Halfspace, 4>& faces) {
  bool any = false;
  IVec3 lo{}, hi{};
  for (int skip = 0; skip < 4; ++skip) {
    std::array<int, 3> idx{};
    for (int i = 0, n = 0; i < 4; ++i)
      if (i != skip) idx[n++] = i;
    const IMat3 m{faces[idx[0]].normal, faces[idx[1]].normal, faces[idx[2]].normal};
    Int d = det3(m);
    IVec3 num = mat_vec(adjugate(m), IVec3{faces[idx[0]].bound, faces[idx[1]].bound, faces[idx[2]].bound});
    if (d < 0) {
      d = -d;
      num = -num;
    }
    if (dot(num, faces[skip].normal) < checked_mul(faces[skip].bound, d)) continue;
    for (int j = 0; j < 3; ++j) {
      const Int f = floor_div(num[j], d);
      const Int c = ceil_div(num[j], d);
      if (!any || f < lo[j]) lo[j] = f;
      if (!any || c > hi[j]) hi[j] = c;
    }
    any = true;
  }
  if (!any) return std::nullopt;
  return Region{faces, lo, hi};
}

inline std::vector<Region> alternating_regions(const ToricData& data, const BVector& b) {
  std::vector<Region> out;
  const std::size_t k = data.size();
  auto face = [&](std::size_t i, bool plus) {
    return plus ? Halfspace{data.ray(i), b[i]} : Halfspace{-data.ray(i), 1 - b[i]};
  };
  for (std::size_t i1 = 0; i1 < k; ++i1)
    for (std::size_t i2 = i1 + 1; i2 < k; ++i2)
      for (std::size_t i3 = i2 + 1; i3 < k; ++i3)
        for (std::size_t i4 = i3 + 1; i4 < k; ++i4)
          for (bool first : {false, true}) {
            const std::array<Halfspace, 4> faces{face(i1, first), face(i2, !first), face(i3, first),
                                                 face(i4, !first)};
            if (auto r = make_region(faces)) out.push_back(*r);
          }
  return out;
}

/// Lexicographically least lattice point of a region.
inline std::optional<IVec3> first_lattice_point(const Region& r) {
  for (Int x = r.lo[0]; x <= r.hi[0]; ++x)
    for (Int y = r.lo[1]; y <= r.hi[1]; ++y)
      for (Int z = r.lo[2]; z <= r.hi[2]; ++z) {
        const IVec3 p{x, y, z};
        if (r.contains(p)) return p;
      }
  return std::nullopt;
}

inline CmWitness not_cm(const ToricData& data, const BVector& b, const IVec3& m) {
  return CmWitness{false, m, signature_of(data, b, m)};
}

}  // namespace detail

/// CM test through the alternating regions. The witness is the
/// lexicographically least lattice point with a non-segment signature.
inline CmWitness is_cm(const ToricData& data, const BVector& b) {
  std::optional<IVec3> best;
  for (const auto& r : detail::alternating_regions(data, b))
    if (auto p = detail::first_lattice_point(r))
      if (!best || *p < *best) best = p;
  if (!best) return {};
  return detail::not_cm(data, b, *best);
}

/// Independent check: scan every lattice point of a box containing all
/// bounded cells and test each signature directly.
inline CmWitness is_cm_by_cells(const ToricData& data, const BVector& b) {
  const auto regions = detail::alternating_regions(data, b);
  if (regions.empty()) return {};
  IVec3 lo = regions.front().lo, hi = regions.front().hi;
  for (const auto& r : regions)
    for (int j = 0; j < 3; ++j) {
      lo[j] = std::min(lo[j], r.lo[j]);
      hi[j] = std::max(hi[j], r.hi[j]);
    }
  for (Int x = lo[0]; x <= hi[0]; ++x)
    for (Int y = lo[1]; y <= hi[1]; ++y)
      for (Int z = lo[2]; z <= hi[2]; ++z) {
        const IVec3 m{x, y, z};
        Signature s = signature_of(data, b, m);
        if (!is_segment(s)) return CmWitness{false, m, std::move(s)};
      }
  return {};
}

struct Interval {
  Int lo;
  Int hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline BVector insert_entry(std::span<const Int> prefix, std::size_t pos, Int z) {
  BVector b;
  b.entries.assign(prefix.begin(), prefix.end());
  b.entries.insert(b.entries.begin() + static_cast<std::ptrdiff_t>(pos), z);
  return b;
}

/// The maximal interval of z such that inserting z at position pos of a CM
/// prefix (for the data without ray pos) gives a CM vector; nullopt if empty.
/// Non-CM probes jump using the witness; a reversal of direction proves the
/// interval empty.
inline std::optional<Interval> cm_interval(const ToricData& data, std::size_t pos, std::span<const Int> prefix, Int probe,
                                           long max_steps = 1'000'000) {
  if (data.size() < 4 || prefix.size() + 1 != data.size())
    throw Error(ErrorCode::InvalidInput, "cm_interval needs k > 3 and a (k-1)-vector");
  if (!is_cm(data.without(pos), BVector(std::vector<Int>(prefix.begin(), prefix.end()))))
    throw Error(ErrorCode::PrefixNotCM, "prefix is not CM for the reduced rays");
  const IVec3& ray = data.ray(pos);
  auto test = [&](Int z) { return is_cm(data, insert_entry(prefix, pos, z)); };

  Int z = probe;
  CmWitness w = test(z);
  int direction = 0;
  for (long steps = 0; !w; ++steps) {
    if (steps >= max_steps) throw Error(ErrorCode::JumpLimit, "interval search exceeded the jump cap");
    const Int value = dot(w.point, ray);
    // Flip the sign of the witness at pos.
    const Int next = value >= z ? value + 1 : value;
    const int dir = next > z ? 1 : -1;
    if (direction != 0 && dir != direction) return std::nullopt;
    direction = dir;
    z = next;
    w = test(z);
  }
  Interval iv{z, z};
  while (test(iv.hi + 1)) ++iv.hi;
  while (test(iv.lo - 1)) --iv.lo;
  return iv;
}

/// All normalized CM classes, sorted lexicographically. Starts from the
/// simplicial cone on the first three rays (where every reflexive is CM) and
/// adds one ray at a time.
inline std::vector<BVector> enumerate_cm(const ToricData& data, long max_steps = 1'000'000) {
  const ToricData base = data.prefix(3);
  const Int d = std::abs(data.triple_det(0, 1, 2));
  std::set<BVector> classes;
  for (Int r = 0; static_cast<Int>(classes.size()) < d; ++r) {
    if (r > d) throw Error(ErrorCode::InvalidInput, "base case scan did not terminate");
    for (Int x = -r; x <= r; ++x)
      for (Int y = -r; y <= r; ++y)
        for (Int z = -r; z <= r; ++z) classes.insert(base.normalized(BVector{x, y, z}));
  }
  for (std::size_t n = 4; n <= data.size(); ++n) {
    const ToricData level = data.prefix(n);
    std::set<BVector> next;
    for (const auto& c : classes) {
      const auto iv = cm_interval(level, n - 1, c.span(), 0, max_steps);
      if (!iv) continue;
      for (Int z = iv->lo; z <= iv->hi; ++z) next.insert(level.normalized(insert_entry(c.span(), n - 1, z)));
    }
    classes = std::move(next);
  }
  return {classes.begin(), classes.end()};
}

}  // namespace nccr
