#pragma once

// Lattice data of a three dimensional Gorenstein cone: the rays v_i (corners of
// a lattice polygon at height one), the pairing maps phi and phi^T, the
// embedding kappa of reflexive modules into M (x) Q and class normalization.

#include <algorithm>
#include <compare>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nccr/arith.hpp"

namespace nccr {

/// Integer k-vector b describing the reflexive module T(b) = span{m : <m,v_i> >= b_i}.
struct BVector {
  std::vector<Int> entries;

  BVector() = default;
  explicit BVector(std::vector<Int> e) : entries(std::move(e)) {}
  BVector(std::initializer_list<Int> e) : entries(e) {}

  std::size_t size() const { return entries.size(); }
  Int operator[](std::size_t i) const { return entries[i]; }
  Int& operator[](std::size_t i) { return entries[i]; }
  std::span<const Int> span() const { return entries; }

  bool is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](Int x) { return x == 0; });
  }

  friend auto operator<=>(const BVector&, const BVector&) = default;
  friend bool operator==(const BVector&, const BVector&) = default;
};

inline BVector operator+(const BVector& a, const BVector& b) {
  BVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], b[i]);
  return r;
}

inline BVector operator-(const BVector& a, const BVector& b) {
  BVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], -b[i]);
  return r;
}

inline BVector operator-(const BVector& a) {
  BVector r = a;
  for (auto& x : r.entries) x = -x;
  return r;
}

inline std::string to_string(const BVector& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(b[i]);
  }
  return s + ")";
}

struct Normalized {
  BVector b;
  IVec3 shift;  // b = input + phi_t(shift)
};

/// Validated rays of a Gorenstein cone together with the Gram matrix
/// G = sum_i v_i v_i^T used by kappa. Immutable after construction.
class ToricData {
 public:
  /// Lifts the points to height one and orders them counterclockwise starting
  /// from the lexicographically least point. Every point must be a strict
  /// corner of the convex hull.
  static ToricData from_points(std::span<const IVec2> points) {
    if (points.size() < 3) throw Error(ErrorCode::NonConvex, "need at least three points");
    std::vector<IVec2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      throw Error(ErrorCode::Duplicate, "duplicate point");
    const IVec2 origin = pts.front();
    auto orient = [](const IVec2& o, const IVec2& a, const IVec2& b) {
      return checked_mul(a[0] - o[0], b[1] - o[1]) - checked_mul(a[1] - o[1], b[0] - o[0]);
    };
    // All other points lie in a half plane around the lexicographic minimum.
    std::sort(pts.begin() + 1, pts.end(), [&](const IVec2& a, const IVec2& b) {
      const Int o = orient(origin, a, b);
      if (o != 0) return o > 0;
      return a < b;
    });
    const std::size_t k = pts.size();
    for (std::size_t i = 0; i < k; ++i) {
      const IVec2& a = pts[i];
      const IVec2& b = pts[(i + 1) % k];
      const IVec2& c = pts[(i + 2) % k];
      if (orient(a, b, c) <= 0)
        throw Error(ErrorCode::NonConvex, "point (" + std::to_string(b[0]) + "," + std::to_string(b[1]) +
                                              ") is not a strict corner of the convex hull");
    }
    std::vector<IVec3> rays;
    rays.reserve(k);
    for (const auto& p : pts) rays.push_back({p[0], p[1], 1});
    return ToricData(std::move(rays));
  }

  static ToricData from_points(std::initializer_list<IVec2> points) {
    std::vector<IVec2> v(points);
    return from_points(std::span<const IVec2>(v));
  }

  std::size_t size() const { return rays_.size(); }
  const std::vector<IVec3>& rays() const { return rays_; }
  const IVec3& ray(std::size_t i) const { return rays_[i]; }
  const IMat3& gram() const { return gram_; }
  Int gram_det() const { return gram_det_; }

  std::vector<IVec2> points() const {
    std::vector<IVec2> p;
    for (const auto& r : rays_) p.push_back({r[0], r[1]});
    return p;
  }

  /// phi^T(m) = (<m,v_1>, ..., <m,v_k>).
  BVector phi_t(const IVec3& m) const {
    BVector b;
    b.entries.reserve(size());
    for (const auto& v : rays_) b.entries.push_back(dot(m, v));
    return b;
  }

  /// phi(b) = sum_i b_i v_i.
  IVec3 phi(std::span<const Int> b) const {
    IVec3 r{0, 0, 0};
    for (std::size_t i = 0; i < size(); ++i)
      for (int j = 0; j < 3; ++j) r[j] = checked_add(r[j], checked_mul(b[i], rays_[i][j]));
    return r;
  }
  IVec3 phi(const BVector& b) const { return phi(b.span()); }

  /// gram_det * kappa(b), an integer vector.
  IVec3 kappa_numerator(const BVector& b) const { return mat_vec(gram_adj_, phi(b)); }

  /// kappa(b) = G^{-1} phi(b).
  QVec3 kappa(const BVector& b) const {
    const IVec3 n = kappa_numerator(b);
    return {rat(n[0], gram_det_), rat(n[1], gram_det_), rat(n[2], gram_det_)};
  }

  /// The unique representative b + phi^T(m) of the class of b with kappa in [0,1)^3.
  Normalized normalize(const BVector& b) const {
    const IVec3 n = kappa_numerator(b);
    IVec3 m;
    for (int j = 0; j < 3; ++j) m[j] = -floor_div(n[j], gram_det_);
    return {b + phi_t(m), m};
  }

  BVector normalized(const BVector& b) const { return normalize(b).b; }

  /// Data with ray i removed (k > 3).
  ToricData without(std::size_t i) const {
    std::vector<IVec3> r = rays_;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
    return ToricData(std::move(r));
  }

  /// Data on the first n rays in canonical order (n >= 3).
  ToricData prefix(std::size_t n) const {
    return ToricData(std::vector<IVec3>(rays_.begin(), rays_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Index of the quotient group for the simplicial cone on rays i, j, l.
  Int triple_det(std::size_t i, std::size_t j, std::size_t l) const {
    return det3({rays_[i], rays_[j], rays_[l]});
  }

  friend bool operator==(const ToricData& a, const ToricData& b) { return a.rays_ == b.rays_; }

 private:
  explicit ToricData(std::vector<IVec3> rays) : rays_(std::move(rays)) {
    for (const auto& v : rays_)
      if (gcd3(v) != 1) throw Error(ErrorCode::NonPrimitive, "ray is not primitive");
    gram_ = IMat3{};
    for (const auto& v : rays_)
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) gram_[a][c] = checked_add(gram_[a][c], checked_mul(v[a], v[c]));
    gram_det_ = det3(gram_);
    if (gram_det_ <= 0) throw Error(ErrorCode::NonConvex, "rays do not span a three dimensional cone");
    gram_adj_ = adjugate(gram_);
  }

  std::vector<IVec3> rays_;
  IMat3 gram_{};
  IMat3 gram_adj_{};
  Int gram_det_ = 0;
};

/// Cone generated by U v_i. U must keep the Gorenstein height (third row (0,0,1)).
/// The quotient group M / MU has order |det U|.
inline ToricData quotient_cone(const IMat3& u, const ToricData& data) {
  if (det3(u) == 0) throw Error(ErrorCode::InvalidInput, "singular matrix");
  if (u[2] != IVec3{0, 0, 1}) throw Error(ErrorCode::HeightNotPreserved, "third row must be (0,0,1)");
  std::vector<IVec2> pts;
  for (const auto& v : data.rays()) {
    const IVec3 w = mat_vec(u, v);
    if (gcd3(w) != 1) throw Error(ErrorCode::NonPrimitiveImage, "image of a ray is not primitive");
    pts.push_back({w[0], w[1]});
  }
  return ToricData::from_points(std::span<const IVec2>(pts));
}

inline Int quotient_index(const IMat3& u) { return std::abs(det3(u)); }

}  // namespace nccr
