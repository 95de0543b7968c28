#pragma once

// Embedded quiver of End(sum_{b in S} T(b)) in the 3-torus M (x) R / M.
//
// Arrows b -> c are irreducible monomials of Hom(T(b), T(c)) = T(c - b). A
// monomial with slack s (s_i = <m,v_i> - (c_i - b_i) >= 0) lands in the class
// normalize(b - s), and composition adds slacks, so an element of slack s is
// reducible iff some proper part s' of s already lands on a member of S.

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "nccr/modmax.hpp"

namespace nccr {

struct Arrow {
  std::size_t tail = 0;
  std::size_t head = 0;
  BVector slack;   // 0/1 vector, the extremal matching degrees
  IVec3 monomial;  // hom degree m in M
  QVec3 lift;      // displacement in the universal cover: kappa(head) - kappa(tail) - m

  int slack_weight() const {
    int w = 0;
    for (auto s : slack.entries) w += static_cast<int>(s);
    return w;
  }
};

struct EmbeddedQuiver {
  std::vector<BVector> vertices;  // sorted normalized classes
  std::vector<QVec3> points;      // kappa of each vertex, in [0,1)^3
  std::vector<Arrow> arrows;      // ordered by tail, then slack

  std::size_t index_of(const BVector& b) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), b);
    if (it == vertices.end() || *it != b) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(it - vertices.begin());
  }
  bool contains(const BVector& b) const { return index_of(b) != static_cast<std::size_t>(-1); }

  std::size_t zero_vertex() const {
    return index_of(BVector(std::vector<Int>(vertices.front().size(), 0)));
  }

  std::size_t out_degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.tail == v; }));
  }
  std::size_t in_degree(std::size_t v) const {
    return static_cast<std::size_t>(std::count_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.head == v; }));
  }

  ModifyingSet modifying_set() const { return ModifyingSet{vertices}; }
};

inline BVector slack_from_mask(unsigned mask, std::size_t k) {
  BVector s(std::vector<Int>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    if (mask >> i & 1U) s[i] = 1;
  return s;
}

inline bool strongly_connected(std::size_t n, const std::vector<Arrow>& arrows) {
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (const auto& a : arrows) {
        const auto from = forward ? a.tail : a.head;
        const auto to = forward ? a.head : a.tail;
        if (from == v && !seen[to]) {
          seen[to] = true;
          q.push(to);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
  };
  return n > 0 && reach(true) && reach(false);
}

/// Builds the embedded quiver of a maximal modifying set.
inline EmbeddedQuiver build_quiver(const ToricData& data, const ModifyingSet& set) {
  const std::size_t k = data.size();
  if (k >= 8 * sizeof(unsigned) - 1) throw Error(ErrorCode::InvalidInput, "too many rays");
  EmbeddedQuiver q;
  q.vertices = set.members;
  std::sort(q.vertices.begin(), q.vertices.end());
  for (const auto& b : q.vertices) q.points.push_back(data.kappa(b));

  const unsigned full = (1U << k) - 1;
  for (std::size_t t = 0; t < q.vertices.size(); ++t) {
    const BVector& b = q.vertices[t];
    // lands[mask] = index of normalize(b - mask) in S, or -1
    std::vector<std::size_t> lands(full + 1, static_cast<std::size_t>(-1));
    std::vector<IVec3> shift(full + 1);
    for (unsigned mask = 1; mask < full; ++mask) {
      const auto n = data.normalize(b - slack_from_mask(mask, k));
      lands[mask] = q.index_of(n.b);
      shift[mask] = n.shift;
    }
    std::vector<Arrow> out;
    for (unsigned mask = 1; mask < full; ++mask) {
      if (lands[mask] == static_cast<std::size_t>(-1)) continue;
      bool reducible = false;
      for (unsigned sub = (mask - 1) & mask; sub > 0 && !reducible; sub = (sub - 1) & mask)
        reducible = lands[sub] != static_cast<std::size_t>(-1);
      if (reducible) continue;
      Arrow a;
      a.tail = t;
      a.head = lands[mask];
      a.slack = slack_from_mask(mask, k);
      // head = b - s + phi^T(shift), so the monomial is the shift.
      a.monomial = shift[mask];
      a.lift = q.points[a.head] - q.points[t] - to_q(a.monomial);
      if (a.slack_weight() > static_cast<int>(k) - 2)
        throw Error(ErrorCode::SlackBoundViolated,
                    "arrow " + to_string(b) + " -> " + to_string(q.vertices[a.head]) + " has slack " + to_string(a.slack));
      out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const Arrow& x, const Arrow& y) { return x.slack < y.slack; });
    for (auto& a : out) q.arrows.push_back(std::move(a));
  }
  if (!strongly_connected(q.vertices.size(), q.arrows))
    throw Error(ErrorCode::Disconnected, "quiver is not strongly connected");
  return q;
}

/// Affine map x -> A x + t of M (x) R compatible with M; t is taken modulo M.
struct AffineMap {
  IMat3 a;
  QVec3 t;

  QVec3 apply_point(const QVec3& p) const { return frac(qmat_vec(a, p) + t); }
  QVec3 apply_vector(const QVec3& v) const { return qmat_vec(a, v); }
};

namespace detail {

using ArrowKey = std::pair<QVec3, QVec3>;  // (tail point, lift)

inline std::vector<ArrowKey> arrow_keys(const EmbeddedQuiver& q) {
  std::vector<ArrowKey> keys;
  for (const auto& a : q.arrows) keys.emplace_back(q.points[a.tail], a.lift);
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline std::vector<std::pair<QVec3, std::size_t>> lift_counts(const EmbeddedQuiver& q) {
  std::map<QVec3, std::size_t> m;
  for (const auto& a : q.arrows) ++m[a.lift];
  return {m.begin(), m.end()};
}

inline std::optional<IMat3> integral_unimodular(const QMat3& m) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!is_integer(m.rows[i][j])) return std::nullopt;
      r[i][j] = to_int(m.rows[i][j]);
    }
  const Int d = det3(r);
  if (d != 1 && d != -1) return std::nullopt;
  return r;
}

}  // namespace detail

/// Searches an affine map carrying Q onto Q' (vertices and arrows as
/// (tail point, lift) pairs). Orientation of arrows is preserved.
inline std::optional<AffineMap> affine_equivalent(const EmbeddedQuiver& q, const EmbeddedQuiver& r) {
  if (q.vertices.size() != r.vertices.size() || q.arrows.size() != r.arrows.size()) return std::nullopt;
  const auto lq = detail::lift_counts(q);
  const auto lr = detail::lift_counts(r);
  if (lq.size() != lr.size()) return std::nullopt;
  {
    std::vector<std::size_t> cq, cr;
    for (const auto& [v, c] : lq) cq.push_back(c);
    for (const auto& [v, c] : lr) cr.push_back(c);
    std::sort(cq.begin(), cq.end());
    std::sort(cr.begin(), cr.end());
    if (cq != cr) return std::nullopt;
  }
  // Basis triple of independent lifts in Q.
  std::optional<std::array<std::size_t, 3>> basis;
  for (std::size_t i = 0; i < lq.size() && !basis; ++i)
    for (std::size_t j = i + 1; j < lq.size() && !basis; ++j)
      for (std::size_t l = j + 1; l < lq.size() && !basis; ++l)
        if (qdet(columns(lq[i].first, lq[j].first, lq[l].first)) != 0) basis = std::array{i, j, l};
  if (!basis) throw Error(ErrorCode::DegenerateLifts, "arrow lifts do not span");
  const auto [bi, bj, bl] = *basis;
  const QMat3 dinv = qinverse(columns(lq[bi].first, lq[bj].first, lq[bl].first));

  std::map<QVec3, std::size_t> lr_map(lr.begin(), lr.end());
  std::vector<QVec3> target_points = r.points;
  std::sort(target_points.begin(), target_points.end());
  const auto target_arrows = detail::arrow_keys(r);

  for (std::size_t x = 0; x < lr.size(); ++x) {
    if (lr[x].second != lq[bi].second) continue;
    for (std::size_t y = 0; y < lr.size(); ++y) {
      if (y == x || lr[y].second != lq[bj].second) continue;
      for (std::size_t z = 0; z < lr.size(); ++z) {
        if (z == x || z == y || lr[z].second != lq[bl].second) continue;
        const auto a = detail::integral_unimodular(qmul(columns(lr[x].first, lr[y].first, lr[z].first), dinv));
        if (!a) continue;
        const bool lifts_ok = std::all_of(lq.begin(), lq.end(), [&](const auto& e) {
          auto it = lr_map.find(qmat_vec(*a, e.first));
          return it != lr_map.end() && it->second == e.second;
        });
        if (!lifts_ok) continue;
        for (const auto& target : target_points) {
          AffineMap map{*a, frac(target - qmat_vec(*a, q.points.front()))};
          std::vector<QVec3> pts;
          for (const auto& p : q.points) pts.push_back(map.apply_point(p));
          std::sort(pts.begin(), pts.end());
          if (pts != target_points) continue;
          std::vector<detail::ArrowKey> keys;
          for (const auto& arr : q.arrows) keys.emplace_back(map.apply_point(q.points[arr.tail]), map.apply_vector(arr.lift));
          std::sort(keys.begin(), keys.end());
          if (keys == target_arrows) return map;
        }
      }
    }
  }
  return std::nullopt;
}

/// Quiver of the dual modules T(-b): all arrows reversed (up to x -> -x).
inline EmbeddedQuiver opposite(const ToricData& data, const EmbeddedQuiver& q) {
  ModifyingSet dual;
  for (const auto& b : q.vertices) dual.members.push_back(data.normalized(-b));
  std::sort(dual.members.begin(), dual.members.end());
  EmbeddedQuiver r = build_quiver(data, dual);
  if (r.arrows.size() != q.arrows.size())
    throw Error(ErrorCode::InvalidInput, "opposite quiver has a different number of arrows");
  return r;
}

/// Partition of NCCR quivers into affine equivalence classes, raw and modulo
/// taking the opposite algebra.
struct NccrClasses {
  std::vector<std::size_t> raw_class_of;  // per input quiver
  std::vector<std::size_t> raw_reps;      // input index representing each raw class

  struct Merged {
    std::vector<std::size_t> raw_classes;
    std::size_t rep = 0;    // input index
    bool asterisk = false;  // not equivalent to its opposite
  };
  std::vector<Merged> classes;  // modulo opposite
  std::vector<std::size_t> merged_of_raw;
};

namespace detail {

/// Cheap invariant that any affine equivalence preserves.
inline std::vector<std::size_t> quiver_fingerprint(const EmbeddedQuiver& q) {
  std::vector<std::size_t> f{q.vertices.size(), q.arrows.size()};
  std::vector<std::size_t> degrees;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) degrees.push_back(q.out_degree(v) * 1000 + q.in_degree(v));
  std::sort(degrees.begin(), degrees.end());
  f.insert(f.end(), degrees.begin(), degrees.end());
  std::vector<std::size_t> counts;
  for (const auto& [v, c] : lift_counts(q)) counts.push_back(c);
  std::sort(counts.begin(), counts.end());
  f.push_back(counts.size());
  f.insert(f.end(), counts.begin(), counts.end());
  return f;
}

}  // namespace detail

inline NccrClasses dedup_nccrs(const ToricData& data, const std::vector<EmbeddedQuiver>& quivers) {
  NccrClasses out;
  std::vector<std::vector<std::size_t>> fingerprints;
  for (std::size_t i = 0; i < quivers.size(); ++i) {
    const auto fp = detail::quiver_fingerprint(quivers[i]);
    std::size_t cls = out.raw_reps.size();
    for (std::size_t c = 0; c < out.raw_reps.size(); ++c)
      if (fingerprints[c] == fp && affine_equivalent(quivers[out.raw_reps[c]], quivers[i])) {
        cls = c;
        break;
      }
    if (cls == out.raw_reps.size()) {
      out.raw_reps.push_back(i);
      fingerprints.push_back(fp);
    }
    out.raw_class_of.push_back(cls);
  }
  const std::size_t n = out.raw_reps.size();
  std::vector<std::size_t> partner(n, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < n; ++c) {
    const auto opp = opposite(data, quivers[out.raw_reps[c]]);
    const auto fp = detail::quiver_fingerprint(opp);
    for (std::size_t d = 0; d < n; ++d)
      if (fingerprints[d] == fp && affine_equivalent(quivers[out.raw_reps[d]], opp)) {
        partner[c] = d;
        break;
      }
  }
  out.merged_of_raw.assign(n, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < n; ++c) {
    if (out.merged_of_raw[c] != static_cast<std::size_t>(-1)) continue;
    NccrClasses::Merged m;
    m.raw_classes.push_back(c);
    m.rep = out.raw_reps[c];
    m.asterisk = partner[c] != c;
    if (partner[c] != static_cast<std::size_t>(-1) && partner[c] != c) m.raw_classes.push_back(partner[c]);
    for (auto r : m.raw_classes) out.merged_of_raw[r] = out.classes.size();
    out.classes.push_back(std::move(m));
  }
  return out;
}

}  // namespace nccr
