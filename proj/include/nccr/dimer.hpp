#pragma once

// Dimer models from embedded quivers: project to the 2-torus, trace faces,
// check the dimer axioms, and compute R-charges, perfect matchings, the
// polygon they recover and the type sequence of reflexive cases.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nccr/quiver.hpp"

namespace nccr {

using QVec2 = std::array<Rational, 2>;

struct RCharge {
  std::vector<Rational> values;  // per arrow
  IVec3 x;
};

struct DimerModel {
  EmbeddedQuiver quiver;
  std::vector<std::vector<std::size_t>> faces_pos;  // arrow cycles, counterclockwise on the torus
  std::vector<std::vector<std::size_t>> faces_neg;  // arrow cycles, clockwise on the torus
  std::optional<RCharge> rcharge;

  std::size_t face_count() const { return faces_pos.size() + faces_neg.size(); }
};

namespace detail {

inline QVec2 project(const QVec3& p) { return {p[0], p[1]}; }

inline int half_plane(const QVec2& d) { return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1; }

inline Rational cross2(const QVec2& a, const QVec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Strict counterclockwise angular order starting at the positive x axis.
inline bool angle_less(const QVec2& a, const QVec2& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

/// Half-edge id: 2*arrow for the end at the tail, 2*arrow+1 for the end at the head.
inline std::size_t dart_vertex(const EmbeddedQuiver& q, std::size_t dart) {
  const Arrow& a = q.arrows[dart / 2];
  return dart % 2 == 0 ? a.tail : a.head;
}

inline QVec2 dart_direction(const EmbeddedQuiver& q, std::size_t dart) {
  const QVec3& l = q.arrows[dart / 2].lift;
  if (dart % 2 == 0) return {l[0], l[1]};
  return {-l[0], -l[1]};
}

/// Rotation system of the chosen arrows: darts at each vertex in
/// counterclockwise order.
inline std::vector<std::vector<std::size_t>> rotation_system(const EmbeddedQuiver& q,
                                                             const std::vector<std::size_t>& arrows) {
  std::vector<std::vector<std::size_t>> rot(q.vertices.size());
  for (auto a : arrows) {
    rot[q.arrows[a].tail].push_back(2 * a);
    rot[q.arrows[a].head].push_back(2 * a + 1);
  }
  for (auto& darts : rot) {
    for (auto d : darts) {
      const auto dir = dart_direction(q, d);
      if (dir[0] == 0 && dir[1] == 0)
        throw Error(ErrorCode::OverlappingSegments, "arrow " + std::to_string(d / 2) + " projects to a point");
    }
    std::sort(darts.begin(), darts.end(), [&](std::size_t x, std::size_t y) {
      return angle_less(dart_direction(q, x), dart_direction(q, y));
    });
    for (std::size_t i = 0; i + 1 < darts.size(); ++i) {
      const auto u = dart_direction(q, darts[i]), w = dart_direction(q, darts[i + 1]);
      if (!angle_less(u, w))
        throw Error(ErrorCode::OverlappingSegments,
                    "arrows " + std::to_string(darts[i] / 2) + " and " + std::to_string(darts[i + 1] / 2) +
                        " leave a vertex in the same direction");
    }
  }
  return rot;
}

/// Faces of the embedded graph on the chosen arrows, as dart cycles with the
/// face on the left.
inline std::vector<std::vector<std::size_t>> trace_faces(const EmbeddedQuiver& q, const std::vector<std::size_t>& arrows) {
  const auto rot = rotation_system(q, arrows);
  std::map<std::size_t, std::size_t> position;
  for (const auto& darts : rot)
    for (std::size_t i = 0; i < darts.size(); ++i) position[darts[i]] = i;
  auto next = [&](std::size_t d) {
    const std::size_t r = d ^ 1U;
    const auto& around = rot[dart_vertex(q, r)];
    const std::size_t i = position.at(r);
    return around[(i + around.size() - 1) % around.size()];
  };
  std::set<std::size_t> used;
  std::vector<std::vector<std::size_t>> faces;
  for (const auto& darts : rot)
    for (auto start : darts) {
      if (used.count(start)) continue;
      std::vector<std::size_t> face;
      for (std::size_t d = start; !used.count(d); d = next(d)) {
        used.insert(d);
        face.push_back(d);
      }
      faces.push_back(std::move(face));
    }
  return faces;
}

struct Segment {
  QVec2 from, to;
};

inline bool on_segment_interior(const QVec2& p, const Segment& s) {
  const QVec2 d{s.to[0] - s.from[0], s.to[1] - s.from[1]};
  const QVec2 e{p[0] - s.from[0], p[1] - s.from[1]};
  if (cross2(d, e) != 0) return false;
  const Rational t = d[0] * e[0] + d[1] * e[1];
  return t > 0 && t < d[0] * d[0] + d[1] * d[1];
}

/// Throws unless the segments meet at most in a common endpoint.
inline void check_pair(const Segment& s, const Segment& t, std::size_t a, std::size_t b) {
  const QVec2 d{s.to[0] - s.from[0], s.to[1] - s.from[1]};
  const QVec2 e{t.to[0] - t.from[0], t.to[1] - t.from[1]};
  const std::string names = "arrows " + std::to_string(a) + " and " + std::to_string(b);
  const Rational denom = cross2(d, e);
  const QVec2 w{t.from[0] - s.from[0], t.from[1] - s.from[1]};
  if (denom == 0) {
    if (cross2(d, w) != 0) return;  // parallel, distinct lines
    // Collinear: project onto d and compare parameter ranges.
    const Rational dd = d[0] * d[0] + d[1] * d[1];
    Rational t0 = (w[0] * d[0] + w[1] * d[1]) / dd;
    Rational t1 = t0 + (e[0] * d[0] + e[1] * d[1]) / dd;
    if (t1 < t0) std::swap(t0, t1);
    const Rational lo = std::max(t0, Rational(0));
    const Rational hi = std::min(t1, Rational(1));
    if (lo < hi) throw Error(ErrorCode::OverlappingSegments, names + " overlap");
    return;
  }
  const Rational u = cross2(w, e) / denom;  // parameter on s
  const Rational v = cross2(w, d) / denom;  // parameter on t
  if (u < 0 || u > 1 || v < 0 || v > 1) return;
  const bool s_end = u == 0 || u == 1;
  const bool t_end = v == 0 || v == 1;
  if (s_end && t_end) return;
  throw Error(ErrorCode::SegmentCrossing, names + " cross");
}

/// Projected arrows meet only at shared endpoints, also across translates.
inline void check_embedding(const EmbeddedQuiver& q) {
  std::vector<Segment> segs;
  for (const auto& a : q.arrows) {
    const QVec2 p = project(q.points[a.tail]);
    segs.push_back({p, {p[0] + a.lift[0], p[1] + a.lift[1]}});
  }
  auto lo = [](const Segment& s, int j) { return std::min(s.from[j], s.to[j]); };
  auto hi = [](const Segment& s, int j) { return std::max(s.from[j], s.to[j]); };
  for (std::size_t a = 0; a < segs.size(); ++a)
    for (std::size_t b = a; b < segs.size(); ++b) {
      std::array<Int, 2> tmin{}, tmax{};
      for (int j = 0; j < 2; ++j) {
        tmin[j] = to_int(floor(lo(segs[a], j) - hi(segs[b], j)));
        tmax[j] = to_int(-floor(lo(segs[b], j) - hi(segs[a], j)));
      }
      for (Int tx = tmin[0]; tx <= tmax[0]; ++tx)
        for (Int ty = tmin[1]; ty <= tmax[1]; ++ty) {
          if (a == b && tx == 0 && ty == 0) continue;
          Segment moved = segs[b];
          for (auto* p : {&moved.from, &moved.to}) {
            (*p)[0] += rat(tx);
            (*p)[1] += rat(ty);
          }
          check_pair(segs[a], moved, a, b);
        }
    }
  // Vertices off the interiors of all segments (including isolated translates).
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    const QVec2 p = project(q.points[v]);
    for (std::size_t a = 0; a < segs.size(); ++a)
      for (Int tx = -3; tx <= 3; ++tx)
        for (Int ty = -3; ty <= 3; ++ty)
          if (on_segment_interior({p[0] + rat(tx), p[1] + rat(ty)}, segs[a]))
            throw Error(ErrorCode::SegmentCrossing,
                        "arrow " + std::to_string(a) + " passes through vertex " + std::to_string(v));
  }
}

}  // namespace detail

/// Checks the dimer axioms on face data and throws on the first failure.
inline void validate_dimer(const DimerModel& d) {
  const auto& q = d.quiver;
  const std::size_t n = q.arrows.size();
  std::vector<int> in_pos(n, 0), in_neg(n, 0);
  auto check_cycle = [&](const std::vector<std::size_t>& f) {
    if (f.size() < 3) throw Error(ErrorCode::FaceTooShort, "face of length " + std::to_string(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
      if (q.arrows[f[i]].head != q.arrows[f[(i + 1) % f.size()]].tail)
        throw Error(ErrorCode::OrientabilityFailure, "face is not a directed cycle");
  };
  for (const auto& f : d.faces_pos) {
    check_cycle(f);
    for (auto a : f) ++in_pos[a];
  }
  for (const auto& f : d.faces_neg) {
    check_cycle(f);
    for (auto a : f) ++in_neg[a];
  }
  for (std::size_t a = 0; a < n; ++a)
    if (in_pos[a] != 1 || in_neg[a] != 1)
      throw Error(ErrorCode::OrientabilityFailure, "arrow " + std::to_string(a) + " is not in exactly one face of each sign");
  // DM: at each vertex, faces join consecutive arrows h(a) = v = t(b); the
  // arrows at v must form one component.
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    std::vector<std::size_t> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    // Node 2a: a arriving at v; node 2a+1: a leaving v (a loop has both).
    for (const auto* faces : {&d.faces_pos, &d.faces_neg})
      for (const auto& f : *faces)
        for (std::size_t i = 0; i < f.size(); ++i) {
          const auto a = f[i], b = f[(i + 1) % f.size()];
          if (q.arrows[a].head == v) parent[find(2 * a)] = find(2 * b + 1);
        }
    std::set<std::size_t> roots;
    for (std::size_t a = 0; a < n; ++a) {
      if (q.arrows[a].head == v) roots.insert(find(2 * a));
      if (q.arrows[a].tail == v) roots.insert(find(2 * a + 1));
    }
    if (roots.size() != 1) throw Error(ErrorCode::ManifoldFailure, "vertex " + std::to_string(v) + " is not a disc");
  }
  const auto euler = static_cast<long>(q.vertices.size()) - static_cast<long>(n) + static_cast<long>(d.face_count());
  if (euler != 0) throw Error(ErrorCode::ManifoldFailure, "Euler characteristic " + std::to_string(euler));
}

/// Projects the quiver to the 2-torus and reads off the face cycles.
inline DimerModel extract_dimer(const EmbeddedQuiver& q) {
  {
    std::set<QVec2> seen;
    for (const auto& p : q.points)
      if (!seen.insert(detail::project(p)).second)
        throw Error(ErrorCode::ManifoldFailure, "two vertices project to the same torus point");
  }
  detail::check_embedding(q);
  std::vector<std::size_t> all(q.arrows.size());
  std::iota(all.begin(), all.end(), 0);
  DimerModel d;
  d.quiver = q;
  for (const auto& darts : detail::trace_faces(q, all)) {
    const bool forward = darts.front() % 2 == 0;
    std::vector<std::size_t> cycle;
    for (auto x : darts) {
      if ((x % 2 == 0) != forward) throw Error(ErrorCode::OrientabilityFailure, "face boundary is not oriented");
      cycle.push_back(x / 2);
    }
    if (forward) {
      d.faces_pos.push_back(std::move(cycle));
    } else {
      std::reverse(cycle.begin(), cycle.end());
      d.faces_neg.push_back(std::move(cycle));
    }
  }
  // Canonical rotation: each face starts at its least arrow index.
  for (auto* faces : {&d.faces_pos, &d.faces_neg}) {
    for (auto& f : *faces) std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
    std::sort(faces->begin(), faces->end());
  }
  validate_dimer(d);
  return d;
}

/// Sum of slack vectors around a face.
inline BVector face_slack(const DimerModel& d, const std::vector<std::size_t>& face) {
  BVector s(std::vector<Int>(d.quiver.arrows.front().slack.size(), 0));
  for (auto a : face) s = s + d.quiver.arrows[a].slack;
  return s;
}

// ---- combinatorial isomorphism -----------------------------------------

/// Successor of each arrow in its face of the given sign.
inline std::vector<std::size_t> face_successor(const std::vector<std::vector<std::size_t>>& faces, std::size_t n) {
  std::vector<std::size_t> next(n, static_cast<std::size_t>(-1));
  for (const auto& f : faces)
    for (std::size_t i = 0; i < f.size(); ++i) next[f[i]] = f[(i + 1) % f.size()];
  return next;
}

/// All arrows reversed; face cycles reverse and change sign.
inline DimerModel opposite_dimer(const DimerModel& d) {
  DimerModel r;
  r.quiver = d.quiver;
  for (auto& a : r.quiver.arrows) {
    std::swap(a.tail, a.head);
    a.lift = -a.lift;
  }
  for (auto f : d.faces_neg) {
    std::reverse(f.begin(), f.end());
    r.faces_pos.push_back(std::move(f));
  }
  for (auto f : d.faces_pos) {
    std::reverse(f.begin(), f.end());
    r.faces_neg.push_back(std::move(f));
  }
  return r;
}

/// Arrow bijection carrying d onto e (heads, tails and face cycles), with
/// faces keeping their sign, or swapping all signs when mirror is set. A map
/// is fixed by the image of arrow 0, so every candidate image is propagated
/// along the faces. If a vertex map is given it must be respected.
inline std::optional<std::vector<std::size_t>> dimer_isomorphism(const DimerModel& d, const DimerModel& e, bool mirror,
                                                                 const std::vector<std::size_t>* vertex_map = nullptr) {
  const std::size_t n = d.quiver.arrows.size();
  const std::size_t nv = d.quiver.vertices.size();
  if (n != e.quiver.arrows.size() || nv != e.quiver.vertices.size() || d.face_count() != e.face_count()) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  const auto dp = face_successor(d.faces_pos, n), dn = face_successor(d.faces_neg, n);
  const auto ep = face_successor(mirror ? e.faces_neg : e.faces_pos, n);
  const auto en = face_successor(mirror ? e.faces_pos : e.faces_neg, n);
  constexpr auto none = static_cast<std::size_t>(-1);
  for (std::size_t seed = 0; seed < n; ++seed) {
    std::vector<std::size_t> amap(n, none), used(n, none), vmap(nv, none), vused(nv, none);
    auto assign_vertex = [&](std::size_t v, std::size_t w) {
      if (vertex_map && (*vertex_map)[v] != w) return false;
      if (vmap[v] == none && vused[w] == none) {
        vmap[v] = w;
        vused[w] = v;
        return true;
      }
      return vmap[v] == w;
    };
    auto assign = [&](std::size_t a, std::size_t b) {
      if (amap[a] == none && used[b] == none) {
        if (!assign_vertex(d.quiver.arrows[a].tail, e.quiver.arrows[b].tail) ||
            !assign_vertex(d.quiver.arrows[a].head, e.quiver.arrows[b].head))
          return false;
        amap[a] = b;
        used[b] = a;
        return true;
      }
      return amap[a] == b;
    };
    bool ok = assign(0, seed);
    std::vector<std::size_t> stack{0};
    while (ok && !stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (auto [from, to] : {std::pair{&dp, &ep}, std::pair{&dn, &en}}) {
        const auto next = (*from)[a];
        const bool fresh = amap[next] == none;
        if (!assign(next, (*to)[amap[a]])) {
          ok = false;
          break;
        }
        if (fresh) stack.push_back(next);
      }
    }
    if (ok && std::find(amap.begin(), amap.end(), none) == amap.end()) return amap;
  }
  return std::nullopt;
}

// ---- R-charges ---------------------------------------------------------

inline QVec3 arrow_vector(const ToricData& data, const Arrow& a) { return data.kappa(a.slack); }

inline bool interior_covector(const ToricData& data, const IVec3& x) {
  return std::all_of(data.rays().begin(), data.rays().end(), [&](const IVec3& v) { return dot(x, v) > 0; });
}

/// R_a = 2 <x, kappa(slack)> / <x, (0,0,1)> with the standard pairing.
inline std::vector<Rational> rcharge_values(const ToricData& data, const DimerModel& d, const IVec3& x) {
  std::vector<Rational> r;
  for (const auto& a : d.quiver.arrows) r.push_back(2 * qdot(x, arrow_vector(data, a)) / rat(x[2]));
  return r;
}

/// R1 (faces) and R2 (vertices) for given values.
inline bool rcharge_identities_hold(const DimerModel& d, const std::vector<Rational>& r) {
  for (const auto* faces : {&d.faces_pos, &d.faces_neg})
    for (const auto& f : *faces) {
      Rational s = 0;
      for (auto a : f) s += r[a];
      if (s != 2) return false;
    }
  for (std::size_t v = 0; v < d.quiver.vertices.size(); ++v) {
    Rational s = 0;
    for (std::size_t a = 0; a < d.quiver.arrows.size(); ++a) {
      if (d.quiver.arrows[a].head == v) s += 1 - r[a];
      if (d.quiver.arrows[a].tail == v) s += 1 - r[a];
    }
    if (s != 2) return false;
  }
  return true;
}

namespace detail {

/// An integral x with <x,n> > 0 for all n, or nullopt. The cone {x : <x,n> >= 0}
/// is pointed here, so the sum of its extreme rays is interior whenever the
/// strict system is feasible.
inline std::optional<IVec3> strictly_positive_point(const std::vector<IVec3>& normals) {
  std::set<IVec3> rays;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      IVec3 c = cross(normals[i], normals[j]);
      const Int g = gcd3(c);
      if (g == 0) continue;
      for (int s = 0; s < 3; ++s) c[s] /= g;
      for (const IVec3& cand : {c, -c})
        if (std::all_of(normals.begin(), normals.end(), [&](const IVec3& n) { return dot(cand, n) >= 0; }))
          rays.insert(cand);
    }
  IVec3 x{0, 0, 0};
  for (const auto& r : rays) x = x + r;
  if (!std::all_of(normals.begin(), normals.end(), [&](const IVec3& n) { return dot(x, n) > 0; })) return std::nullopt;
  const Int g = gcd3(x);
  for (int s = 0; s < 3; ++s) x[s] /= g;
  return x;
}

}  // namespace detail

/// Consistent R-charge for the covector x, or found automatically when x is
/// absent. All values must lie in (0,2).
inline RCharge find_rcharge(const ToricData& data, const DimerModel& d, std::optional<IVec3> x = std::nullopt) {
  if (x) {
    if (!interior_covector(data, *x)) throw Error(ErrorCode::NotInterior, "covector is not interior to the dual cone");
  } else {
    std::vector<IVec3> normals = data.rays();
    for (const auto& a : d.quiver.arrows) normals.push_back(data.kappa_numerator(a.slack));
    x = detail::strictly_positive_point(normals);
    if (!x) throw Error(ErrorCode::Infeasible, "no covector gives every arrow a positive charge");
  }
  RCharge rc{rcharge_values(data, d, *x), *x};
  std::string bad;
  for (std::size_t a = 0; a < rc.values.size(); ++a)
    if (rc.values[a] <= 0 || rc.values[a] >= 2) bad += (bad.empty() ? "" : ",") + std::to_string(a);
  if (!bad.empty()) throw Error(ErrorCode::Infeasible, "non-positive charge on arrows " + bad);
  if (!rcharge_identities_hold(d, rc.values)) throw Error(ErrorCode::Infeasible, "charge violates the face or vertex sums");
  return rc;
}

// ---- perfect matchings -------------------------------------------------

struct PerfectMatching {
  std::vector<std::size_t> arrows;  // sorted
  IVec3 nvec{};
};

/// Every arrow set meeting each face exactly once, in lexicographic order.
inline std::vector<PerfectMatching> perfect_matchings(const DimerModel& d) {
  const std::size_t n = d.quiver.arrows.size();
  if (d.faces_pos.size() != d.faces_neg.size()) return {};
  std::vector<std::size_t> neg_face(n);
  for (std::size_t f = 0; f < d.faces_neg.size(); ++f)
    for (auto a : d.faces_neg[f]) neg_face[a] = f;
  std::vector<PerfectMatching> out;
  std::vector<bool> used(d.faces_neg.size(), false);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t f) -> void {
    if (f == d.faces_pos.size()) {
      PerfectMatching p;
      p.arrows = chosen;
      std::sort(p.arrows.begin(), p.arrows.end());
      out.push_back(std::move(p));
      return;
    }
    for (auto a : d.faces_pos[f]) {
      if (used[neg_face[a]]) continue;
      used[neg_face[a]] = true;
      chosen.push_back(a);
      self(self, f + 1);
      chosen.pop_back();
      used[neg_face[a]] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const PerfectMatching& x, const PerfectMatching& y) { return x.arrows < y.arrows; });
  return out;
}

/// Undirected cycles of the quiver spanning its cycle space: fundamental
/// cycles of a BFS tree, as signed arrow lists.
inline std::vector<std::vector<std::pair<std::size_t, int>>> cycle_basis(const EmbeddedQuiver& q) {
  const std::size_t nv = q.vertices.size();
  std::vector<std::size_t> parent_arrow(nv, static_cast<std::size_t>(-1));
  std::vector<bool> seen(nv, false), tree(q.arrows.size(), false);
  std::vector<std::size_t> depth(nv, 0), order{0};
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const auto& arr = q.arrows[a];
      std::size_t w;
      if (arr.tail == v) w = arr.head;
      else if (arr.head == v) w = arr.tail;
      else continue;
      if (seen[w]) continue;
      seen[w] = true;
      tree[a] = true;
      parent_arrow[w] = a;
      depth[w] = depth[v] + 1;
      order.push_back(w);
    }
  }
  // Signed path from the root to v: arrows traversed root -> v.
  auto path_to = [&](std::size_t v) {
    std::vector<std::pair<std::size_t, int>> p;
    while (v != 0) {
      const auto a = parent_arrow[v];
      const bool forward = q.arrows[a].head == v;
      p.emplace_back(a, forward ? 1 : -1);
      v = forward ? q.arrows[a].tail : q.arrows[a].head;
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<std::pair<std::size_t, int>>> cycles;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    if (tree[a]) continue;
    // root -> tail, a, head -> root
    std::vector<std::pair<std::size_t, int>> c = path_to(q.arrows[a].tail);
    c.emplace_back(a, 1);
    auto back = path_to(q.arrows[a].head);
    for (auto it = back.rbegin(); it != back.rend(); ++it) c.emplace_back(it->first, -it->second);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

inline IVec3 cycle_degree(const EmbeddedQuiver& q, const std::vector<std::pair<std::size_t, int>>& c) {
  IVec3 m{0, 0, 0};
  for (auto [a, sign] : c) m = sign > 0 ? m + q.arrows[a].monomial : m - q.arrows[a].monomial;
  return m;
}

/// The element n of N with <deg(c), n> = #(P meets c) for every cycle c.
inline IVec3 pm_vector(const DimerModel& d, const PerfectMatching& p) {
  const auto& q = d.quiver;
  std::vector<bool> in(q.arrows.size(), false);
  for (auto a : p.arrows) in[a] = true;
  std::vector<IVec3> degrees;
  std::vector<Int> counts;
  for (const auto& c : cycle_basis(q)) {
    degrees.push_back(cycle_degree(q, c));
    Int n = 0;
    for (auto [a, sign] : c)
      if (in[a]) n += sign;
    counts.push_back(n);
  }
  // Faces have degree (0,0,1) and meet P once.
  degrees.push_back({0, 0, 1});
  counts.push_back(1);
  std::optional<std::array<std::size_t, 3>> pick;
  for (std::size_t i = 0; i < degrees.size() && !pick; ++i)
    for (std::size_t j = i + 1; j < degrees.size() && !pick; ++j)
      for (std::size_t l = j + 1; l < degrees.size() && !pick; ++l)
        if (det3({degrees[i], degrees[j], degrees[l]}) != 0) pick = std::array{i, j, l};
  if (!pick) throw Error(ErrorCode::DegenerateCycles, "cycle degrees do not span M");
  const IMat3 m{degrees[(*pick)[0]], degrees[(*pick)[1]], degrees[(*pick)[2]]};
  const Int det = det3(m);
  const IVec3 num = mat_vec(adjugate(m), IVec3{counts[(*pick)[0]], counts[(*pick)[1]], counts[(*pick)[2]]});
  IVec3 n;
  for (int j = 0; j < 3; ++j) {
    if (num[j] % det != 0) throw Error(ErrorCode::PolygonMismatch, "matching vector is not integral");
    n[j] = num[j] / det;
  }
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (dot(degrees[i], n) != counts[i]) throw Error(ErrorCode::PolygonMismatch, "matching is inconsistent with cycle degrees");
  if (n[2] != 1) throw Error(ErrorCode::PolygonMismatch, "matching vector is not at height one");
  return n;
}

/// Strict convex hull corners of points in the plane, counterclockwise from
/// the lexicographic minimum.
inline std::vector<IVec2> hull_corners(std::vector<IVec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto turn = [](const IVec2& o, const IVec2& a, const IVec2& b) {
    return checked_mul(a[0] - o[0], b[1] - o[1]) - checked_mul(a[1] - o[1], b[0] - o[0]);
  };
  std::vector<IVec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Fills in the N-vector of every matching.
inline void assign_pm_vectors(const DimerModel& d, std::vector<PerfectMatching>& pms) {
  for (auto& p : pms) p.nvec = pm_vector(d, p);
}

/// Corners of the polygon spanned by the matching vectors; must be the input rays.
inline std::vector<IVec3> recovered_polygon(const ToricData& data, const std::vector<PerfectMatching>& pms) {
  std::vector<IVec2> pts;
  for (const auto& p : pms) pts.push_back({p.nvec[0], p.nvec[1]});
  std::vector<IVec3> corners;
  for (const auto& c : hull_corners(pts)) corners.push_back({c[0], c[1], 1});
  std::vector<IVec3> expected = data.rays();
  std::sort(corners.begin(), corners.end());
  std::sort(expected.begin(), expected.end());
  if (corners != expected) throw Error(ErrorCode::PolygonMismatch, "matchings do not recover the input polygon");
  return corners;
}

/// Arrows in the extremal matching of corner i read off the slack vectors.
inline std::vector<std::size_t> extremal_from_slack(const EmbeddedQuiver& q, std::size_t i) {
  std::vector<std::size_t> r;
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (q.arrows[a].slack[i] == 1) r.push_back(a);
  return r;
}

// ---- reflexive polygons and type sequences -----------------------------

inline std::vector<IVec2> interior_points(const ToricData& data) {
  const auto pts = data.points();
  Int lo0 = pts[0][0], hi0 = lo0, lo1 = pts[0][1], hi1 = lo1;
  for (const auto& p : pts) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  std::vector<IVec2> out;
  for (Int x = lo0; x <= hi0; ++x)
    for (Int y = lo1; y <= hi1; ++y) {
      bool inside = true;
      for (std::size_t i = 0; i < pts.size() && inside; ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        inside = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]) > 0;
      }
      if (inside) out.push_back({x, y});
    }
  return out;
}

/// All boundary lattice points in counterclockwise order.
inline std::vector<IVec2> boundary_points(const std::vector<IVec2>& corners) {
  std::vector<IVec2> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto& a = corners[i];
    const auto& b = corners[(i + 1) % corners.size()];
    const Int g = std::gcd(b[0] - a[0], b[1] - a[1]);
    for (Int s = 0; s < g; ++s) out.push_back({a[0] + (b[0] - a[0]) / g * s, a[1] + (b[1] - a[1]) / g * s});
  }
  return out;
}

/// Self-intersection numbers a_i with v_{i-1} + v_{i+1} = -a_i v_i over the
/// boundary points of a polygon whose interior point is the origin.
inline std::vector<Int> self_intersections(const std::vector<IVec2>& corners) {
  const auto pts = boundary_points(corners);
  const std::size_t n = pts.size();
  std::vector<Int> a;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[(i + n - 1) % n];
    const auto& c = pts[i];
    const auto& s = pts[(i + 1) % n];
    const IVec2 sum{p[0] + s[0], p[1] + s[1]};
    // sum = -a c; c is primitive so read a from a nonzero coordinate.
    const int j = c[0] != 0 ? 0 : 1;
    a.push_back(-sum[j] / c[j]);
  }
  return a;
}

struct ReflexivePolygon {
  std::string label;
  std::vector<IVec2> corners;  // interior point at the origin
};

inline const std::vector<ReflexivePolygon>& reflexive_polygons() {
  static const std::vector<ReflexivePolygon> table = {
      {"3a", {{-1, -1}, {1, 0}, {0, 1}}},
      {"4a", {{0, -1}, {1, 0}, {0, 1}, {-1, 0}}},
      {"4b", {{1, -1}, {0, 1}, {-1, 0}, {0, -1}}},
      {"4c", {{1, -1}, {0, 1}, {-1, -1}}},
      {"5a", {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}}},
      {"5b", {{1, -1}, {0, 1}, {-1, 0}, {-1, -1}}},
      {"6a", {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}},
      {"6b", {{1, 0}, {0, 1}, {-1, 1}, {-1, -1}, {0, -1}}},
      {"6c", {{1, 0}, {0, 1}, {-2, -1}, {0, -1}}},
      {"6d", {{0, 1}, {-2, -1}, {1, -1}}},
      {"7a", {{1, 0}, {0, 1}, {-1, 1}, {-1, -1}, {1, -1}}},
      {"7b", {{1, 0}, {0, 1}, {-2, -1}, {1, -1}}},
      {"8a", {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}},
      {"8b", {{0, 1}, {-1, 1}, {-1, -1}, {2, -1}}},
      {"8c", {{0, 1}, {2, -1}, {-2, -1}}},
      {"9a", {{-1, 2}, {-1, -1}, {2, -1}}},
  };
  return table;
}

inline bool same_cyclic_sequence(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (int dir : {1, -1})
    for (std::size_t start = 0; start < n; ++start) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const std::size_t j = dir > 0 ? (start + i) % n : (start + n - i) % n;
        ok = a[i] == b[j];
      }
      if (ok) return true;
    }
  return false;
}

/// Label of the reflexive polygon with this self-intersection sequence, or "?".
inline std::string type_label(const std::vector<Int>& type) {
  for (const auto& p : reflexive_polygons())
    if (same_cyclic_sequence(type, self_intersections(p.corners))) return p.label;
  return "?";
}

namespace detail {

inline std::vector<Int> type_for_order(const EmbeddedQuiver& q, const std::vector<std::size_t>& w) {
  const std::size_t n = w.size();
  std::vector<Int> type;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lower = w[(i + n - 1) % n];
    const std::size_t upper = w[i];
    Int count = 0;
    for (const auto& a : q.arrows)
      if (a.tail == upper && a.head == lower) ++count;
    type.push_back(count - 2);
  }
  return type;
}

}  // namespace detail

/// Arrow counts between height-consecutive vertices, minus 2. Vertices w_1..w_n
/// are ordered by height over the interior point; arrows decrease height, so
/// entry i counts arrows w_i -> w_{i-1} (w_0 = w_n one period lower). Vertices
/// of equal height are tried in every order; the result must not depend on it.
inline std::vector<Int> type_sequence(const ToricData& data, const EmbeddedQuiver& q) {
  const auto inner = interior_points(data);
  if (inner.size() != 1) throw Error(ErrorCode::NotReflexive, "polygon does not have exactly one interior point");
  const IVec3 u{inner[0][0], inner[0][1], 1};
  const std::size_t n = q.vertices.size();
  std::vector<std::pair<Rational, std::size_t>> h;
  for (std::size_t v = 0; v < n; ++v) h.emplace_back(frac(qdot(u, q.points[v])), v);
  std::sort(h.begin(), h.end());
  std::vector<std::pair<std::size_t, std::size_t>> ties;  // [begin, end) of equal heights
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && h[j].first == h[i].first) ++j;
    if (j - i > 1) ties.emplace_back(i, j);
    i = j;
  }
  std::vector<std::size_t> w;
  for (const auto& e : h) w.push_back(e.second);
  const std::vector<Int> first = detail::type_for_order(q, w);
  // Odometer over the permutations of each tie group.
  for (;;) {
    std::size_t g = 0;
    for (; g < ties.size(); ++g) {
      auto b = w.begin() + static_cast<std::ptrdiff_t>(ties[g].first);
      auto e = w.begin() + static_cast<std::ptrdiff_t>(ties[g].second);
      if (std::next_permutation(b, e)) break;
    }
    if (g == ties.size()) break;
    if (!same_cyclic_sequence(first, detail::type_for_order(q, w)))
      throw Error(ErrorCode::TiedHeights, "vertices of equal height give different type sequences");
  }
  return first;
}

}  // namespace nccr
