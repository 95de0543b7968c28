#pragma once

// Toric mutation at a vertex with two incoming and two outgoing arrows, both
// on modules (replace T_v by the intersection of the images of the incoming
// arrows) and on dimer faces, plus the mutation graph of the NCCR classes.

#include <algorithm>
#include <queue>
#include <vector>

#include "nccr/dimer.hpp"

namespace nccr {

struct VertexArrows {
  std::vector<std::size_t> in, out;
};

inline VertexArrows arrows_at(const EmbeddedQuiver& q, std::size_t v) {
  VertexArrows r;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    if (q.arrows[a].head == v) r.in.push_back(a);
    if (q.arrows[a].tail == v) r.out.push_back(a);
  }
  return r;
}

inline void check_mutable(const EmbeddedQuiver& q, std::size_t v) {
  if (v >= q.vertices.size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  if (q.vertices[v].is_zero()) throw Error(ErrorCode::MutatedZeroVertex, "cannot mutate the vertex of R itself");
  for (const auto& a : q.arrows)
    if (a.tail == v && a.head == v) throw Error(ErrorCode::LoopOrTwoCycle, "vertex has a loop");
  const auto at = arrows_at(q, v);
  if (at.in.size() != 2 || at.out.size() != 2)
    throw Error(ErrorCode::BadVertexDegree, "vertex has " + std::to_string(at.in.size()) + " incoming and " +
                                                std::to_string(at.out.size()) + " outgoing arrows");
}

inline bool eligible_for_mutation(const EmbeddedQuiver& q, std::size_t v) {
  for (const auto& a : q.arrows)
    if (a.tail == v && a.head == v) return false;
  const auto at = arrows_at(q, v);
  return at.in.size() == 2 && at.out.size() == 2;
}

/// Pairwise compatibility of a candidate modifying set.
inline bool is_modifying(const ToricData& data, const ModifyingSet& s) {
  for (const auto& b : s.members)
    for (const auto& c : s.members)
      if (b != c && !is_cm(data, data.normalized(b - c))) return false;
  return true;
}

/// Replaces T_v by T(max(r + phi^T(m1), s + phi^T(m2))) where the incoming
/// arrows start at T(r), T(s) with monomials m1, m2. When the list of all
/// maximal modifying sets is given, the result must be one of them.
inline ModifyingSet mutate(const ToricData& data, const ModifyingSet& set, const EmbeddedQuiver& q, std::size_t v,
                           const std::vector<ModifyingSet>* all = nullptr) {
  check_mutable(q, v);
  const auto at = arrows_at(q, v);
  const Arrow& a1 = q.arrows[at.in[0]];
  const Arrow& a2 = q.arrows[at.in[1]];
  const BVector x = q.vertices[a1.tail] + data.phi_t(a1.monomial);
  const BVector y = q.vertices[a2.tail] + data.phi_t(a2.monomial);
  BVector t = x;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::max(x[i], y[i]);
  ModifyingSet out;
  for (const auto& b : set.members)
    if (b != q.vertices[v]) out.members.push_back(b);
  out.members.push_back(data.normalized(t));
  std::sort(out.members.begin(), out.members.end());
  if (std::adjacent_find(out.members.begin(), out.members.end()) != out.members.end() || !is_modifying(data, out))
    throw Error(ErrorCode::NotModifying, "mutation is not a modifying set");
  if (all && !std::binary_search(all->begin(), all->end(), out))
    throw Error(ErrorCode::NotModifying, "mutation is not a maximal modifying set");
  return out;
}

/// The set tensored by T(-w): the class of w moves to 0, 0 moves to -w.
inline ModifyingSet shift_set(const ToricData& data, const ModifyingSet& set, const BVector& w) {
  ModifyingSet out;
  for (const auto& b : set.members) out.members.push_back(data.normalized(b - w));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

namespace detail {

struct FaceEdit {
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (tail, head)
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<int> sign;  // +1 / -1 per face, 0 once removed

  std::size_t add_arrow(std::size_t t, std::size_t h) {
    arrows.emplace_back(t, h);
    alive.push_back(true);
    return arrows.size() - 1;
  }
  void add_face(std::vector<std::size_t> f, int s) {
    faces.push_back(std::move(f));
    sign.push_back(s);
  }
  /// The live face of the given sign containing arrow a.
  std::size_t face_of(std::size_t a, int s) const {
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (sign[f] == s && std::find(faces[f].begin(), faces[f].end(), a) != faces[f].end()) return f;
    throw Error(ErrorCode::ManifoldFailure, "arrow lost its face during mutation");
  }
};

inline std::vector<std::size_t> starting_at(std::vector<std::size_t> f, std::size_t a) {
  std::rotate(f.begin(), std::find(f.begin(), f.end(), a), f.end());
  return f;
}

}  // namespace detail

/// Combinatorial mutation of the face data: reverse the four arrows at v,
/// shortcut each path b_j a_i through v by a new arrow u_ij, close it with a
/// triangle of the other sign, then cancel faces of length 2. Vertex indices
/// are kept; arrows carry only tail and head.
inline DimerModel mutate_dimer(const DimerModel& d, std::size_t v) {
  const auto& q = d.quiver;
  if (v >= q.vertices.size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  for (const auto& a : q.arrows)
    if (a.tail == v && a.head == v) throw Error(ErrorCode::LoopOrTwoCycle, "vertex has a loop");
  for (const auto* faces : {&d.faces_pos, &d.faces_neg})
    for (const auto& f : *faces)
      if (f.size() < 3) throw Error(ErrorCode::LoopOrTwoCycle, "face of length two");
  const auto at = arrows_at(q, v);
  if (at.in.size() != 2 || at.out.size() != 2) throw Error(ErrorCode::BadVertexDegree, "vertex is not 2-in 2-out");

  detail::FaceEdit e;
  for (const auto& a : q.arrows) e.add_arrow(a.tail, a.head);
  std::vector<std::pair<std::vector<std::size_t>, int>> triangles;
  auto rewrite = [&](std::vector<std::size_t> f, int s) {
    // Start away from v so every path b_j a_i through v is contiguous.
    std::rotate(f.begin(), std::find_if(f.begin(), f.end(), [&](std::size_t a) { return q.arrows[a].tail != v; }), f.end());
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto b = f[i];
      if (q.arrows[b].head != v) {
        g.push_back(b);
        continue;
      }
      const auto a = f[++i];
      const auto u = e.add_arrow(q.arrows[b].tail, q.arrows[a].head);
      triangles.push_back({{u, a, b}, -s});
      g.push_back(u);
    }
    e.add_face(std::move(g), s);
  };
  for (const auto& f : d.faces_pos) rewrite(f, 1);
  for (const auto& f : d.faces_neg) rewrite(f, -1);
  for (auto a : at.in) std::swap(e.arrows[a].first, e.arrows[a].second);
  for (auto a : at.out) std::swap(e.arrows[a].first, e.arrows[a].second);
  for (auto& [f, s] : triangles) e.add_face(std::move(f), s);

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t f = 0; f < e.faces.size() && !changed; ++f) {
      if (e.sign[f] == 0 || e.faces[f].size() != 2) continue;
      const auto x = e.faces[f][0], y = e.faces[f][1];
      const int other = -e.sign[f];
      e.sign[f] = 0;
      const auto fa = e.face_of(x, other), fb = e.face_of(y, other);
      if (fa == fb) throw Error(ErrorCode::ManifoldFailure, "cancelling a 2-cycle collapses a face");
      auto ra = detail::starting_at(e.faces[fa], x);
      auto rb = detail::starting_at(e.faces[fb], y);
      std::vector<std::size_t> merged(ra.begin() + 1, ra.end());
      merged.insert(merged.end(), rb.begin() + 1, rb.end());
      e.sign[fa] = e.sign[fb] = 0;
      e.alive[x] = e.alive[y] = false;
      e.add_face(std::move(merged), other);
      changed = true;
    }
  }

  DimerModel out;
  out.quiver.vertices = q.vertices;
  out.quiver.points = q.points;
  std::vector<std::size_t> index(e.arrows.size(), static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < e.arrows.size(); ++a) {
    if (!e.alive[a]) continue;
    index[a] = out.quiver.arrows.size();
    Arrow arr;
    arr.tail = e.arrows[a].first;
    arr.head = e.arrows[a].second;
    out.quiver.arrows.push_back(std::move(arr));
  }
  for (std::size_t f = 0; f < e.faces.size(); ++f) {
    if (e.sign[f] == 0) continue;
    std::vector<std::size_t> cycle;
    for (auto a : e.faces[f]) cycle.push_back(index[a]);
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    (e.sign[f] > 0 ? out.faces_pos : out.faces_neg).push_back(std::move(cycle));
  }
  std::sort(out.faces_pos.begin(), out.faces_pos.end());
  std::sort(out.faces_neg.begin(), out.faces_neg.end());
  validate_dimer(out);
  return out;
}

// ---- mutation graph ----------------------------------------------------

struct MutationEdge {
  std::size_t from = 0;    // class index
  std::size_t vertex = 0;  // vertex of the class representative
  std::size_t to = 0;      // class index
};

struct MutationGraph {
  std::size_t nodes = 0;
  std::vector<MutationEdge> edges;
  bool connected = false;

  /// Classes from which `target` can be reached along edges.
  std::vector<bool> reaching(std::size_t target) const {
    std::vector<bool> r(nodes, false);
    r[target] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& e : edges)
        if (r[e.to] && !r[e.from]) r[e.from] = changed = true;
    }
    return r;
  }
};

/// Mutation of set `s` (with quiver q) at any eligible vertex; the zero
/// vertex is handled by first tensoring with T(-w) for another member w.
inline ModifyingSet mutate_any(const ToricData& data, const ModifyingSet& s, const EmbeddedQuiver& q, std::size_t v,
                               const std::vector<ModifyingSet>* all) {
  if (!q.vertices[v].is_zero()) return mutate(data, s, q, v, all);
  const BVector& w = q.vertices[v == 0 ? 1 : 0];
  const ModifyingSet shifted = shift_set(data, s, w);
  const EmbeddedQuiver sq = build_quiver(data, shifted);
  return mutate(data, shifted, sq, sq.index_of(data.normalized(-w)), all);
}

/// Mutation graph over the classes modulo opposite. `sets` must be the sorted
/// list of all maximal modifying sets and `quivers` their quivers.
inline MutationGraph mutation_graph(const ToricData& data, const std::vector<ModifyingSet>& sets,
                                    const std::vector<EmbeddedQuiver>& quivers, const NccrClasses& classes) {
  MutationGraph g;
  g.nodes = classes.classes.size();
  for (std::size_t c = 0; c < g.nodes; ++c) {
    const std::size_t rep = classes.classes[c].rep;
    const auto& q = quivers[rep];
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      if (!eligible_for_mutation(q, v) || q.vertices.size() < 2) continue;
      const ModifyingSet m = mutate_any(data, sets[rep], q, v, nullptr);
      auto it = std::lower_bound(sets.begin(), sets.end(), m);
      if (it == sets.end() || *it != m) throw Error(ErrorCode::UnknownClass, "mutation left the list of NCCRs");
      const auto idx = static_cast<std::size_t>(it - sets.begin());
      g.edges.push_back({c, v, classes.merged_of_raw[classes.raw_class_of[idx]]});
    }
  }
  std::vector<std::vector<std::size_t>> adj(g.nodes);
  for (const auto& e : g.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(g.nodes, false);
  std::queue<std::size_t> todo;
  if (g.nodes > 0) {
    seen[0] = true;
    todo.push(0);
  }
  while (!todo.empty()) {
    const auto n = todo.front();
    todo.pop();
    for (auto m : adj[n])
      if (!seen[m]) {
        seen[m] = true;
        todo.push(m);
      }
  }
  g.connected = std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
  return g;
}

// ---- parallelograms ----------------------------------------------------

struct ParallelogramReport {
  bool classified = true;        // every arrow straight or diagonal
  bool straight_degrees = true;  // four straight arrow ends at each vertex, orientation ignored
  bool straight_balanced = true; // 2 in, 2 out; only the pure square tiling has this
  std::size_t squares = 0;       // faces of the straight subgraph
  bool all_squares = true;
  Int expected_squares = 0;      // 2 |det| of the edge vectors
  QVec2 diagonal_sum{};          // sum over D+ minus sum over D- of projected lifts
  bool diagonal_cycle = true;    // the signed diagonal chain has no boundary

  bool ok() const {
    return classified && straight_degrees && all_squares && static_cast<Int>(squares) == expected_squares &&
           diagonal_sum[0] == 0 && diagonal_sum[1] == 0 && diagonal_cycle;
  }
};

inline bool is_parallelogram(const ToricData& data) {
  return data.size() == 4 && data.ray(0) + data.ray(2) == data.ray(1) + data.ray(3);
}

/// Straight arrows have one slack entry, diagonal arrows two cyclically
/// consecutive ones; D+ holds slack on rays {0,1} or {2,3}, D- on {1,2} or {3,0}.
inline ParallelogramReport check_parallelogram(const ToricData& data, const DimerModel& d) {
  if (!is_parallelogram(data)) throw Error(ErrorCode::InvalidInput, "polygon is not a parallelogram");
  const auto& q = d.quiver;
  ParallelogramReport r;
  const IVec3 e1 = data.ray(1) - data.ray(0), e2 = data.ray(3) - data.ray(0);
  r.expected_squares = 2 * std::abs(e1[0] * e2[1] - e1[1] * e2[0]);
  std::vector<std::size_t> straight;
  std::vector<int> boundary(q.vertices.size(), 0);
  std::vector<int> sin(q.vertices.size(), 0), sout(q.vertices.size(), 0);
  r.diagonal_sum = {Rational(0), Rational(0)};
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& arr = q.arrows[a];
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < 4; ++i)
      if (arr.slack[i] == 1) ones.push_back(i);
    if (ones.size() == 1) {
      straight.push_back(a);
      ++sout[arr.tail];
      ++sin[arr.head];
      continue;
    }
    int sign = 0;
    if (ones.size() == 2 && (ones == std::vector<std::size_t>{0, 1} || ones == std::vector<std::size_t>{2, 3})) sign = 1;
    if (ones.size() == 2 && (ones == std::vector<std::size_t>{1, 2} || ones == std::vector<std::size_t>{0, 3})) sign = -1;
    if (sign == 0) {
      r.classified = false;
      continue;
    }
    r.diagonal_sum[0] += sign * arr.lift[0];
    r.diagonal_sum[1] += sign * arr.lift[1];
    boundary[arr.head] += sign;
    boundary[arr.tail] -= sign;
  }
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (sin[v] + sout[v] != 4) r.straight_degrees = false;
    if (sin[v] != 2 || sout[v] != 2) r.straight_balanced = false;
    if (boundary[v] != 0) r.diagonal_cycle = false;
  }
  const auto faces = detail::trace_faces(q, straight);
  r.squares = faces.size();
  r.all_squares = std::all_of(faces.begin(), faces.end(), [](const auto& f) { return f.size() == 4; });
  return r;
}

}  // namespace nccr
