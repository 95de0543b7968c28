#pragma once

// Maximal modifying sets: subsets S of the CM classes with 0 in S and every
// normalized difference of members CM. These are exactly the maximum cliques
// through the zero class of the compatibility graph.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "nccr/cm.hpp"

namespace nccr {

struct ModifyingSet {
  std::vector<BVector> members;  // sorted, contains the zero vector

  std::size_t size() const { return members.size(); }
  friend auto operator<=>(const ModifyingSet&, const ModifyingSet&) = default;
  friend bool operator==(const ModifyingSet&, const ModifyingSet&) = default;
};

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  /// Index of the lowest set bit, or npos.
  std::size_t first() const { return next(0); }
  std::size_t next(std::size_t from) const {
    for (std::size_t w = from / 64; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      if (w == from / 64) bits &= ~std::uint64_t{0} << (from % 64);
      if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    }
    return npos;
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

/// Vertices are the CM classes indexed with the zero class first, then
/// lexicographically; b ~ c iff normalize(b - c) and normalize(c - b) are CM.
struct CompatibilityGraph {
  std::vector<BVector> vertices;
  std::vector<std::vector<bool>> adjacent;

  std::size_t size() const { return vertices.size(); }
  bool edge(std::size_t i, std::size_t j) const { return adjacent[i][j]; }
};

inline bool compatible(const ToricData& data, const std::vector<BVector>& sorted_cm, const BVector& b,
                       const BVector& c) {
  auto in_cm = [&](const BVector& x) { return std::binary_search(sorted_cm.begin(), sorted_cm.end(), x); };
  return in_cm(data.normalized(b - c)) && in_cm(data.normalized(c - b));
}

inline CompatibilityGraph compatibility_graph(const ToricData& data, std::vector<BVector> cm) {
  std::sort(cm.begin(), cm.end());
  CompatibilityGraph g;
  const BVector zero(std::vector<Int>(data.size(), 0));
  g.vertices.push_back(zero);
  for (const auto& b : cm)
    if (b != zero) g.vertices.push_back(b);
  const std::size_t n = g.size();
  g.adjacent.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (compatible(data, cm, g.vertices[i], g.vertices[j])) g.adjacent[i][j] = g.adjacent[j][i] = true;
  return g;
}

namespace detail {

class CliqueSearch {
 public:
  explicit CliqueSearch(const CompatibilityGraph& g) : g_(g), nbr_(g.size(), Bitset(g.size())) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g.edge(i, j)) nbr_[i].set(j);
  }

  /// All maximum cliques containing vertex 0.
  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::size_t> current{0};
    expand(current, nbr_[0]);
    return found_;
  }

 private:
  // Greedy colouring: a clique uses at most one vertex per colour class.
  std::size_t colour_bound(Bitset p) const {
    std::size_t colours = 0;
    while (!p.none()) {
      ++colours;
      Bitset avail = p;
      for (std::size_t v = avail.first(); v != Bitset::npos; v = avail.next(v + 1)) {
        p.reset(v);
        for (std::size_t u = avail.next(v + 1); u != Bitset::npos; u = avail.next(u + 1))
          if (nbr_[v].test(u)) avail.reset(u);
      }
    }
    return colours;
  }

  void expand(std::vector<std::size_t>& r, Bitset p) {
    if (p.none()) {
      if (r.size() > best_) {
        best_ = r.size();
        found_.clear();
      }
      if (r.size() == best_) {
        auto c = r;
        std::sort(c.begin(), c.end());
        found_.push_back(std::move(c));
      }
      return;
    }
    if (r.size() + colour_bound(p) < best_) return;
    for (std::size_t v = p.first(); v != Bitset::npos; v = p.next(v + 1)) {
      if (r.size() + p.count() < best_) return;
      r.push_back(v);
      expand(r, p & nbr_[v]);
      r.pop_back();
      p.reset(v);
    }
  }

  const CompatibilityGraph& g_;
  std::vector<Bitset> nbr_;
  std::size_t best_ = 0;
  std::vector<std::vector<std::size_t>> found_;
};

inline std::vector<ModifyingSet> to_sets(const CompatibilityGraph& g, const std::vector<std::vector<std::size_t>>& cliques) {
  std::vector<ModifyingSet> out;
  for (const auto& c : cliques) {
    ModifyingSet s;
    for (auto i : c) s.members.push_back(g.vertices[i]);
    std::sort(s.members.begin(), s.members.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Maximal modifying sets by branch and bound over the compatibility graph.
inline std::vector<ModifyingSet> enumerate_mm(const CompatibilityGraph& g) {
  return detail::to_sets(g, detail::CliqueSearch(g).run());
}

inline std::vector<ModifyingSet> enumerate_mm(const ToricData& data, const std::vector<BVector>& cm) {
  return enumerate_mm(compatibility_graph(data, cm));
}

/// The generation procedure: pairs (S, T) where T holds the candidates
/// compatible with all of S; S grows by one candidate of larger index per
/// generation. Returns the S of the last nonempty generation. Exponential;
/// used as a cross-check.
inline std::vector<ModifyingSet> enumerate_mm_generations(const CompatibilityGraph& g) {
  struct Pair {
    std::vector<std::size_t> s;
    std::vector<std::size_t> t;
  };
  std::vector<Pair> generation(1);
  generation[0].s = {0};
  for (std::size_t j = 1; j < g.size(); ++j)
    if (g.edge(0, j)) generation[0].t.push_back(j);
  for (;;) {
    std::vector<Pair> next;
    for (const auto& p : generation) {
      const std::size_t top = p.s.back();
      for (std::size_t e : p.t) {
        if (e <= top) continue;
        Pair q{p.s, {}};
        q.s.push_back(e);
        for (std::size_t c : p.t)
          if (c != e && g.edge(e, c)) q.t.push_back(c);
        next.push_back(std::move(q));
      }
    }
    if (next.empty()) break;
    generation = std::move(next);
  }
  std::vector<std::vector<std::size_t>> cliques;
  for (const auto& p : generation) cliques.push_back(p.s);
  return detail::to_sets(g, cliques);
}

}  // namespace nccr
