#pragma once

// Invariant suites run by the `verify` command. Every check recomputes its
// property directly from definitions rather than trusting the producer.

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nccr/pipeline.hpp"

namespace nccr {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first failure, if any
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t random_vectors = 10000;
  std::size_t covectors = 100;
  Int entry_range = 5;
};

/// Per-check failure sink: records the first failure and counts cases.
class CheckContext {
 public:
  explicit CheckContext(CheckResult& r) : r_(r) {}
  void expect(bool ok, const std::string& what) {
    ++r_.cases;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = what;
    }
  }
  bool failed() const { return !r_.passed; }

 private:
  CheckResult& r_;
};

/// Empty string if every arrow of q satisfies the arrow invariants.
inline std::string arrow_violation(const ToricData& data, const EmbeddedQuiver& q) {
  const int k = static_cast<int>(data.size());
  std::set<QVec3> points(q.points.begin(), q.points.end());
  if (points.size() != q.points.size()) return "two vertices share a torus point";
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (data.normalized(q.vertices[v]) != q.vertices[v]) return "vertex " + std::to_string(v) + " is not normalized";
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const Arrow& a = q.arrows[i];
    const std::string id = "arrow " + std::to_string(i) + ": ";
    const BVector& t = q.vertices[a.tail];
    const BVector& h = q.vertices[a.head];
    for (auto s : a.slack.entries)
      if (s != 0 && s != 1) return id + "slack is not 0/1";
    if (a.slack_weight() < 1 || a.slack_weight() > k - 2) return id + "slack weight outside [1, k-2]";
    if (data.normalized(t - a.slack) != h) return id + "head is not normalize(tail - slack)";
    const QVec3 m = data.kappa(h - t + a.slack);
    if (!is_integral(m) || to_ivec(m) != a.monomial) return id + "monomial is not kappa(head - tail + slack)";
    for (std::size_t j = 0; j < data.size(); ++j)
      if (dot(a.monomial, data.ray(j)) < h[j] - t[j]) return id + "monomial is not a homomorphism";
    if (a.lift != q.points[a.head] - q.points[a.tail] - to_q(a.monomial)) return id + "lift mismatch";
    if (a.lift == QVec3{}) return id + "zero lift";
    if (frac(q.points[a.tail] + a.lift) != q.points[a.head]) return id + "lift does not reach the head";
  }
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (q.in_degree(v) != q.out_degree(v)) return "vertex " + std::to_string(v) + " has in-degree != out-degree";
  if (!strongly_connected(q.vertices.size(), q.arrows)) return "not strongly connected";
  return {};
}

/// Relations sum c_i v_i = 0 from each quadruple of rays.
inline std::vector<BVector> kernel_generators(const ToricData& data) {
  const std::size_t k = data.size();
  std::vector<BVector> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l)
        for (std::size_t p = l + 1; p < k; ++p) {
          BVector c(std::vector<Int>(k, 0));
          c[i] = data.triple_det(j, l, p);
          c[j] = -data.triple_det(i, l, p);
          c[l] = data.triple_det(i, j, p);
          c[p] = -data.triple_det(i, j, l);
          out.push_back(c);
        }
  return out;
}

inline std::vector<CheckResult> verify_all(const Analysis& an, const VerifyOptions& opt) {
  const ToricData& data = an.data;
  const std::size_t k = data.size();
  std::mt19937_64 rng(opt.seed);
  auto uniform = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  auto random_b = [&](Int r) {
    BVector b(std::vector<Int>(k, 0));
    for (auto& x : b.entries) x = uniform(-r, r);
    return b;
  };
  auto random_m = [&](Int r) { return IVec3{uniform(-r, r), uniform(-r, r), uniform(-r, r)}; };
  auto in_cm = [&](const BVector& b) { return std::binary_search(an.cm.begin(), an.cm.end(), b); };

  std::vector<CheckResult> results;
  auto run = [&](const std::string& name, const std::function<void(CheckContext&)>& body) {
    CheckResult r;
    r.name = name;
    CheckContext ctx(r);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(ctx);
    } catch (const Error& e) {
      ctx.expect(false, e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  };

  run("cm_oracle_agreement", [&](CheckContext& c) {
    for (std::size_t n = 0; n < opt.random_vectors; ++n) {
      const BVector b = random_b(opt.entry_range);
      const auto x = is_cm(data, b);
      const auto y = is_cm_by_cells(data, b);
      c.expect(x.cm == y.cm && (x.cm || x.point == y.point), "is_cm and the cell scan disagree on " + to_string(b));
    }
  });

  run("cm_isomorphism_invariance", [&](CheckContext& c) {
    for (std::size_t n = 0; n < opt.random_vectors / 10; ++n) {
      const BVector b = random_b(opt.entry_range);
      const IVec3 m = random_m(3);
      c.expect(is_cm(data, b).cm == is_cm(data, b + data.phi_t(m)).cm, "CM verdict changes under shift: " + to_string(b));
    }
  });

  run("normalize_laws", [&](CheckContext& c) {
    for (std::size_t n = 0; n < opt.random_vectors / 10; ++n) {
      const BVector a = random_b(10), b = random_b(10);
      const auto nb = data.normalize(b);
      c.expect(data.normalized(nb.b) == nb.b, "normalize is not idempotent on " + to_string(b));
      c.expect(nb.b - b == data.phi_t(nb.shift), "normalize shift is not in the image of phi^T");
      const QVec3 kb = data.kappa(nb.b);
      c.expect(frac(kb) == kb, "normalized kappa outside [0,1)^3");
      c.expect(data.kappa(a + b) == data.kappa(a) + data.kappa(b), "kappa is not additive");
      for (const auto& x : data.kappa(b)) c.expect(data.gram_det() % x.get_den().get_si() == 0, "kappa denominator");
      const IVec3 m = random_m(5);
      c.expect(data.kappa(data.phi_t(m)) == to_q(m), "kappa(phi^T(m)) != m");
    }
  });

  run("cm_zero_module", [&](CheckContext& c) {
    const auto gens = kernel_generators(data);
    if (gens.empty()) return;
    for (std::size_t n = 0; n < opt.random_vectors / 10; ++n) {
      BVector b(std::vector<Int>(k, 0));
      for (const auto& g : gens) {
        const Int coeff = uniform(-2, 2);
        for (std::size_t i = 0; i < k; ++i) b[i] += coeff * g[i];
      }
      if (b.is_zero()) continue;
      c.expect(data.phi(b) == IVec3{0, 0, 0}, "kernel generator is not in the kernel");
      c.expect(!is_cm(data, b).cm, "nonzero kernel vector is CM: " + to_string(b));
    }
  });

  run("cm_removal", [&](CheckContext& c) {
    if (k <= 3) return;
    for (const auto& b : an.cm)
      for (std::size_t i = 0; i < k; ++i) {
        BVector r = b;
        r.entries.erase(r.entries.begin() + static_cast<std::ptrdiff_t>(i));
        c.expect(is_cm(data.without(i), r).cm, "dropping entry " + std::to_string(i) + " of " + to_string(b) + " breaks CM");
      }
  });

  run("cm_interval_contiguity", [&](CheckContext& c) {
    if (k <= 3) return;
    for (std::size_t n = 0; n < 200; ++n) {
      const BVector b = an.cm[static_cast<std::size_t>(uniform(0, static_cast<Int>(an.cm.size()) - 1))] + data.phi_t(random_m(2));
      const auto pos = static_cast<std::size_t>(uniform(0, static_cast<Int>(k) - 1));
      std::vector<Int> prefix = b.entries;
      prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(pos));
      std::vector<Int> hits;
      for (Int z = -20; z <= 20; ++z)
        if (is_cm(data, insert_entry(prefix, pos, z))) hits.push_back(z);
      const bool contiguous = hits.empty() || hits.back() - hits.front() + 1 == static_cast<Int>(hits.size());
      c.expect(contiguous, "CM values are not contiguous for " + to_string(b));
      const auto iv = cm_interval(data, pos, prefix, uniform(-20, 20));
      c.expect(iv.has_value(), "interval is empty although " + to_string(b) + " is CM");
      if (!iv) continue;
      std::vector<Int> expected;
      for (Int z = std::max<Int>(iv->lo, -20); z <= std::min<Int>(iv->hi, 20); ++z) expected.push_back(z);
      c.expect(expected == hits, "cm_interval disagrees with the scan for " + to_string(b));
    }
  });

  run("cm_enumeration_closed", [&](CheckContext& c) {
    c.expect(in_cm(BVector(std::vector<Int>(k, 0))), "zero class missing");
    for (const auto& b : an.cm) {
      c.expect(data.normalized(b) == b, "class not normalized: " + to_string(b));
      c.expect(is_cm(data, b).cm, "listed class is not CM: " + to_string(b));
    }
    // Brute force over small vectors: every CM class found must be listed.
    for (std::size_t n = 0; n < opt.random_vectors / 10; ++n) {
      const BVector b = random_b(3);
      if (is_cm(data, b)) c.expect(in_cm(data.normalized(b)), "CM class missing: " + to_string(data.normalized(b)));
    }
  });

  run("mm_sets", [&](CheckContext& c) {
    c.expect(!an.mm.empty(), "no maximal modifying sets");
    const std::size_t size = an.mm.empty() ? 0 : an.mm.front().size();
    for (const auto& s : an.mm) {
      c.expect(s.size() == size, "sets of different sizes");
      c.expect(std::binary_search(s.members.begin(), s.members.end(), BVector(std::vector<Int>(k, 0))), "set without 0");
      for (const auto& x : s.members)
        for (const auto& y : s.members)
          if (x != y) c.expect(in_cm(data.normalized(x - y)), "incompatible pair in a set");
      for (const auto& e : an.cm) {
        if (std::binary_search(s.members.begin(), s.members.end(), e)) continue;
        bool extendable = true;
        for (const auto& x : s.members)
          extendable = extendable && in_cm(data.normalized(x - e)) && in_cm(data.normalized(e - x));
        c.expect(!extendable, "set can be extended by " + to_string(e));
      }
    }
    if (an.cm.size() <= 40) c.expect(enumerate_mm_generations(compatibility_graph(data, an.cm)) == an.mm, "generation oracle disagrees");
  });

  run("arrow_invariants", [&](CheckContext& c) {
    for (const auto& q : an.quivers) {
      const auto v = arrow_violation(data, q);
      c.expect(v.empty(), v);
    }
  });

  std::vector<DimerModel> dimers;
  run("dimer_axioms", [&](CheckContext& c) {
    for (const auto& q : an.quivers) {
      dimers.push_back(extract_dimer(q));
      const auto& d = dimers.back();
      c.expect(static_cast<long>(q.vertices.size()) - static_cast<long>(q.arrows.size()) + static_cast<long>(d.face_count()) == 0,
               "Euler characteristic");
      const BVector ones(std::vector<Int>(k, 1));
      for (const auto* faces : {&d.faces_pos, &d.faces_neg})
        for (const auto& f : *faces) {
          c.expect(f.size() >= 3, "short face");
          c.expect(face_slack(d, f) == ones, "face slack sum is not (1,...,1)");
        }
      // Per vertex and extremal matching: incident slack, loops counted twice, is in-degree - 1.
      for (std::size_t v = 0; v < q.vertices.size(); ++v)
        for (std::size_t i = 0; i < k; ++i) {
          Int s = 0;
          for (const auto& a : q.arrows) s += (static_cast<Int>(a.tail == v) + static_cast<Int>(a.head == v)) * a.slack[i];
          c.expect(s == static_cast<Int>(q.in_degree(v)) - 1, "incident slack identity fails at vertex " + std::to_string(v));
        }
    }
  });

  run("rcharge", [&](CheckContext& c) {
    for (const auto& d : dimers) {
      const auto rc = find_rcharge(data, d);
      c.expect(rcharge_identities_hold(d, rc.values), "found charge violates R1/R2");
      std::size_t tried = 0;
      while (tried < opt.covectors) {
        const IVec3 x = random_m(10);
        if (!interior_covector(data, x)) continue;
        ++tried;
        c.expect(rcharge_identities_hold(d, rcharge_values(data, d, x)), "R1/R2 fail for an admissible covector");
      }
    }
  });

  run("polygon_recovery", [&](CheckContext& c) {
    for (const auto& d : dimers) {
      auto pms = perfect_matchings(d);
      c.expect(!pms.empty(), "no perfect matchings");
      for (const auto& p : pms) {
        std::vector<int> hits(d.face_count(), 0);
        std::vector<bool> in(d.quiver.arrows.size(), false);
        for (auto a : p.arrows) in[a] = true;
        std::size_t f = 0;
        for (const auto* faces : {&d.faces_pos, &d.faces_neg})
          for (const auto& face : *faces) {
            for (auto a : face) hits[f] += in[a];
            c.expect(hits[f] == 1, "matching does not meet a face exactly once");
            ++f;
          }
      }
      assign_pm_vectors(d, pms);
      recovered_polygon(data, pms);
      std::vector<int> membership(d.quiver.arrows.size(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<std::size_t>> at_corner;
        for (const auto& p : pms)
          if (p.nvec == data.ray(i)) at_corner.push_back(p.arrows);
        c.expect(at_corner.size() == 1, "corner " + std::to_string(i) + " has " + std::to_string(at_corner.size()) + " matchings");
        if (at_corner.size() == 1) c.expect(at_corner[0] == extremal_from_slack(d.quiver, i), "extremal matching differs from slack");
        for (const auto& m : at_corner)
          for (auto a : m) ++membership[a];
      }
      for (auto m : membership) c.expect(m >= 1 && m <= static_cast<int>(k) - 2, "arrow in too few or too many extremal matchings");
    }
  });

  run("affine_equivalence", [&](CheckContext& c) {
    for (std::size_t i = 0; i < an.quivers.size(); ++i) {
      const auto& q = an.quivers[i];
      const auto self = affine_equivalent(q, q);
      c.expect(self.has_value(), "quiver not equivalent to itself");
      const auto opp = opposite(data, opposite(data, q));
      c.expect(affine_equivalent(q, opp).has_value(), "opposite is not an involution");
      const auto j = an.classes.raw_reps[an.classes.raw_class_of[i]];
      c.expect(affine_equivalent(an.quivers[j], q).has_value() && affine_equivalent(q, an.quivers[j]).has_value(),
               "equivalence is not symmetric");
    }
  });

  run("mutation_closure", [&](CheckContext& c) {
    for (std::size_t i = 0; i < an.quivers.size(); ++i) {
      const auto& q = an.quivers[i];
      for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        if (q.vertices[v].is_zero() || !eligible_for_mutation(q, v)) continue;
        const ModifyingSet m = mutate(data, an.mm[i], q, v, &an.mm);
        const EmbeddedQuiver mq = build_quiver(data, m);
        BVector fresh;
        for (const auto& b : m.members)
          if (!q.contains(b)) fresh = b;
        const std::size_t nv = mq.index_of(fresh);
        c.expect(mutate(data, m, mq, nv, &an.mm) == an.mm[i], "mutating twice does not return");
        std::vector<std::size_t> vmap;
        for (std::size_t u = 0; u < q.vertices.size(); ++u) vmap.push_back(u == v ? nv : mq.index_of(q.vertices[u]));
        const DimerModel rewritten = mutate_dimer(dimers[i], v);
        c.expect(dimer_isomorphism(rewritten, extract_dimer(mq), false, &vmap).has_value(),
                 "face rewrite disagrees with module mutation");
      }
    }
  });

  run("mutation_graph", [&](CheckContext& c) {
    const auto g = mutation_graph(data, an.mm, an.quivers, an.classes);
    c.expect(g.nodes == an.classes.classes.size(), "node count");
    for (const auto& e : g.edges) c.expect(e.from < g.nodes && e.to < g.nodes, "edge endpoint out of range");
  });

  if (is_parallelogram(data))
    run("parallelogram_structure", [&](CheckContext& c) {
      for (const auto& d : dimers) {
        const auto r = check_parallelogram(data, d);
        c.expect(r.ok(), "straight/diagonal structure fails");
      }
    });

  return results;
}

}  // namespace nccr
