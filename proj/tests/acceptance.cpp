// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>

#include "support.hpp"

using namespace nccr;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Analysis load(const std::string& name) { return analyze(test::fixture(name)); }

std::string join(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s + "}";
}

std::vector<std::string> class_labels(const Analysis& an, bool with_asterisk) {
  std::vector<std::string> out;
  for (const auto& c : an.classes.classes) {
    std::string label = type_label(type_sequence(an.data, an.quivers[c.rep]));
    if (with_asterisk && c.asterisk) label += "*";
    out.push_back(label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Published census: one entry per dimer model, asterisk where it differs from its opposite.
const std::map<std::string, std::vector<std::string>>& census_rows() {
  static const std::map<std::string, std::vector<std::string>> rows = {
      {"3a", {"3a"}},
      {"4a", {"4a", "4c"}},
      {"4b", {"4b"}},
      {"4c", {"4a"}},
      {"5a", {"5a", "5b*"}},
      {"5b", {"5a"}},
      {"6a", {"6b", "6a", "6c", "6c", "6d*"}},
      {"6b", {"6c*", "6b", "6a"}},
      {"6c", {"6b", "6a"}},
      {"6d", {"6a"}},
      {"7a", {"7b*", "7a*", "7a"}},
      {"7b", {"7a"}},
      {"8a", {"8a", "8b", "8c", "8a"}},
      {"8b", {"8b", "8a"}},
      {"8c", {"8a"}},
      {"9a", {"9a"}},
  };
  return rows;
}

std::string strip(std::string s) {
  if (!s.empty() && s.back() == '*') s.pop_back();
  return s;
}

Outcome conifold() {
  const auto an = load("conifold");
  Outcome o;
  if (an.classes.classes.size() != 1) return {false, std::to_string(an.classes.classes.size()) + " classes"};
  const auto d = extract_dimer(an.quivers[an.classes.classes[0].rep]);
  bool squares = d.faces_pos.size() == 1 && d.faces_neg.size() == 1;
  for (const auto* faces : {&d.faces_pos, &d.faces_neg})
    for (const auto& f : *faces) squares = squares && f.size() == 4;
  o.passed = d.quiver.vertices.size() == 2 && d.quiver.arrows.size() == 4 && squares;
  o.detail = "1 class; V" + std::to_string(d.quiver.vertices.size()) + " E" + std::to_string(d.quiver.arrows.size()) + " F" +
             std::to_string(d.face_count()) + (squares ? " (two quadrilaterals)" : " (faces are not two quadrilaterals)");
  return o;
}

Outcome c3() {
  const auto an = load("c3");
  if (an.classes.classes.size() != 1) return {false, std::to_string(an.classes.classes.size()) + " classes"};
  const auto d = extract_dimer(an.quivers[0]);
  bool loops = true;
  for (const auto& a : d.quiver.arrows) loops = loops && a.tail == a.head;
  bool triangles = d.face_count() == 2;
  for (const auto* faces : {&d.faces_pos, &d.faces_neg})
    for (const auto& f : *faces) triangles = triangles && f.size() == 3;
  const bool ok = d.quiver.vertices.size() == 1 && d.quiver.arrows.size() == 3 && loops && triangles;
  return {ok, "1 class; V" + std::to_string(d.quiver.vertices.size()) + ", " + std::to_string(d.quiver.arrows.size()) +
                  (loops ? " loops" : " arrows (not all loops)") + ", F" + std::to_string(d.face_count())};
}

Outcome parallelogram() {
  const auto an = load("para_2_1_m1_2");
  const std::size_t raw = an.classes.raw_reps.size();
  // Find the class of the pure square tiling.
  std::optional<std::size_t> square_class;
  for (std::size_t c = 0; c < an.classes.classes.size(); ++c) {
    const auto d = extract_dimer(an.quivers[an.classes.classes[c].rep]);
    bool all4 = d.face_count() == 10;
    for (const auto* faces : {&d.faces_pos, &d.faces_neg})
      for (const auto& f : *faces) all4 = all4 && f.size() == 4;
    if (all4) square_class = c;
  }
  const auto g = mutation_graph(an.data, an.mm, an.quivers, an.classes);
  bool reachable = square_class.has_value();
  if (square_class) {
    const auto r = g.reaching(*square_class);
    reachable = std::all_of(r.begin(), r.end(), [](bool b) { return b; });
  }
  Outcome o;
  o.passed = raw == 5 && square_class.has_value() && g.connected && reachable;
  o.detail = std::to_string(raw) + " classes (" + std::to_string(an.classes.classes.size()) + " modulo opposite); square tiling " +
             (square_class ? "found" : "missing") + "; graph " + (g.connected ? "connected" : "disconnected") +
             "; square tiling reachable from every class: " + (reachable ? "yes" : "no");
  return o;
}

Outcome census(bool types) {
  Outcome o;
  std::size_t matched = 0;
  for (const auto& name : test::reflexive_names()) {
    const auto an = load("refl_" + name);
    const auto& row = census_rows().at(name);
    std::vector<std::string> expected = row;
    if (types)
      for (auto& e : expected) e = strip(e);
    std::sort(expected.begin(), expected.end());
    const auto got = class_labels(an, !types);
    const bool count_ok = an.classes.classes.size() == row.size();
    if (got == expected && count_ok) {
      ++matched;
      continue;
    }
    o.passed = false;
    o.detail += (o.detail.empty() ? "" : "; ") + name + ": got " + std::to_string(got.size()) + " " + join(got) + ", expected " +
                std::to_string(row.size()) + " " + join(expected);
  }
  o.detail = std::to_string(matched) + "/16 polygons match" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome connectivity() {
  Outcome o;
  for (const auto& name : test::reflexive_names()) {
    const auto an = load("refl_" + name);
    if (!mutation_graph(an.data, an.mm, an.quivers, an.classes).connected) {
      o.passed = false;
      o.detail += name + " disconnected; ";
    }
  }
  if (o.passed) o.detail = "16/16 connected";
  return o;
}

Outcome recovery() {
  Outcome o;
  std::size_t total = 0, good = 0;
  for (const auto& name : test::all_fixtures()) {
    const auto an = load(name);
    for (const auto& q : an.quivers) {
      ++total;
      try {
        const auto d = extract_dimer(q);
        auto pms = perfect_matchings(d);
        assign_pm_vectors(d, pms);
        auto corners = recovered_polygon(an.data, pms);
        auto rays = an.data.rays();
        std::sort(corners.begin(), corners.end());
        std::sort(rays.begin(), rays.end());
        if (corners == rays) ++good;
      } catch (const Error& e) {
        if (o.detail.empty()) o.detail = name + ": " + e.what() + "; ";
      }
    }
  }
  o.passed = good == total;
  o.detail += std::to_string(good) + "/" + std::to_string(total) + " dimers recover their polygon";
  return o;
}

Outcome properties() {
  Outcome o;
  std::size_t cases = 0, checks = 0;
  VerifyOptions opt;
  opt.random_vectors = 10000;
  opt.covectors = 100;
  for (const auto& name : test::all_fixtures()) {
    const auto an = load(name);
    for (const auto& r : verify_all(an, opt)) {
      ++checks;
      cases += r.cases;
      if (!r.passed) {
        o.passed = false;
        o.detail += name + "/" + r.name + ": " + r.detail + "; ";
      }
    }
  }
  o.detail += std::to_string(checks) + " suites, " + std::to_string(cases) + " cases over " +
              std::to_string(test::all_fixtures().size()) + " fixtures";
  return o;
}

Outcome parallelogram_structure() {
  Outcome o;
  std::size_t total = 0, good = 0;
  for (const auto& name : test::parallelogram_names()) {
    const auto an = load(name);
    for (const auto& q : an.quivers) {
      ++total;
      const auto r = check_parallelogram(an.data, extract_dimer(q));
      if (r.ok())
        ++good;
      else if (o.detail.empty())
        o.detail = name + ": " + std::to_string(r.squares) + " squares, expected " + std::to_string(r.expected_squares) + "; ";
    }
  }
  o.passed = good == total;
  o.detail += std::to_string(good) + "/" + std::to_string(total) + " dimers have 2|det| straight squares and zero diagonal class";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "conifold has one NCCR, two square faces", 1, conifold},
      {2, "C3 has one NCCR, one vertex with three loops", 1, c3},
      {3, "parallelogram (0,0),(2,1),(1,3),(-1,2) has 5 NCCRs", 300, parallelogram},
      {4, "reflexive census counts and asterisks", 1800, [] { return census(false); }},
      {5, "reflexive type sequences", 1800, [] { return census(true); }},
      {6, "reflexive mutation graphs connected", 600, connectivity},
      {7, "perfect matchings recover the polygon", 600, recovery},
      {8, "property suites", 600, properties},
      {9, "parallelogram straight and diagonal structure", 600, parallelogram_structure},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& e) {
      o = {false, e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= c.limit_seconds) {
      o.passed = false;
      o.detail += "; over the time limit";
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " -- " << o.detail << " ["
              << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_seconds
              << " s]" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
