#pragma once

// Polygon input, JSON output, SVG drawings of dimers and DOT mutation graphs.
// Rationals are written as exact "p/q" strings.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nccr/verify.hpp"

namespace nccr::io {

using json = nlohmann::ordered_json;

inline ToricData parse_polygon(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw Error(ErrorCode::InvalidInput, "expected an object with a \"points\" array");
  std::vector<IVec2> pts;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw Error(ErrorCode::InvalidInput, "each point must be a pair of integers");
    pts.push_back({p[0].get<Int>(), p[1].get<Int>()});
  }
  return ToricData::from_points(std::span<const IVec2>(pts));
}

inline ToricData read_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
  return parse_polygon(j);
}

inline json to_json(const BVector& b) { return b.entries; }
inline json to_json(const IVec3& v) { return json::array({v[0], v[1], v[2]}); }
inline json to_json(const Rational& q) { return q.get_str(); }
inline json to_json(const QVec3& v) { return json::array({v[0].get_str(), v[1].get_str(), v[2].get_str()}); }

inline json to_json(const ModifyingSet& s) {
  json j = json::array();
  for (const auto& b : s.members) j.push_back(to_json(b));
  return j;
}

inline json quiver_json(const EmbeddedQuiver& q) {
  json vs = json::array();
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    vs.push_back({{"b", to_json(q.vertices[v])}, {"kappa", to_json(q.points[v])}});
  json as = json::array();
  for (const auto& a : q.arrows)
    as.push_back({{"tail", a.tail},
                  {"head", a.head},
                  {"slack", to_json(a.slack)},
                  {"m", to_json(a.monomial)},
                  {"lift", to_json(a.lift)}});
  return {{"vertices", vs}, {"arrows", as}};
}

inline json check_json(const CheckResult& r) {
  json j = {{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}};
  if (!r.passed) j["detail"] = r.detail;
  return j;
}

/// Label of a dimer: its type-sequence polygon for reflexive inputs.
inline std::optional<std::string> dimer_label(const ToricData& data, const EmbeddedQuiver& q) {
  if (interior_points(data).size() != 1) return std::nullopt;
  try {
    return type_label(type_sequence(data, q));
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline json dimer_json(const ToricData& data, const DimerModel& d, const std::vector<PerfectMatching>& pms) {
  json j = quiver_json(d.quiver);
  j["faces_pos"] = d.faces_pos;
  j["faces_neg"] = d.faces_neg;
  json ms = json::array();
  for (const auto& p : pms) ms.push_back({{"arrows", p.arrows}, {"vector", to_json(p.nvec)}});
  j["matchings"] = ms;
  if (d.rcharge) {
    json r = json::array();
    for (const auto& x : d.rcharge->values) r.push_back(to_json(x));
    j["rcharge"] = {{"x", to_json(d.rcharge->x)}, {"values", r}};
  }
  if (interior_points(data).size() == 1) {
    try {
      const auto t = type_sequence(data, d.quiver);
      j["type"] = {{"sequence", t}, {"label", type_label(t)}};
    } catch (const Error& e) {
      j["type"] = {{"error", std::string(to_string(e.code()))}};
    }
  }
  return j;
}

// ---- SVG ---------------------------------------------------------------

namespace detail {

constexpr double kSize = 480;
constexpr double kMargin = 20;

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
  return buf;
}

inline std::string sx(const Rational& x) { return fmt(kMargin + (kSize - 2 * kMargin) * x.get_d()); }
inline std::string sy(const Rational& y) { return fmt(kSize - kMargin - (kSize - 2 * kMargin) * y.get_d()); }

/// Integer translates (dx, dy) for which a shape with this bounding box meets the closed unit square.
inline std::vector<IVec2> translates(const std::vector<QVec2>& pts) {
  Rational lo_x = pts[0][0], hi_x = pts[0][0], lo_y = pts[0][1], hi_y = pts[0][1];
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p[0]), hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]), hi_y = std::max(hi_y, p[1]);
  }
  std::vector<IVec2> out;
  for (Int dx = to_int(floor(-hi_x)); dx <= to_int(floor(1 - lo_x)); ++dx)
    for (Int dy = to_int(floor(-hi_y)); dy <= to_int(floor(1 - lo_y)); ++dy)
      if (hi_x + dx >= 0 && lo_x + dx <= 1 && hi_y + dy >= 0 && lo_y + dy <= 1) out.push_back({dx, dy});
  return out;
}

inline std::vector<QVec2> face_polygon(const EmbeddedQuiver& q, const std::vector<std::size_t>& face) {
  std::vector<QVec2> pts;
  QVec2 p = nccr::detail::project(q.points[q.arrows[face.front()].tail]);
  for (auto a : face) {
    pts.push_back(p);
    const QVec2 l = nccr::detail::project(q.arrows[a].lift);
    p = {p[0] + l[0], p[1] + l[1]};
  }
  return pts;
}

}  // namespace detail

inline std::string dimer_svg(const DimerModel& d) {
  using detail::sx;
  using detail::sy;
  const auto& q = d.quiver;
  std::ostringstream out;
  const std::string size = detail::fmt(detail::kSize);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  out << "<defs>\n<clipPath id=\"cell\"><rect x=\"" << sx(0) << "\" y=\"" << sy(1) << "\" width=\"" << detail::fmt(detail::kSize - 2 * detail::kMargin)
      << "\" height=\"" << detail::fmt(detail::kSize - 2 * detail::kMargin) << "\"/></clipPath>\n";
  out << "<marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">"
         "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker>\n</defs>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  out << "<g clip-path=\"url(#cell)\">\n";
  for (const auto& f : d.faces_pos) {
    const auto poly = detail::face_polygon(q, f);
    for (const auto& t : detail::translates(poly)) {
      out << "<polygon fill=\"#dbe5f4\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < poly.size(); ++i)
        out << (i ? " " : "") << sx(poly[i][0] + t[0]) << ',' << sy(poly[i][1] + t[1]);
      out << "\"/>\n";
    }
  }
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const QVec2 p = nccr::detail::project(q.points[q.arrows[a].tail]);
    const QVec2 l = nccr::detail::project(q.arrows[a].lift);
    const std::vector<QVec2> seg = {p, {p[0] + l[0], p[1] + l[1]}};
    for (const auto& t : detail::translates(seg))
      out << "<line x1=\"" << sx(seg[0][0] + t[0]) << "\" y1=\"" << sy(seg[0][1] + t[1]) << "\" x2=\"" << sx(seg[1][0] + t[0])
          << "\" y2=\"" << sy(seg[1][1] + t[1]) << "\" stroke=\"#333\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << sx(0) << "\" y=\"" << sy(1) << "\" width=\"" << detail::fmt(detail::kSize - 2 * detail::kMargin)
      << "\" height=\"" << detail::fmt(detail::kSize - 2 * detail::kMargin) << "\" fill=\"none\" stroke=\"#999\"/>\n";
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    const QVec2 p = nccr::detail::project(q.points[v]);
    out << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"9\" fill=\"white\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << sx(p[0]) << "\" y=\"" << sy(p[1]) << "\" font-family=\"sans-serif\" font-size=\"10\" "
        << "text-anchor=\"middle\" dominant-baseline=\"central\">" << v << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---- DOT ---------------------------------------------------------------

inline std::string mutation_dot(const MutationGraph& g, const std::vector<std::string>& labels,
                                const std::vector<bool>& asterisk) {
  std::ostringstream out;
  out << "digraph mutation {\n";
  for (std::size_t n = 0; n < g.nodes; ++n)
    out << "  n" << n << " [label=\"" << labels[n] << (asterisk[n] ? "*" : "") << "\"];\n";
  for (const auto& e : g.edges) out << "  n" << e.from << " -> n" << e.to << " [label=\"v" << e.vertex << "\"];\n";
  out << "}\n";
  return out.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace nccr::io
