// Command-line front end: classify toric NCCRs of a lattice polygon.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "nccr/io.hpp"

namespace {

using namespace nccr;
using io::json;

struct Options {
  bool mod_opposite = true;
  std::uint64_t seed = 1;
  long max_steps = 1'000'000;
  std::vector<Int> x;
  std::string witness;
  std::string svg_dir;
  std::string json_path;
  std::string dot_path;
  std::size_t nccr = 0;
  std::size_t vertex = 0;
  std::size_t vectors = 10000;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::NonConvex:
    case ErrorCode::NonPrimitive:
    case ErrorCode::Duplicate:
    case ErrorCode::NonPrimitiveImage:
    case ErrorCode::HeightNotPreserved:
    case ErrorCode::NotInterior:
      return true;
    default:
      return false;
  }
}

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty())
    std::cout << text;
  else
    io::write_file(path, text);
}

std::optional<IVec3> covector(const Options& o) {
  if (o.x.empty()) return std::nullopt;
  if (o.x.size() != 3) throw InputError("--x needs three integers");
  return IVec3{o.x[0], o.x[1], o.x[2]};
}

std::size_t class_of_set(const Analysis& an, std::size_t j, bool mod_opposite) {
  const std::size_t raw = an.classes.raw_class_of[j];
  return mod_opposite ? an.classes.merged_of_raw[raw] : raw;
}

bool asterisk_of(const Analysis& an, std::size_t cls, bool mod_opposite) {
  return mod_opposite ? an.classes.classes[cls].asterisk : an.asterisk_of_raw(cls);
}

int cm_list(const ToricData& data, const Options& o) {
  if (!o.witness.empty()) {
    std::vector<Int> b;
    std::stringstream ss(o.witness);
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        b.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw InputError("bad entry in --witness: " + item);
      }
    }
    if (b.size() != data.size()) throw InputError("--witness needs " + std::to_string(data.size()) + " entries");
    const BVector v(b);
    const auto w = is_cm(data, v);
    json j = {{"b", io::to_json(v)}, {"normalized", io::to_json(data.normalized(v))}, {"cm", w.cm}};
    if (!w.cm) j["witness"] = {{"m", io::to_json(w.point)}, {"signature", to_string(w.signature)}};
    emit(j, o.json_path);
    return 0;
  }
  json classes = json::array();
  for (const auto& b : enumerate_cm(data, o.max_steps)) classes.push_back(io::to_json(b));
  emit({{"rays", data.rays()}, {"classes", classes}}, o.json_path);
  return 0;
}

int mm_sets(const ToricData& data, const Options& o) {
  const auto mm = enumerate_mm(data, enumerate_cm(data, o.max_steps));
  json sets = json::array();
  for (const auto& s : mm) sets.push_back(io::to_json(s));
  emit({{"size", mm.empty() ? 0 : mm.front().size()}, {"sets", sets}}, o.json_path);
  return 0;
}

int nccrs(const ToricData& data, const Options& o) {
  const Analysis an = analyze(data, o.max_steps);
  const auto reps = an.representatives(o.mod_opposite);
  json list = json::array();
  for (std::size_t c = 0; c < reps.size(); ++c) {
    const std::size_t j = reps[c];
    json e = {{"index", c}, {"set", io::to_json(an.mm[j])}, {"asterisk", asterisk_of(an, c, o.mod_opposite)}};
    if (const auto label = io::dimer_label(data, an.quivers[j])) e["label"] = *label;
    e.update(io::quiver_json(an.quivers[j]));
    list.push_back(e);
  }
  emit({{"rays", data.rays()},
        {"mod_opposite", o.mod_opposite},
        {"count", reps.size()},
        {"raw_count", an.classes.raw_reps.size()},
        {"maximal_modifying_sets", an.mm.size()},
        {"nccrs", list}},
       o.json_path);
  return 0;
}

int dimers(const ToricData& data, const Options& o, const std::string& stem) {
  const Analysis an = analyze(data, o.max_steps);
  const auto reps = an.representatives(o.mod_opposite);
  const auto x = covector(o);
  if (!o.svg_dir.empty()) std::filesystem::create_directories(o.svg_dir);
  json list = json::array();
  for (std::size_t c = 0; c < reps.size(); ++c) {
    DimerModel d = extract_dimer(an.quivers[reps[c]]);
    d.rcharge = find_rcharge(data, d, x);
    auto pms = perfect_matchings(d);
    assign_pm_vectors(d, pms);
    recovered_polygon(data, pms);
    json e = {{"index", c}, {"asterisk", asterisk_of(an, c, o.mod_opposite)}};
    e.update(io::dimer_json(data, d, pms));
    list.push_back(e);
    if (!o.svg_dir.empty())
      io::write_file((std::filesystem::path(o.svg_dir) / (stem + "-nccr" + std::to_string(c) + ".svg")).string(), io::dimer_svg(d));
  }
  emit({{"rays", data.rays()}, {"mod_opposite", o.mod_opposite}, {"dimers", list}}, o.json_path);
  return 0;
}

int mutate_cmd(const ToricData& data, const Options& o) {
  const Analysis an = analyze(data, o.max_steps);
  const auto reps = an.representatives(o.mod_opposite);
  if (o.nccr >= reps.size()) throw InputError("--nccr out of range (" + std::to_string(reps.size()) + " classes)");
  const std::size_t j = reps[o.nccr];
  const auto& q = an.quivers[j];
  if (o.vertex >= q.vertices.size()) throw InputError("--vertex out of range (" + std::to_string(q.vertices.size()) + " vertices)");
  const ModifyingSet m = mutate_any(data, an.mm[j], q, o.vertex, &an.mm);
  const std::size_t pos = static_cast<std::size_t>(std::lower_bound(an.mm.begin(), an.mm.end(), m) - an.mm.begin());
  json j_out = {{"from", o.nccr},
                {"vertex", o.vertex},
                {"mutated_vertex", io::to_json(q.vertices[o.vertex])},
                {"set", io::to_json(m)},
                {"class", class_of_set(an, pos, o.mod_opposite)}};
  j_out.update(io::quiver_json(build_quiver(data, m)));
  emit(j_out, o.json_path);
  return 0;
}

int mutation_graph_cmd(const ToricData& data, const Options& o) {
  const Analysis an = analyze(data, o.max_steps);
  const auto g = mutation_graph(data, an.mm, an.quivers, an.classes);
  std::vector<std::string> labels;
  std::vector<bool> asterisk;
  json edges = json::array();
  for (std::size_t c = 0; c < g.nodes; ++c) {
    const auto& cls = an.classes.classes[c];
    labels.push_back(io::dimer_label(data, an.quivers[cls.rep]).value_or("c" + std::to_string(c)));
    asterisk.push_back(cls.asterisk);
  }
  for (const auto& e : g.edges) edges.push_back({e.from, e.vertex, e.to});
  if (!o.dot_path.empty()) io::write_file(o.dot_path, io::mutation_dot(g, labels, asterisk));
  emit({{"nodes", g.nodes}, {"labels", labels}, {"asterisk", asterisk}, {"edges", edges}, {"connected", g.connected}},
       o.json_path);
  return 0;
}

int verify_cmd(const ToricData& data, const Options& o, const std::string& stem) {
  const Analysis an = analyze(data, o.max_steps);
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.random_vectors = o.vectors;
  const auto results = verify_all(an, vo);
  json checks = json::array();
  const CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    checks.push_back(io::check_json(r));
    if (!r.passed && !first_failure) first_failure = &r;
  }
  emit({{"input", stem}, {"seed", o.seed}, {"passed", first_failure == nullptr}, {"checks", checks}}, o.json_path);
  if (first_failure) {
    std::cerr << "verify: check " << first_failure->name << " failed: " << first_failure->detail << "\n";
    return 1;
  }
  return 0;
}

int dispatch(const std::string& cmd, const ToricData& data, const Options& o, const std::string& stem) {
  if (cmd == "cm-list") return cm_list(data, o);
  if (cmd == "mm-sets") return mm_sets(data, o);
  if (cmd == "nccrs") return nccrs(data, o);
  if (cmd == "dimers") return dimers(data, o, stem);
  if (cmd == "mutate") return mutate_cmd(data, o);
  if (cmd == "mutation-graph") return mutation_graph_cmd(data, o);
  if (cmd == "verify") return verify_cmd(data, o, stem);
  throw InputError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric noncommutative crepant resolutions of 3-dimensional Gorenstein cones"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string input;
  std::vector<Int> matrix;
  std::string then = "nccrs";

  app.add_flag("--mod-opposite,!--no-mod-opposite", o.mod_opposite, "Identify an NCCR with its opposite (default on)");
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--max-steps", o.max_steps, "Cap on interval jumps during CM enumeration");
  app.add_option("--x", o.x, "R-charge covector a,b,c")->delimiter(',')->expected(3);

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Polygon JSON {\"points\": [[x,y], ...]}")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* cm = with_input(app.add_subcommand("cm-list", "CM classes of reflexive modules"));
  cm->add_option("--witness", o.witness, "Test one vector b1,...,bk and print a witness");
  cm->add_option("--json", o.json_path, "Write output here instead of stdout");
  with_input(app.add_subcommand("mm-sets", "Maximal modifying sets"))->add_option("--json", o.json_path, "Write output here instead of stdout");
  with_input(app.add_subcommand("nccrs", "NCCR quivers up to affine equivalence"))->add_option("--json", o.json_path, "Write output here instead of stdout");
  auto* dm = with_input(app.add_subcommand("dimers", "Dimer models, matchings, R-charges and type sequences"));
  dm->add_option("--svg", o.svg_dir, "Directory for <input>-nccr<i>.svg drawings");
  dm->add_option("--json", o.json_path, "Write output here instead of stdout");
  auto* mu = with_input(app.add_subcommand("mutate", "Mutate one NCCR at one vertex"));
  mu->add_option("--nccr", o.nccr, "Class index as listed by nccrs")->required();
  mu->add_option("--vertex", o.vertex, "Vertex index in that class's quiver")->required();
  mu->add_option("--json", o.json_path, "Write output here instead of stdout");
  auto* mg = with_input(app.add_subcommand("mutation-graph", "Mutation graph over classes modulo opposite"));
  mg->add_option("--dot", o.dot_path, "Write a DOT graph");
  mg->add_option("--json", o.json_path, "Write output here instead of stdout");
  auto* ve = with_input(app.add_subcommand("verify", "Run every invariant suite; exit 1 on the first failure"));
  ve->add_option("--json", o.json_path, "Write the report here instead of stdout");
  ve->add_option("--vectors", o.vectors, "Random vectors for the CM oracle check");
  auto* qu = with_input(app.add_subcommand("quotient", "Apply an integer matrix to the cone, then run another command"));
  qu->add_option("--matrix", matrix, "Nine integers, row major; last row must be 0,0,1")->delimiter(',')->expected(9)->required();
  qu->add_option("--then", then, "Command to run on the quotient")
      ->check(CLI::IsMember({"cm-list", "mm-sets", "nccrs", "dimers", "mutation-graph", "verify"}));
  qu->add_option("--svg", o.svg_dir, "Directory for SVG drawings");
  qu->add_option("--dot", o.dot_path, "Write a DOT graph");
  qu->add_option("--json", o.json_path, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    ToricData data = io::read_polygon(input);
    std::string stem = std::filesystem::path(input).stem().string();
    if (cmd == "quotient") {
      IMat3 u;
      for (std::size_t i = 0; i < 9; ++i) u[i / 3][i % 3] = matrix[i];
      data = quotient_cone(u, data);
      stem += "-quotient";
      return dispatch(then, data, o, stem);
    }
    return dispatch(cmd, data, o, stem);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
