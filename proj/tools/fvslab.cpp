#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "fvslab/battery.hpp"
#include "fvslab/generators.hpp"

using namespace fvslab;

namespace {

enum class FailOn { Theorem, Conjecture, None };

struct Global {
  std::string format = "text";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string fail_on = "theorem";
};

struct LoadedGraph {
  Graph graph;
  std::string digest;
};

LoadedGraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return {parse_graph(buf.str()), digest(buf.str())};
}

Vector parse_point(const std::string& text, int n) {
  std::vector<Rational> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) values.push_back(Rational::parse(item));
  if (static_cast<int>(values.size()) != n) throw ParseError("point needs " + std::to_string(n) + " coordinates");
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = values[static_cast<std::size_t>(i)];
  return x;
}

FailOn parse_fail_on(const std::string& s) {
  if (s == "theorem") return FailOn::Theorem;
  if (s == "conjecture") return FailOn::Conjecture;
  if (s == "none") return FailOn::None;
  throw ParseError("--fail-on takes theorem, conjecture or none");
}

int emit(const RunReport& report, const Global& g, const std::string& extra_text = {}) {
  if (g.format == "json") {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << extra_text << report.to_text();
  }
  switch (parse_fail_on(g.fail_on)) {
    case FailOn::None: return 0;
    case FailOn::Conjecture: return report.all_passed() ? 0 : 1;
    case FailOn::Theorem: return report.hard_passed() ? 0 : 1;
  }
  return 1;
}

RunReport cmd_solve(const std::string& problem, const std::string& algorithm, const std::string& path, const Caps& caps) {
  const LoadedGraph in = load(path);
  const Graph& g = in.graph;
  RunReport r;
  r.command = "solve";
  r.input_digest = in.digest;
  r.parameters = {{"problem", problem}, {"algorithm", algorithm}, {"graph", path}};
  if (algorithm == "primal-dual") {
    if (problem != "fvs") throw PreconditionError("primal-dual solves fvs only");
    const PrimalDualResult pd = primal_dual_fvs(g);
    const CertificateReport cert = verify_certificate(g, pd);
    r.results = {{"set", pd.fvs}, {"cost", pd.primal_cost.str()}, {"dual", pd.dual_value.str()},
                 {"trace", to_json(pd)}, {"certificate", to_json(cert)}};
    r.check("solution is an fvs", is_fvs(g, pd.fvs));
    r.check("dual certificate verified", cert.ok(), cert.failures.empty() ? "" : cert.failures.front());
  } else if (algorithm == "iter-round") {
    if (problem != "pfds") throw PreconditionError("iter-round solves pfds only");
    const IterativeRoundingResult ir = iterative_rounding_pfds(g);
    r.results = {{"set", ir.set}, {"cost", ir.cost.str()}, {"bound", (Rational(3) * ir.first_lp).str()}, {"trace", to_json(ir)}};
    r.check("solution is a pfds", is_pfds(g, ir.set));
    r.check("cost within 3 times the first LP value", ir.within_factor);
  } else if (algorithm == "brute") {
    Problem p = problem == "fvs" ? Problem::Fvs : problem == "pfds" ? Problem::Pfds : problem == "mc2pt" ? Problem::Mc2pt
                                                                                                        : throw ParseError("unknown problem " + problem);
    const auto opt = brute_force(g, p, caps);
    if (!opt) throw PreconditionError("no finite-cost solution");
    r.results = {{"set", opt->set}, {"cost", opt->value.str()}};
    r.check("solution verified", p == Problem::Fvs ? is_fvs(g, opt->set) : p == Problem::Pfds ? is_pfds(g, opt->set) : true);
  } else {
    throw ParseError("unknown algorithm " + algorithm);
  }
  return r;
}

RunReport cmd_lp(const std::vector<std::string>& formulation, const std::string& path, bool log, const Caps& caps) {
  const LoadedGraph in = load(path);
  const Graph& g = in.graph;
  std::vector<ModelPart> parts;
  for (const auto& f : formulation) parts.push_back(parse_model_part(f));
  const CuttingPlaneResult cp = cutting_plane_solve(g, parts, caps);
  RunReport r;
  r.command = "lp";
  r.input_digest = in.digest;
  r.parameters = {{"formulation", formulation}, {"graph", path}};
  if (!cp.solution.optimal()) {
    r.results = {{"status", to_string(cp.solution.status)}};
    r.check("LP solved", false, to_string(cp.solution.status));
    return r;
  }
  const Vector x = cp.formulation.x_values(cp.solution.values);
  const bool vertex = is_vertex(cp.formulation.lp, cp.solution.values);
  const bool minimal = is_minimal_point(cp.formulation.lp, cp.solution.values);
  Json stages = Json::array();
  for (const Rational& v : cp.solution.objective_values) stages.push_back(v.str());
  r.results = {{"value", cp.solution.objective_values.back().str()},
               {"stages", std::move(stages)},
               {"x", to_json(x)},
               {"is_vertex", vertex},
               {"is_minimal", minimal},
               {"rounds", cp.iterations},
               {"cuts", cp.log.size()}};
  if (log) {
    Json cuts = Json::array();
    for (const auto& e : cp.log) cuts.push_back(to_json(e));
    r.results["cut_log"] = std::move(cuts);
  }
  if (g.has_infinite_cost()) {
    r.check("no weight on infinite-cost vertices", cp.solution.objective_values.front().is_zero());
  }
  r.check("final point is a vertex", vertex);
  return r;
}

struct ScanSpec {
  std::string kind;
  int all_graphs_n = 0;
  int random = 0;
  int n = 8;
  double p = 0.5;
  std::string graph;
  int objectives = 20;
};

std::vector<ScanInstance> scan_instances(const ScanSpec& spec, ScanKind kind, std::uint64_t seed, std::string& digest_out) {
  std::vector<ScanInstance> corpus;
  if (!spec.graph.empty()) {
    LoadedGraph in = load(spec.graph);
    digest_out = in.digest;
    corpus.push_back({spec.graph, std::move(in.graph)});
  } else if (spec.all_graphs_n > 0) {
    corpus = scan_corpus(spec.all_graphs_n);
  } else if (spec.random > 0) {
    std::mt19937_64 rng(seed);
    for (int tries = 0; static_cast<int>(corpus.size()) < spec.random; ++tries) {
      if (tries > 1000 * spec.random) throw PreconditionError("random corpus: too few graphs meet the scan precondition");
      const std::uint64_t s = rng();
      Graph g = erdos_renyi(spec.n, spec.p, s);
      if (kind == ScanKind::StrongDensity ? is_acyclic(g) : is_pseudoforest(g)) continue;
      corpus.push_back({"er-" + std::to_string(s), std::move(g)});
    }
  } else {
    throw ParseError("scan needs --graph, --all-graphs-n or --random");
  }
  return corpus;
}

RunReport cmd_scan(const ScanSpec& spec, const Global& global, const Caps& caps, std::string& text) {
  const ScanKind kind = parse_scan_kind(spec.kind);
  RunReport r;
  r.command = "scan";
  r.seed = global.seed;
  r.parameters = {{"kind", spec.kind},      {"all_graphs_n", spec.all_graphs_n}, {"random", spec.random}, {"n", spec.n},
                  {"p", spec.p},            {"graph", spec.graph},               {"objectives", spec.objectives},
                  {"jobs", global.jobs}};
  const auto corpus = scan_instances(spec, kind, global.seed, r.input_digest);
  ScanOptions options;
  options.random_objectives = spec.objectives;
  options.seed = global.seed;
  options.jobs = global.jobs;
  const auto reports = extreme_point_scan(corpus, kind, options, caps);

  Json all = Json::array();
  std::vector<std::vector<std::string>> rows;
  int violations = 0;
  int findings = 0;
  Rational smallest = reports.empty() ? Rational(0) : reports.front().max_x;
  for (const auto& rep : reports) {
    all.push_back(to_json(rep));
    smallest = std::min(smallest, rep.max_x);
    violations += rep.theorem_violation() ? 1 : 0;
    findings += rep.conjecture_finding() ? 1 : 0;
    if (rep.theorem_violation() || rep.conjecture_finding() || reports.size() <= 25) {
      rows.push_back({rep.graph_id, to_string(rep.kind), rep.max_x.str(), to_string(rep.threshold), rep.is_vertex ? "yes" : "no",
                      rep.is_minimal ? "yes" : "no"});
    }
  }
  r.results = {{"instances", corpus.size()},
               {"reports", reports.size()},
               {"smallest_max_x", smallest.str()},
               {"theorem_violations", violations},
               {"conjecture_findings", findings}};
  if (kind == ScanKind::StrongDensity) {
    r.check("every sd vertex optimum has a coordinate >= 1/2", findings == 0, std::to_string(findings) + " findings", true);
  } else {
    r.check("every " + spec.kind + " vertex optimum has a coordinate >= 1/3", violations == 0,
            std::to_string(violations) + " violations");
  }
  if (!rows.empty()) text = format_table({"graph", "kind", "max x", "threshold", "vertex", "minimal"}, rows);
  r.results["extreme_points"] = std::move(all);
  return r;
}

RunReport cmd_separate(const std::string& family, const std::string& point, const std::string& path, const Caps& caps) {
  const LoadedGraph in = load(path);
  const Graph& g = in.graph;
  const Vector x = parse_point(point, g.num_vertices());
  const Polyhedron p = parse_polyhedron(family);
  RunReport r;
  r.command = "separate";
  r.input_digest = in.digest;
  r.parameters = {{"family", family}, {"point", to_json(x)}, {"graph", path}};
  std::optional<ViolatedConstraint> cut;
  switch (p) {
    case Polyhedron::CycleCover: cut = separate_cycle_cover(g, x); break;
    case Polyhedron::TwoPseudotreeCover: cut = separate_2pt_cover(g, x); break;
    case Polyhedron::WeakDensity: cut = separate_weak_density(g, x, caps); break;
    case Polyhedron::StrongDensity: cut = separate_strong_density(g, x, caps); break;
    case Polyhedron::WdSubgraphs: cut = separate_wd_subgraphs(g, x, caps); break;
    case Polyhedron::OrientationProjection: break;
  }
  const Membership m = membership(g, p, x, caps);
  r.results = {{"member", m.member}, {"cut", cut ? to_json(*cut) : Json(nullptr)}};
  if (p != Polyhedron::OrientationProjection) {
    r.check("oracle agrees with enumeration", cut.has_value() != m.member);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact LP toolkit for feedback vertex set and pseudoforest deletion"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--format", global.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", global.seed, "seed for randomized corpora and objectives");
  app.add_option("--jobs", global.jobs, "worker threads for scans")->check(CLI::PositiveNumber);
  app.add_option("--fail-on", global.fail_on, "theorem, conjecture or none")->check(CLI::IsMember({"theorem", "conjecture", "none"}));

  std::string problem, algorithm, graph_path;
  auto* solve = app.add_subcommand("solve", "run an algorithm on a graph file");
  solve->add_option("problem", problem, "fvs, pfds or mc2pt")->required();
  solve->add_option("algorithm", algorithm, "primal-dual, iter-round or brute")->required();
  solve->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);

  std::vector<std::string> also;
  bool cut_log = false;
  auto* lp = app.add_subcommand("lp", "solve an LP relaxation by cutting planes");
  std::string first_part;
  lp->add_option("--formulation", first_part, "sd, wd, wd-sub, orient, cc, 2pt, orient-fvs, cm")->required();
  lp->add_option("--and", also, "further model parts, repeatable")->allow_extra_args(false);
  lp->add_flag("--cut-log", cut_log, "include the cut log");
  lp->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);

  ScanSpec scan_spec;
  auto* scan = app.add_subcommand("scan", "probe extreme points for large coordinates");
  scan->add_option("kind", scan_spec.kind, "wd, orient or sd")->required()->check(CLI::IsMember({"wd", "orient", "sd"}));
  scan->add_option("--all-graphs-n", scan_spec.all_graphs_n, "every connected non-pseudoforest graph up to this size (<= 6)");
  scan->add_option("--random", scan_spec.random, "number of random graphs");
  scan->add_option("--n", scan_spec.n, "vertices of random graphs");
  scan->add_option("--p", scan_spec.p, "edge probability of random graphs");
  scan->add_option("--graph", scan_spec.graph, "single graph file")->check(CLI::ExistingFile);
  scan->add_option("--objectives", scan_spec.objectives, "random objectives per graph besides all-ones");

  std::string family, point;
  auto* separate = app.add_subcommand("separate", "run a separation oracle on a point");
  separate->add_option("family", family, "cc, 2pt, wd, sd, wd-sub")->required();
  separate->add_option("--point", point, "comma-separated fractions")->required();
  separate->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);

  bool corrupt = false;
  auto* verify = app.add_subcommand("verify-paper", "run the reference battery of worked examples");
  verify->add_flag("--corrupt", corrupt, "negative control with a corrupted constraint");

  std::string gen_kind;
  GenerateParams params;
  auto* generate_cmd = app.add_subcommand("generate", "print a graph in the text format");
  generate_cmd->add_option("kind", gen_kind, "butterfly, complete, cycle, figure1, erdos-renyi")->required();
  generate_cmd->add_option("--n", params.n);
  generate_cmd->add_option("--p", params.p);

  CLI11_PARSE(app, argc, argv);

  try {
    const Caps caps = Caps::from_env();
    const Stopwatch clock;
    RunReport report;
    std::string text;
    if (*solve) {
      report = cmd_solve(problem, algorithm, graph_path, caps);
    } else if (*lp) {
      std::vector<std::string> parts{first_part};
      parts.insert(parts.end(), also.begin(), also.end());
      report = cmd_lp(parts, graph_path, cut_log, caps);
    } else if (*scan) {
      report = cmd_scan(scan_spec, global, caps, text);
    } else if (*separate) {
      report = cmd_separate(family, point, graph_path, caps);
    } else if (*verify) {
      BatteryOptions options;
      options.corrupt = corrupt;
      report = reference_battery(options, caps);
    } else if (*generate_cmd) {
      params.seed = global.seed;
      std::cout << format_graph(generate(gen_kind, params));
      return 0;
    }
    report.wall_seconds = clock.seconds();
    if (global.format == "text" && report.results.contains("extreme_points")) report.results.erase("extreme_points");
    return emit(report, global, text);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
