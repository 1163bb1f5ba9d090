#include "fvslab/battery.hpp"

#include "fvslab/generators.hpp"

namespace fvslab {

namespace {

Vector ones(int n) { return Vector::Constant(n, Rational(1)); }

Vector point(std::initializer_list<Rational> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Rational& r : values) v(i++) = r;
  return v;
}

std::string text(const Vector& v) { return to_json(v).dump(); }

// Objective over the x block of f, zero elsewhere.
Vector x_objective(const Formulation& f, const Vector& c) {
  Vector full = zeros(f.lp.num_variables());
  for (std::size_t v = 0; v < f.x.size(); ++v) full(f.x[v]) = c(static_cast<Eigen::Index>(v));
  return full;
}

void figure1_gap(RunReport& report, const Caps& caps) {
  Json rows = Json::array();
  for (int n : {6, 8, 10}) {
    const std::vector<ModelPart> parts{ModelPart::Orientation, ModelPart::TwoPseudotreeCover};
    const IntegralityGap gap = integrality_gap(figure1(n), Problem::Pfds, parts, caps);
    const std::string tag = "figure1(" + std::to_string(n) + ")";
    report.check(tag + " pfds optimum is n-1", gap.ip == n - 1, "ip " + gap.ip.str());
    report.check(tag + " orient+2pt value at most n/2", gap.lp <= Rational(n, 2), "lp " + gap.lp.str());
    report.check(tag + " ratio at least 2(n-1)/n", gap.ratio && *gap.ratio >= Rational(2 * (n - 1), n),
                 gap.ratio ? gap.ratio->str() : "undefined");
    Json row = to_json(gap);
    row["n"] = n;
    rows.push_back(std::move(row));
  }
  report.results["figure1"] = std::move(rows);
}

void butterfly_weak_density(RunReport& report, const BatteryOptions& options, const Caps& caps) {
  const Graph g = butterfly();
  Formulation f = build_weak_density(g, caps);
  if (options.corrupt) {
    for (const Constraint& c : f.lp.constraints()) {
      if (c.label != "wd{0,1,2,3,4}") continue;
      f.lp.add_constraint(c.terms, c.relation, c.rhs + 1, "corrupted");
      break;
    }
  }
  const std::vector<Vector> obj{x_objective(f, ones(5))};
  const LpSolution sol = solve_lexicographic(f.lp, obj);
  const Vector x = f.x_values(sol.values);
  report.check("butterfly wd optimum 1/3", sol.optimal() && sol.objective == Rational(1, 3), sol.objective.str());
  report.check("butterfly wd vertex (1/3,0,0,0,0)", x == point({Rational(1, 3), 0, 0, 0, 0}), text(x));
  report.check("butterfly wd optimum unique", has_unique_optimum(f.lp, obj));

  const std::vector<ModelPart> wd{ModelPart::WeakDensity};
  const IntegralityGap gap = integrality_gap(g, Problem::Pfds, wd, caps);
  report.check("butterfly pfds gap over wd is 3", gap.ratio && *gap.ratio == 3, gap.ratio ? gap.ratio->str() : "undefined");
  report.results["butterfly_wd"] = {{"value", sol.objective.str()}, {"point", to_json(x)}, {"gap", to_json(gap)}};
}

void butterfly_orientation(RunReport& report, const Caps& caps) {
  const auto r = extreme_point({"butterfly", butterfly()}, ScanKind::Orientation, ones(5), caps);
  report.check("butterfly orient minimal vertex max x = 1/3", r.max_x == Rational(1, 3), r.max_x.str());
  report.check("butterfly orient point is a certified minimal vertex", r.is_vertex && r.is_minimal);
  report.results["butterfly_orient"] = to_json(r);
}

void k4_cycle_cover(RunReport& report, const Caps& caps) {
  const Graph g = complete(4);
  Formulation f = build_weak_density(g, caps);
  add_cycle_cover_enumerated(f, g, caps);
  const std::vector<Vector> obj{x_objective(f, ones(4))};
  const LpSolution sol = solve_lexicographic(f.lp, obj);
  const Vector x = f.x_values(sol.values);
  report.check("K4 wd+cc optimum 4/3", sol.optimal() && sol.objective == Rational(4, 3), sol.objective.str());
  report.check("K4 wd+cc vertex all 1/3", x == Vector::Constant(4, Rational(1, 3)), text(x));
  report.check("K4 wd+cc optimum unique", has_unique_optimum(f.lp, obj));
  const auto opt = brute_force(g, Problem::Fvs, caps);
  report.check("K4 fvs optimum 2", opt && opt->value == 2, opt ? opt->value.str() : "none");
  report.results["k4_wd_cc"] = {{"value", sol.objective.str()}, {"point", to_json(x)}};
}

void k5_point(RunReport& report, const Caps& caps) {
  const Graph g = complete(5);
  const Vector x = point({Rational(7, 12), Rational(7, 12), Rational(1, 12), 0, 0});
  const Membership wd = membership(g, Polyhedron::WeakDensity, x, caps);
  const Membership sub = membership(g, Polyhedron::WdSubgraphs, x, caps);
  report.check("K5 point lies in the wd polyhedron", wd.member,
               wd.witness ? "violated row " + to_json(*wd.witness).dump() : std::string{});
  report.check("K5 point lies outside the wd-subgraph polyhedron", !sub.member);
  const auto cut = separate_wd_subgraphs(g, x, caps);
  std::vector<EdgeId> without_01;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!(g.edge(e) == Edge{0, 1})) without_01.push_back(e);
  }
  const bool shape = cut && cut->vertices == all_vertices(g) && cut->edges == without_01;
  report.check("K5 separation returns K5 minus edge 01", shape, cut ? to_json(*cut).dump() : "no cut");
  report.check("K5 separation lhs 46/12", cut && cut->lhs == Rational(46, 12), cut ? "lhs " + cut->lhs.str() : "no cut");
  report.results["k5_point"] = {{"wd_member", wd.member},
                                {"wd_witness", wd.witness ? to_json(*wd.witness) : Json(nullptr)},
                                {"cut", cut ? to_json(*cut) : Json(nullptr)}};
}

void labelling_mapping(RunReport& report, const Caps& caps) {
  Json rows = Json::array();
  for (const auto& [name, g] : std::vector<std::pair<std::string, Graph>>{{"C3", cycle(3)}, {"butterfly", butterfly()}, {"K4", complete(4)}}) {
    const SfvsInstance inst = reduce_fvs_to_sfvs(g);
    const CmFormulation cm = build_cm_lp(g, inst, CycleRealization::Distance);
    const LpSolution sol = solve_lexicographic(cm.model.lp, cost_objectives(g, cm.model));
    const OrientationPoint p = extract_cm_solution(g, inst, cm, sol.values);
    const bool orient = sol.optimal() && in_orientation_polyhedron(g, p);
    const bool cc = sol.optimal() && membership(g, Polyhedron::CycleCover, p.x, caps).member;
    report.check(name + " labelling LP point maps into orient and cycle cover", orient && cc, "value " + sol.objective.str());
    rows.push_back({{"graph", name}, {"value", sol.objective.str()}, {"x", to_json(p.x)}});
  }
  report.results["labelling"] = std::move(rows);
}

void small_traces(RunReport& report, const Caps& caps) {
  const Graph b = butterfly();
  const PrimalDualResult pd = primal_dual_fvs(b);
  report.check("butterfly primal-dual cost 1 with verified certificate", pd.primal_cost == 1 && verify_certificate(b, pd).ok(),
               "dual " + pd.dual_value.str());
  const IterativeRoundingResult ir = iterative_rounding_pfds(b);
  report.check("butterfly iterative rounding cost 1", ir.cost == 1, "cost " + ir.cost.str());
  const auto k4 = brute_force(complete(4), Problem::Fvs, caps);
  report.results["traces"] = {{"primal_dual", to_json(pd)}, {"iterative_rounding", to_json(ir)},
                              {"k4_fvs", k4 ? k4->value.str() : "none"}};
}

}  // namespace

RunReport reference_battery(const BatteryOptions& options, const Caps& caps) {
  const Stopwatch clock;
  RunReport report;
  report.command = "verify-paper";
  report.parameters = {{"corrupt", options.corrupt}};
  figure1_gap(report, caps);
  butterfly_weak_density(report, options, caps);
  butterfly_orientation(report, caps);
  k4_cycle_cover(report, caps);
  k5_point(report, caps);
  labelling_mapping(report, caps);
  small_traces(report, caps);
  report.wall_seconds = clock.seconds();
  return report;
}

}  // namespace fvslab
