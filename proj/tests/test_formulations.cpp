#include "doctest.h"

#include <random>

#include "fvslab/formulations.hpp"
#include "fvslab/generators.hpp"

using namespace fvslab;

namespace {

Rational lp_optimum(const Graph& g, const Formulation& f) {
  const auto sol = solve_lexicographic(f.lp, cost_objectives(g, f));
  REQUIRE(sol.optimal());
  return sol.objective_values.back();
}

// Cheapest FVS by subset enumeration.
Rational fvs_optimum(const Graph& g) {
  std::optional<Rational> best;
  for (VertexMask m = 0; m < (VertexMask{1} << g.num_vertices()); ++m) {
    const VertexSet s = mask_to_set(m);
    if (!is_fvs(g, s)) continue;
    const auto c = set_cost(g, s);
    if (c && (!best || *c < *best)) best = c;
  }
  return *best;
}

std::vector<VertexSet> all_fvs(const Graph& g) {
  std::vector<VertexSet> out;
  for (VertexMask m = 0; m < (VertexMask{1} << g.num_vertices()); ++m) {
    if (is_fvs(g, mask_to_set(m))) out.push_back(mask_to_set(m));
  }
  return out;
}

bool x_feasible(const Formulation& f, const std::vector<Rational>& x) {
  std::map<int, Rational> fixed;
  for (std::size_t v = 0; v < x.size(); ++v) fixed[f.x[v]] = x[v];
  const FixedProgram fp = fix_variables(f.lp, fixed);
  return !fp.trivially_infeasible && is_feasible(fp.lp);
}

Graph random_connected(std::mt19937_64& rng, int n) {
  for (;;) {
    Graph g = erdos_renyi(n, 0.55, rng());
    if (is_connected(g) && !is_acyclic(g)) return g.with_costs(random_costs(n, rng));
  }
}

}  // namespace

TEST_CASE("weak density row on the whole butterfly") {
  const Graph g = butterfly();
  const auto rows = weak_density_rows(g);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const DensityRow& r) { return r.set == 0b11111; });
  REQUIRE(it != rows.end());
  CHECK(it->rhs == 1);
  const std::vector<std::pair<VertexId, int>> expected{{0, 3}, {1, 1}, {2, 1}, {3, 1}, {4, 1}};
  CHECK(it->coefficients == expected);
}

TEST_CASE("density rows of K4") {
  const Graph g = complete(4);
  const auto wd = weak_density_rows(g);
  const auto sd = strong_density_rows(g);
  auto full = [](const std::vector<DensityRow>& rows) {
    return *std::find_if(rows.begin(), rows.end(), [](const DensityRow& r) { return r.set == 0b1111; });
  };
  CHECK(full(wd).rhs == 2);
  CHECK(full(sd).rhs == 3);
  for (const auto& [v, c] : full(wd).coefficients) CHECK(c == 2);
  // Single vertices: weak rows are -x_v >= -1, strong rows skip sets without edges.
  CHECK(std::none_of(sd.begin(), sd.end(), [](const DensityRow& r) { return std::popcount(r.set) == 1; }));
  const auto single = std::find_if(wd.begin(), wd.end(), [](const DensityRow& r) { return r.set == 0b0001; });
  REQUIRE(single != wd.end());
  CHECK(single->rhs == -1);
  CHECK(single->coefficients == std::vector<std::pair<VertexId, int>>{{0, -1}});
  // Pairs in K4 have all-zero rows with rhs 0: dropped.
  CHECK(std::none_of(wd.begin(), wd.end(), [](const DensityRow& r) { return std::popcount(r.set) == 2; }));
}

TEST_CASE("density enumeration respects the cap") {
  Caps caps;
  caps.density_vertices = 5;
  CHECK_THROWS_AS(weak_density_rows(complete(6), caps), CapExceeded);
}

TEST_CASE("orientation LP values") {
  CHECK(lp_optimum(cycle(3), build_orientation(cycle(3))) == 0);
  CHECK(lp_optimum(butterfly(), build_orientation(butterfly())) == Rational(1, 3));
  // Counting bound: sum_v (d(v) - 1) x_v >= |E| - |V| for K5 gives 3 * sum x >= 5.
  CHECK(lp_optimum(complete(5), build_orientation(complete(5))) == Rational(5, 3));
}

TEST_CASE("distance formulation projects onto the cycle cover polyhedron") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = random_connected(rng, 3 + trial % 4);
    Formulation cc = base_formulation(g);
    add_cycle_cover_enumerated(cc, g);
    const Formulation dist = build_cycle_cover_distance(g);
    CHECK(lp_optimum(g, dist) == lp_optimum(g, cc));
    // Membership agrees on random fractional x.
    for (int k = 0; k < 6; ++k) {
      std::vector<Rational> x;
      for (int v = 0; v < g.num_vertices(); ++v) x.push_back(Rational(static_cast<long>(rng() % 4), 3));
      CHECK(x_feasible(dist, x) == x_feasible(cc, x));
    }
  }
}

TEST_CASE("literal distance system cuts off a valid cover") {
  const Graph g = cycle(3);
  const std::vector<Rational> x{1, 0, 0};
  CHECK(x_feasible(build_cycle_cover_distance(g, DistanceVariant::ExcludeOwnEdge), x));
  CHECK_FALSE(x_feasible(build_cycle_cover_distance(g, DistanceVariant::Literal), x));
}

TEST_CASE("weak density row of a subgraph") {
  const Graph g = complete(5);
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).u != 0 || g.edge(e).v != 1) edges.push_back(e);
  }
  const VertexSet all = all_vertices(g);
  const SubgraphRow row = build_wd_subgraphs_constraint(g, all, edges);
  CHECK(row.rhs == 4);
  const std::vector<std::pair<VertexId, int>> expected{{0, 2}, {1, 2}, {2, 3}, {3, 3}, {4, 3}};
  CHECK(row.coefficients == expected);
  const std::vector<VertexId> part{0, 1};
  CHECK_THROWS_AS(build_wd_subgraphs_constraint(g, part, edges), PreconditionError);
}

TEST_CASE("orientation FVS LP bounds") {
  CHECK(lp_optimum(cycle(3), build_orientation_fvs(cycle(3)).model) == 1);
  const Rational k4 = lp_optimum(complete(4), build_orientation_fvs(complete(4)).model);
  CHECK(k4 >= Rational(3, 2));
  CHECK(k4 <= 2);
  CHECK_THROWS_AS(build_orientation_fvs(Graph(4, {{0, 1}, {1, 2}, {0, 2}})), PreconditionError);
}

TEST_CASE("orientation FVS witness is feasible for every FVS") {
  std::mt19937_64 rng(5);
  std::vector<Graph> graphs{butterfly(), complete(4), cycle(5)};
  for (int i = 0; i < 10; ++i) graphs.push_back(random_connected(rng, 5 + i % 2));
  // Two components, one of them acyclic.
  graphs.push_back(Graph(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6}}));
  for (const Graph& g : graphs) {
    const OrientationFvs model = build_orientation_fvs(g);
    for (const VertexSet& s : all_fvs(g)) {
      const Vector p = orientation_fvs_point(g, model, s);
      const auto bad = model.model.lp.first_violation(p);
      INFO(format_graph(g));
      CHECK_FALSE(bad.has_value());
    }
  }
}

TEST_CASE("orientation FVS load row sums at the far endpoint") {
  const Graph g = cycle(3);
  const OrientationFvs model = build_orientation_fvs(g);
  const LinearProgram& lp = model.model.lp;
  const int row = [&] {
    for (int i = 0; i < lp.num_constraints(); ++i)
      if (lp.constraint(i).label == "load(0;0)") return i;
    return -1;
  }();
  REQUIRE(row >= 0);
  // Vertex 0 lies on edges 0 = {0,1} and 2 = {0,2}: y at vertices 1 and 2.
  std::vector<std::string> names;
  for (const Term& t : lp.constraint(row).terms) names.push_back(lp.name(t.var));
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"x(0)", "y(0;0,1)", "y(0;2,2)"});
}

TEST_CASE("orientation FVS witness rejects non-covers") {
  const Graph g = complete(4);
  const std::vector<VertexId> s{0};
  CHECK_THROWS_AS(integral_witness_orientation_fvs(g, s, 0), PreconditionError);
}

TEST_CASE("subdivided instance") {
  const Graph g = complete(4);
  const SfvsInstance inst = reduce_fvs_to_sfvs(g);
  CHECK(inst.h.num_vertices() == 23);
  CHECK(inst.h.num_edges() == 25);
  CHECK(inst.terminal.size() == 6);
  CHECK_NOTHROW(verify_sfvs_properties(inst));
  for (VertexId v = 4; v < 23; ++v) CHECK(inst.h.cost(v).is_infinite());
  CHECK(inst.h.degree(inst.root) == 1);
  CHECK_THROWS_AS(reduce_fvs_to_sfvs(Graph(0, {})), PreconditionError);
}

TEST_CASE("labelling LP extracts an orientation point") {
  for (const Graph& g : {cycle(3), butterfly(), complete(4)}) {
    const SfvsInstance inst = reduce_fvs_to_sfvs(g);
    const CmFormulation cm = build_cm_lp(g, inst, CycleRealization::Distance);
    const auto sol = solve_lexicographic(cm.model.lp, cost_objectives(g, cm.model));
    REQUIRE(sol.optimal());
    const OrientationPoint p = extract_cm_solution(g, inst, cm, sol.values);
    CHECK(in_orientation_polyhedron(g, p));
    // Relaxation of FVS that dominates the cycle cover relaxation.
    Formulation cc = base_formulation(g);
    add_cycle_cover_enumerated(cc, g);
    CHECK(sol.objective <= fvs_optimum(g));
    CHECK(sol.objective >= lp_optimum(g, cc));
  }
  CHECK(lp_optimum(cycle(3), build_cm_lp(cycle(3), reduce_fvs_to_sfvs(cycle(3)), CycleRealization::Distance).model) == 1);
}

TEST_CASE("labelling LP accepts every FVS indicator") {
  const Graph g = butterfly();
  const SfvsInstance inst = reduce_fvs_to_sfvs(g);
  const CmFormulation cm = build_cm_lp(g, inst, CycleRealization::Distance);
  for (const VertexSet& s : all_fvs(g)) {
    std::vector<Rational> x(5, Rational(0));
    for (VertexId v : s) x[static_cast<std::size_t>(v)] = 1;
    CHECK(x_feasible(cm.model, x));
  }
  CHECK_FALSE(x_feasible(cm.model, {0, 1, 0, 0, 0}));
}

TEST_CASE("big-M objective agrees with lexicographic costs") {
  const Graph g = figure1(4);
  const Formulation f = build_weak_density(g);
  const auto lex = solve_lexicographic(f.lp, cost_objectives(g, f));
  LinearProgram lp = f.lp;
  const Vector c = big_m_objective(g, f, default_big_m(g));
  for (int j = 0; j < lp.num_variables(); ++j) lp.set_cost(j, c(j));
  const auto big = solve(lp);
  REQUIRE(lex.optimal());
  REQUIRE(big.optimal());
  CHECK(lex.objective_values.front() == 0);
  CHECK(big.objective == lex.objective_values.back());
}

TEST_CASE("extract orientation requires y variables") {
  const Graph g = cycle(4);
  const Formulation f = build_weak_density(g);
  CHECK_THROWS_AS(extract_orientation(g, f, zeros(f.lp.num_variables())), PreconditionError);
  const Formulation o = build_orientation(g);
  const auto sol = solve(o.lp);
  CHECK(in_orientation_polyhedron(g, extract_orientation(g, o, sol.values)));
}
