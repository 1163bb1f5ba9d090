#include "fvslab/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "fvslab/generators.hpp"

namespace fvslab {

std::string to_string(RaiseKind k) { return k == RaiseKind::WholeResidual ? "whole-residual" : "semi-disjoint-cycle"; }

std::string to_string(Problem p) {
  switch (p) {
    case Problem::Fvs: return "fvs";
    case Problem::Pfds: return "pfds";
    case Problem::Mc2pt: return "mc2pt";
  }
  return "?";
}

namespace {

// d_S(u) - 1 for u in S, or 1 on a cycle.
std::vector<std::pair<VertexId, int>> raise_coefficients(const Graph& g, const DualRaise& r) {
  std::vector<std::pair<VertexId, int>> out;
  if (r.kind == RaiseKind::SemiDisjointCycle) {
    for (VertexId v : r.set) out.emplace_back(v, 1);
    return out;
  }
  const InducedSubgraph sub = induced_subgraph(g, r.set);
  for (VertexId local = 0; local < sub.graph.num_vertices(); ++local) {
    out.emplace_back(sub.to_parent[static_cast<std::size_t>(local)], sub.graph.degree(local) - 1);
  }
  return out;
}

Rational raise_objective(const Graph& g, const DualRaise& r) {
  if (r.kind == RaiseKind::SemiDisjointCycle) return r.amount;
  return r.amount * Rational(excess(g, set_to_mask(r.set)));
}

std::string set_text(std::span<const VertexId> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

PrimalDualResult primal_dual_fvs(const Graph& g) {
  const int n = g.num_vertices();
  PrimalDualResult res;
  res.certificate.load.assign(static_cast<std::size_t>(n), Rational(0));
  auto& load = res.certificate.load;
  VertexSet alive = all_vertices(g);
  for (;;) {
    const InducedSubgraph residual = induced_subgraph(g, alive);
    const PruneResult pruned = prune_degree_one(residual.graph);
    VertexSet next;
    for (VertexId local : pruned.kept.to_parent) next.push_back(residual.to_parent[static_cast<std::size_t>(local)]);
    alive = std::move(next);
    if (alive.empty()) break;

    const InducedSubgraph cur = induced_subgraph(g, alive);
    DualRaise raise;
    std::vector<std::pair<VertexId, int>> coef;
    if (const auto sd = find_semi_disjoint_cycle(cur.graph)) {
      raise.kind = RaiseKind::SemiDisjointCycle;
      for (VertexId local : sd->cycle.vertices) raise.cycle.push_back(cur.to_parent[static_cast<std::size_t>(local)]);
      raise.set = normalize(raise.cycle);
      for (VertexId v : raise.set) coef.emplace_back(v, 1);
    } else {
      raise.kind = RaiseKind::WholeResidual;
      raise.set = alive;
      for (VertexId local = 0; local < cur.graph.num_vertices(); ++local) {
        const int d = cur.graph.degree(local) - 1;
        if (d < 1) throw VerificationError("primal-dual: residual vertex of degree below 2 after pruning");
        coef.emplace_back(cur.to_parent[static_cast<std::size_t>(local)], d);
      }
    }
    std::optional<Rational> eps;
    for (auto [v, c] : coef) {
      if (g.cost(v).is_infinite()) continue;
      Rational room = (g.cost(v).value() - load[static_cast<std::size_t>(v)]) / Rational(c);
      if (!eps || room < *eps) {
        eps = std::move(room);
        raise.chosen = v;
      }
    }
    if (!eps) throw PreconditionError("no finite-cost feedback vertex set: a cycle has only infinite-cost vertices");
    raise.amount = *eps;
    for (auto [v, c] : coef) load[static_cast<std::size_t>(v)] += raise.amount * Rational(c);
    res.dual_value += raise_objective(g, raise);
    res.insertion_order.push_back(raise.chosen);
    alive.erase(std::find(alive.begin(), alive.end(), raise.chosen));
    res.certificate.raises.push_back(std::move(raise));
  }

  std::vector<VertexId> f = res.insertion_order;
  for (auto it = res.insertion_order.rbegin(); it != res.insertion_order.rend(); ++it) {
    std::vector<VertexId> without;
    for (VertexId v : f)
      if (v != *it) without.push_back(v);
    const bool drop = is_fvs(g, without);
    if (drop) f = std::move(without);
    res.reverse_delete.push_back({*it, drop});
  }
  res.fvs = normalize(std::move(f));
  res.primal_cost = *set_cost(g, res.fvs);
  return res;
}

CertificateReport verify_certificate(const Graph& g, const PrimalDualResult& result) {
  CertificateReport rep;
  const int n = g.num_vertices();
  auto fail = [&](std::string what) { rep.failures.push_back(std::move(what)); };

  std::vector<Rational> load(static_cast<std::size_t>(n));
  for (const DualRaise& r : result.certificate.raises) {
    if (r.amount.sign() < 0) fail("negative raise amount");
    for (auto [v, c] : raise_coefficients(g, r)) load[static_cast<std::size_t>(v)] += r.amount * Rational(c);
    rep.recomputed_dual += raise_objective(g, r);
  }
  rep.dual_feasible = true;
  for (VertexId v = 0; v < n; ++v) {
    if (g.cost(v).is_finite() && load[static_cast<std::size_t>(v)] > g.cost(v).value()) {
      rep.dual_feasible = false;
      fail("dual constraint of vertex " + std::to_string(v) + " exceeded");
    }
  }
  for (VertexId v : result.insertion_order) {
    if (g.cost(v).is_infinite() || load[static_cast<std::size_t>(v)] != g.cost(v).value()) {
      rep.dual_feasible = false;
      fail("inserted vertex " + std::to_string(v) + " is not tight");
    }
  }
  if (rep.recomputed_dual != result.dual_value) fail("stored dual value differs from the recomputed one");
  if (!is_fvs(g, result.fvs)) fail("returned set is not a feedback vertex set");

  rep.minimal_per_iteration = true;
  rep.density_bound = true;
  const auto& raises = result.certificate.raises;
  for (std::size_t i = 0; i < raises.size(); ++i) {
    const DualRaise& r = raises[i];
    VertexSet later;
    for (std::size_t k = i; k < result.insertion_order.size(); ++k) {
      const VertexId v = result.insertion_order[k];
      if (std::binary_search(result.fvs.begin(), result.fvs.end(), v) && std::binary_search(r.set.begin(), r.set.end(), v)) {
        later.push_back(v);
      }
    }
    later = normalize(std::move(later));
    const InducedSubgraph sub = induced_subgraph(g, r.set);
    auto local = [&](std::span<const VertexId> s) {
      VertexSet out;
      for (VertexId v : s)
        out.push_back(static_cast<VertexId>(std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), v) - sub.to_parent.begin()));
      return out;
    };
    bool minimal = is_fvs(sub.graph, local(later));
    for (std::size_t k = 0; minimal && k < later.size(); ++k) {
      VertexSet fewer = later;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
      if (is_fvs(sub.graph, local(fewer))) minimal = false;
    }
    if (!minimal) {
      rep.minimal_per_iteration = false;
      fail("iteration " + std::to_string(i + 1) + ": " + set_text(later) + " is not a minimal FVS of G[" + set_text(r.set) + "]");
    }
    if (r.kind == RaiseKind::WholeResidual) {
      int lhs = 0;
      for (VertexId v : later) {
        const auto lv = std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), v) - sub.to_parent.begin();
        lhs += sub.graph.degree(static_cast<VertexId>(lv)) - 1;
      }
      if (lhs > 2 * excess(g, set_to_mask(r.set))) {
        rep.density_bound = false;
        fail("iteration " + std::to_string(i + 1) + ": degree sum exceeds 2 b(S)");
      }
    }
  }
  rep.ratio = result.primal_cost <= Rational(2) * rep.recomputed_dual;
  if (!rep.ratio) fail("primal cost exceeds twice the dual value");
  return rep;
}

void require_certificate(const Graph& g, const PrimalDualResult& result) {
  const CertificateReport rep = verify_certificate(g, result);
  if (!rep.ok()) throw VerificationError("primal-dual certificate: " + rep.failures.front());
}

namespace {

// Union-find with rollback; `cyclomatic` counts independent cycles per root.
class RollbackForest {
public:
  explicit RollbackForest(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), cyc_(static_cast<std::size_t>(n), 0) {
    for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
  }
  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }
  // Returns the cyclomatic number of the merged component.
  int join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      history_.push_back({a, -1, 0});
      return ++cyc_[static_cast<std::size_t>(a)];
    }
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    history_.push_back({a, b, cyc_[static_cast<std::size_t>(a)]});
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    cyc_[static_cast<std::size_t>(a)] += cyc_[static_cast<std::size_t>(b)];
    return cyc_[static_cast<std::size_t>(a)];
  }
  [[nodiscard]] std::size_t mark() const { return history_.size(); }
  void rollback(std::size_t to) {
    while (history_.size() > to) {
      const Step s = history_.back();
      history_.pop_back();
      if (s.child < 0) {
        --cyc_[static_cast<std::size_t>(s.root)];
        continue;
      }
      parent_[static_cast<std::size_t>(s.child)] = s.child;
      size_[static_cast<std::size_t>(s.root)] -= size_[static_cast<std::size_t>(s.child)];
      cyc_[static_cast<std::size_t>(s.root)] = s.old_cyc;
    }
  }

private:
  struct Step {
    int root;
    int child;
    int old_cyc;
  };
  std::vector<int> parent_, size_, cyc_;
  std::vector<Step> history_;
};

std::optional<ExactSolution> deletion_search(const Graph& g, int max_cycles_per_component) {
  const int n = g.num_vertices();
  RollbackForest forest(n);
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> deleted;
  std::optional<ExactSolution> best;
  Rational cost;
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (best && cost >= best->value) return;
    if (v == n) {
      best = ExactSolution{deleted, cost};
      return;
    }
    // Keep v if the kept part stays within the cycle budget.
    const std::size_t mark = forest.mark();
    bool ok = true;
    for (const Incidence& inc : g.incident(v)) {
      if (inc.neighbor < v && kept[static_cast<std::size_t>(inc.neighbor)] && forest.join(v, inc.neighbor) > max_cycles_per_component) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept[static_cast<std::size_t>(v)] = 1;
      rec(v + 1);
      kept[static_cast<std::size_t>(v)] = 0;
    }
    forest.rollback(mark);
    if (g.cost(v).is_finite()) {
      deleted.push_back(v);
      cost += g.cost(v).value();
      rec(v + 1);
      cost -= g.cost(v).value();
      deleted.pop_back();
    }
  };
  rec(0);
  return best;
}

bool connected_mask(const Graph& g, VertexMask m) {
  if (m == 0) return false;
  VertexMask seen = m & (~m + 1);
  VertexMask frontier = seen;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    for (const Incidence& inc : g.incident(v)) {
      const VertexMask bit = VertexMask{1} << inc.neighbor;
      if ((m & bit) && !(seen & bit)) {
        seen |= bit;
        frontier |= bit;
      }
    }
  }
  return seen == m;
}

}  // namespace

std::optional<ExactSolution> brute_force(const Graph& g, Problem problem, const Caps& caps) {
  const int n = g.num_vertices();
  if (problem == Problem::Mc2pt) {
    if (n > caps.mc2pt_brute_vertices) {
      throw CapExceeded("brute-force mc2pt: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(caps.mc2pt_brute_vertices));
    }
    std::optional<ExactSolution> best;
    for (VertexMask m = 1; m < (VertexMask{1} << n); ++m) {
      if (edges_within(g, m) < std::popcount(m) + 1 || !connected_mask(g, m)) continue;
      const VertexSet s = mask_to_set(m);
      const auto c = set_cost(g, s);
      if (c && (!best || *c < best->value)) best = ExactSolution{s, *c};
    }
    return best;
  }
  if (n > caps.brute_force_vertices) {
    throw CapExceeded("brute-force " + to_string(problem) + ": " + std::to_string(n) + " vertices exceeds cap " +
                      std::to_string(caps.brute_force_vertices));
  }
  return deletion_search(g, problem == Problem::Fvs ? 0 : 1);
}

std::optional<ExactSolution> brute_force_sfvs(const SfvsInstance& inst, const Caps& caps) {
  const Graph& h = inst.h;
  std::vector<VertexId> finite;
  for (VertexId v = 0; v < h.num_vertices(); ++v)
    if (h.cost(v).is_finite()) finite.push_back(v);
  const int k = static_cast<int>(finite.size());
  if (k > caps.brute_force_vertices) {
    throw CapExceeded("brute-force sfvs: " + std::to_string(k) + " deletable vertices exceeds cap " + std::to_string(caps.brute_force_vertices));
  }
  std::optional<ExactSolution> best;
  for (VertexMask m = 0; m < (VertexMask{1} << k); ++m) {
    VertexSet f;
    Rational c;
    for (int i = 0; i < k; ++i) {
      if ((m >> i) & 1U) {
        f.push_back(finite[static_cast<std::size_t>(i)]);
        c += h.cost(finite[static_cast<std::size_t>(i)]).value();
      }
    }
    if (best && c >= best->value) continue;
    const InducedSubgraph rest = delete_vertices(h, f);
    std::vector<char> cyclic(static_cast<std::size_t>(rest.graph.num_vertices()), 0);
    for (EdgeId e : cyclic_edges(rest.graph)) {
      cyclic[static_cast<std::size_t>(rest.graph.edge(e).u)] = 1;
      cyclic[static_cast<std::size_t>(rest.graph.edge(e).v)] = 1;
    }
    bool ok = true;
    for (VertexId s : inst.terminal) {
      const auto local = std::lower_bound(rest.to_parent.begin(), rest.to_parent.end(), s) - rest.to_parent.begin();
      if (cyclic[static_cast<std::size_t>(local)]) ok = false;
    }
    if (ok) best = ExactSolution{f, c};
  }
  return best;
}

IterativeRoundingResult iterative_rounding_pfds(const Graph& g) {
  IterativeRoundingResult res;
  const Rational third(1, 3);
  for (;;) {
    const InducedSubgraph residual = delete_vertices(g, res.set);
    const Graph& r = residual.graph;
    if (is_pseudoforest(r)) break;
    const Formulation f = build_orientation(r);
    const auto objectives = cost_objectives(r, f);
    LpSolution sol = solve_lexicographic(f.lp, objectives);
    if (!sol.optimal()) throw VerificationError("iterative rounding: orientation LP not solved to optimality");
    if (r.has_infinite_cost() && sol.objective_values.front().sign() > 0) {
      throw PreconditionError("no finite-cost pseudoforest deletion set");
    }
    auto pick = [&](const Vector& values) {
      std::optional<VertexId> best;
      for (VertexId v = 0; v < r.num_vertices(); ++v) {
        if (r.cost(v).is_infinite()) continue;
        const Rational& xv = values(f.x[static_cast<std::size_t>(v)]);
        if (xv < third) continue;
        if (!best || xv > values(f.x[static_cast<std::size_t>(*best)])) best = v;
      }
      return best;
    };
    RoundingStep step;
    step.lp_value = sol.objective_values.back();
    auto chosen = pick(sol.values);
    if (!chosen) {
      const MinimalVertexResult mv = solve_minimal_vertex(f.lp, objectives);
      step.minimal_resolve = true;
      chosen = mv.certified ? pick(mv.solution.values) : std::nullopt;
      if (!chosen) {
        throw VerificationError("iterative rounding: no coordinate >= 1/3 at " + std::string(mv.certified ? "a certified minimal" : "an uncertified") +
                                " vertex of the orientation LP on\n" + format_graph(r));
      }
      sol = mv.solution;
    }
    step.picked = residual.to_parent[static_cast<std::size_t>(*chosen)];
    step.x_value = sol.values(f.x[static_cast<std::size_t>(*chosen)]);
    if (res.steps.empty()) res.first_lp = step.lp_value;
    res.steps.push_back(step);
    res.set = normalize([&] {
      auto s = res.set;
      s.push_back(step.picked);
      return s;
    }());
  }
  res.cost = *set_cost(g, res.set);
  res.within_factor = res.cost <= Rational(3) * res.first_lp;
  return res;
}

}  // namespace fvslab
