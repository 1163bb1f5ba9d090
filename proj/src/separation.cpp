#include "fvslab/separation.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace fvslab {

namespace {

// Vertex-weighted Dijkstra. label[v] starts at `init` where set; relaxing u -> w
// adds weight[w]. Edges `skip_a`, `skip_b` are ignored. Ties keep the first label.
struct Labels {
  std::vector<Rational> value;
  std::vector<char> reached;
  std::vector<VertexId> pred;  // -1 when the label is the initial one
};

Labels node_dijkstra(const Graph& g, const Vector& weight, Labels init, EdgeId skip_a = -1, EdgeId skip_b = -1) {
  const int n = g.num_vertices();
  init.pred.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (;;) {
    VertexId u = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] || !init.reached[static_cast<std::size_t>(v)]) continue;
      if (u < 0 || init.value[static_cast<std::size_t>(v)] < init.value[static_cast<std::size_t>(u)]) u = v;
    }
    if (u < 0) break;
    done[static_cast<std::size_t>(u)] = 1;
    for (const Incidence& inc : g.incident(u)) {
      if (inc.edge == skip_a || inc.edge == skip_b) continue;
      const auto w = static_cast<std::size_t>(inc.neighbor);
      if (done[w]) continue;
      Rational cand = init.value[static_cast<std::size_t>(u)] + weight(inc.neighbor);
      if (!init.reached[w] || cand < init.value[w]) {
        init.value[w] = std::move(cand);
        init.reached[w] = 1;
        init.pred[w] = u;
      }
    }
  }
  return init;
}

Labels single_source(const Graph& g, const Vector& weight, VertexId s, EdgeId skip_a = -1, EdgeId skip_b = -1) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  Labels l{std::vector<Rational>(n), std::vector<char>(n, 0), {}};
  l.value[static_cast<std::size_t>(s)] = weight(s);
  l.reached[static_cast<std::size_t>(s)] = 1;
  return node_dijkstra(g, weight, std::move(l), skip_a, skip_b);
}

Rational weight_of(const Vector& w, std::span<const VertexId> s) {
  Rational total;
  for (VertexId v : s) total += w(v);
  return total;
}

bool witness_less(const ViolatedConstraint& a, const ViolatedConstraint& b) {
  if (a.vertices != b.vertices) return a.vertices < b.vertices;
  return a.edges < b.edges;
}

std::optional<ViolatedConstraint> most_violated(std::vector<ViolatedConstraint> cuts) {
  if (cuts.empty()) return std::nullopt;
  return *std::min_element(cuts.begin(), cuts.end(), more_violated);
}

ViolatedConstraint unit_cut(CutFamily kind, std::vector<VertexId> vertices, const Vector& x) {
  ViolatedConstraint c;
  c.kind = kind;
  for (VertexId v : vertices) c.coefficients.emplace_back(v, 1);
  c.lhs = weight_of(x, vertices);
  c.rhs = 1;
  c.vertices = std::move(vertices);
  return c;
}

// Vertex-weighted Dreyfus-Wagner on g minus two edges.
std::optional<SteinerTree> steiner(const Graph& g, const Vector& w, std::span<const VertexId> terminals_in, EdgeId skip_a,
                                   EdgeId skip_b) {
  std::vector<VertexId> terms = normalize({terminals_in.begin(), terminals_in.end()});
  if (terms.empty()) throw PreconditionError("nwst: no terminals");
  if (terms.size() > 4) throw PreconditionError("nwst: at most 4 terminals");
  for (VertexId t : terms) {
    if (t < 0 || t >= g.num_vertices()) throw PreconditionError("nwst: terminal out of range");
  }
  const int k = static_cast<int>(terms.size());
  const int full = (1 << k) - 1;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<Labels> dp(static_cast<std::size_t>(full + 1));
  // split[mask][v]: submask merged at v, 0 if none.
  std::vector<std::vector<int>> split(static_cast<std::size_t>(full + 1), std::vector<int>(n, 0));
  for (int i = 0; i < k; ++i) dp[static_cast<std::size_t>(1 << i)] = single_source(g, w, terms[static_cast<std::size_t>(i)], skip_a, skip_b);
  std::vector<int> order;
  for (int mask = 1; mask <= full; ++mask) order.push_back(mask);
  std::stable_sort(order.begin(), order.end(), [](int a, int b) { return std::popcount(unsigned(a)) < std::popcount(unsigned(b)); });
  for (int mask : order) {
    if (std::popcount(unsigned(mask)) < 2) continue;
    Labels init{std::vector<Rational>(n), std::vector<char>(n, 0), {}};
    for (std::size_t v = 0; v < n; ++v) {
      for (int sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        const int rest = mask ^ sub;
        if (sub > rest) continue;
        const Labels& a = dp[static_cast<std::size_t>(sub)];
        const Labels& b = dp[static_cast<std::size_t>(rest)];
        if (!a.reached[v] || !b.reached[v]) continue;
        Rational cand = a.value[v] + b.value[v] - w(static_cast<Eigen::Index>(v));
        if (!init.reached[v] || cand < init.value[v]) {
          init.value[v] = std::move(cand);
          init.reached[v] = 1;
          split[static_cast<std::size_t>(mask)][v] = sub;
        }
      }
    }
    dp[static_cast<std::size_t>(mask)] = node_dijkstra(g, w, std::move(init), skip_a, skip_b);
  }
  const auto root = static_cast<std::size_t>(terms.front());
  if (!dp[static_cast<std::size_t>(full)].reached[root]) return std::nullopt;

  std::vector<char> in(n, 0);
  std::vector<std::pair<int, VertexId>> stack{{full, terms.front()}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    in[static_cast<std::size_t>(v)] = 1;
    const Labels& l = dp[static_cast<std::size_t>(mask)];
    if (const VertexId p = l.pred[static_cast<std::size_t>(v)]; p >= 0) {
      stack.emplace_back(mask, p);
    } else if (std::popcount(unsigned(mask)) >= 2) {
      const int sub = split[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)];
      stack.emplace_back(sub, v);
      stack.emplace_back(mask ^ sub, v);
    }
  }
  SteinerTree out;
  for (std::size_t v = 0; v < n; ++v) {
    if (in[v]) out.vertices.push_back(static_cast<VertexId>(v));
  }
  out.weight = weight_of(w, out.vertices);
  if (out.weight != dp[static_cast<std::size_t>(full)].value[root]) {
    throw VerificationError("nwst: reconstructed tree weight differs from the recursion value");
  }
  return out;
}

// Every 2-pseudotree found from an edge pair whose terminal weight is below
// `bound`; with keep_all false only improvements on the running best are kept.
std::vector<SteinerTree> two_pseudotrees(const Graph& g, const Vector& w, const Rational& bound, bool keep_all) {
  std::vector<SteinerTree> found;
  std::optional<Rational> best;
  std::set<VertexSet> seen;
  for (EdgeId e1 = 0; e1 < g.num_edges(); ++e1) {
    for (EdgeId e2 = e1 + 1; e2 < g.num_edges(); ++e2) {
      const Edge& a = g.edge(e1);
      const Edge& b = g.edge(e2);
      const VertexSet terms = normalize({a.u, a.v, b.u, b.v});
      const Rational floor = weight_of(w, terms);
      if (floor >= bound) continue;
      if (!keep_all && best && floor > *best) continue;
      auto tree = steiner(g, w, terms, e1, e2);
      if (!tree || tree->weight >= bound) continue;
      if (keep_all) {
        if (seen.insert(tree->vertices).second) found.push_back(std::move(*tree));
        continue;
      }
      if (!best || tree->weight < *best || (tree->weight == *best && tree->vertices < found.back().vertices)) {
        best = tree->weight;
        found.assign(1, std::move(*tree));
      }
    }
  }
  return found;
}

}  // namespace

std::string to_string(CutFamily f) {
  switch (f) {
    case CutFamily::Cycle: return "cycle";
    case CutFamily::TwoPseudotree: return "two-pseudotree";
    case CutFamily::WeakDensity: return "weak-density";
    case CutFamily::StrongDensity: return "strong-density";
    case CutFamily::WdSubgraph: return "wd-subgraph";
  }
  return "?";
}

bool more_violated(const ViolatedConstraint& a, const ViolatedConstraint& b) {
  const Rational va = a.violation();
  const Rational vb = b.violation();
  if (va != vb) return va > vb;
  return witness_less(a, b);
}

void check_point(const Graph& g, const Vector& x) {
  if (x.size() != g.num_vertices()) throw PreconditionError("point size differs from the vertex count");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).sign() < 0) throw PreconditionError("point has a negative coordinate");
  }
}

std::vector<ViolatedConstraint> cycle_cover_cuts(const Graph& g, const Vector& x) {
  check_point(g, x);
  std::vector<ViolatedConstraint> cuts;
  std::set<std::vector<VertexId>> seen;
  for (EdgeId e : cyclic_edges(g)) {
    const auto [s, t] = g.edge(e);
    const Labels l = single_source(g, x, s, e);
    if (!l.reached[static_cast<std::size_t>(t)] || l.value[static_cast<std::size_t>(t)] >= 1) continue;
    Cycle c;
    for (VertexId v = t; v >= 0; v = l.pred[static_cast<std::size_t>(v)]) c.vertices.push_back(v);
    c = c.canonical();
    if (!seen.insert(c.vertices).second) continue;
    cuts.push_back(unit_cut(CutFamily::Cycle, c.vertices, x));
  }
  std::sort(cuts.begin(), cuts.end(), more_violated);
  return cuts;
}

std::optional<ViolatedConstraint> separate_cycle_cover(const Graph& g, const Vector& x) {
  return most_violated(cycle_cover_cuts(g, x));
}

std::optional<SteinerTree> nwst(const Graph& g, const Vector& weights, std::span<const VertexId> terminals) {
  check_point(g, weights);
  return steiner(g, weights, terminals, -1, -1);
}

std::optional<SteinerTree> mc2pt(const Graph& g, const Vector& weights) {
  check_point(g, weights);
  Rational bound = 1;
  for (Eigen::Index i = 0; i < weights.size(); ++i) bound += weights(i);
  auto found = two_pseudotrees(g, weights, bound, false);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::optional<ViolatedConstraint> separate_2pt_cover(const Graph& g, const Vector& x) {
  const auto best = mc2pt(g, x);
  if (!best || best->weight >= 1) return std::nullopt;
  return unit_cut(CutFamily::TwoPseudotree, best->vertices, x);
}

namespace {

std::vector<ViolatedConstraint> density_cuts(const std::vector<DensityRow>& rows, CutFamily kind, const Vector& x) {
  std::vector<ViolatedConstraint> cuts;
  for (const DensityRow& r : rows) {
    Rational lhs;
    for (auto [v, c] : r.coefficients) lhs += Rational(c) * x(v);
    if (lhs >= r.rhs) continue;
    ViolatedConstraint cut;
    cut.kind = kind;
    cut.vertices = mask_to_set(r.set);
    cut.coefficients = r.coefficients;
    cut.lhs = lhs;
    cut.rhs = r.rhs;
    cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(), more_violated);
  return cuts;
}

std::vector<ViolatedConstraint> two_pseudotree_cuts(const Graph& g, const Vector& x) {
  std::vector<ViolatedConstraint> cuts;
  for (SteinerTree& t : two_pseudotrees(g, x, Rational(1), true)) cuts.push_back(unit_cut(CutFamily::TwoPseudotree, t.vertices, x));
  std::sort(cuts.begin(), cuts.end(), more_violated);
  return cuts;
}

}  // namespace

std::vector<ViolatedConstraint> weak_density_cuts(const Graph& g, const Vector& x, const Caps& caps) {
  check_point(g, x);
  return density_cuts(weak_density_rows(g, caps), CutFamily::WeakDensity, x);
}

std::vector<ViolatedConstraint> strong_density_cuts(const Graph& g, const Vector& x, const Caps& caps) {
  check_point(g, x);
  return density_cuts(strong_density_rows(g, caps), CutFamily::StrongDensity, x);
}

std::optional<ViolatedConstraint> separate_weak_density(const Graph& g, const Vector& x, const Caps& caps) {
  return most_violated(weak_density_cuts(g, x, caps));
}

std::optional<ViolatedConstraint> separate_strong_density(const Graph& g, const Vector& x, const Caps& caps) {
  return most_violated(strong_density_cuts(g, x, caps));
}

std::vector<ViolatedConstraint> wd_subgraph_cuts(const Graph& g, const Vector& x, const Caps& caps) {
  check_point(g, x);
  const int n = g.num_vertices();
  if (n > caps.density_vertices || n > 62) {
    throw CapExceeded("wd-subgraph separation: " + std::to_string(n) + " vertices exceeds cap " +
                      std::to_string(std::min(caps.density_vertices, 62)));
  }
  std::vector<Rational> slack(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) slack[static_cast<std::size_t>(e)] = Rational(1) - x(g.edge(e).u) - x(g.edge(e).v);
  std::vector<ViolatedConstraint> cuts;
  for (VertexMask s = 1; s < (VertexMask{1} << n); ++s) {
    Rational gain;
    std::vector<EdgeId> chosen;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (!((s >> ed.u) & 1U) || !((s >> ed.v) & 1U) || slack[static_cast<std::size_t>(e)].sign() <= 0) continue;
      gain += slack[static_cast<std::size_t>(e)];
      chosen.push_back(e);
    }
    const VertexSet vs = mask_to_set(s);
    for (VertexId v : vs) gain -= Rational(1) - x(v);
    if (gain.sign() <= 0) continue;
    const SubgraphRow row = build_wd_subgraphs_constraint(g, vs, chosen);
    ViolatedConstraint cut;
    cut.kind = CutFamily::WdSubgraph;
    cut.vertices = row.vertices;
    cut.edges = row.edges;
    for (auto [v, c] : row.coefficients) {
      if (c != 0) cut.coefficients.emplace_back(v, c);
      cut.lhs += Rational(c) * x(v);
    }
    cut.rhs = row.rhs;
    cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(), more_violated);
  return cuts;
}

std::optional<ViolatedConstraint> separate_wd_subgraphs(const Graph& g, const Vector& x, const Caps& caps) {
  return most_violated(wd_subgraph_cuts(g, x, caps));
}

void add_cut(Formulation& f, const ViolatedConstraint& cut) {
  std::vector<Term> terms;
  for (auto [v, c] : cut.coefficients) terms.push_back({f.x.at(static_cast<std::size_t>(v)), c});
  std::string label = to_string(cut.kind) + "(";
  for (std::size_t i = 0; i < cut.vertices.size(); ++i) label += (i ? "," : "") + std::to_string(cut.vertices[i]);
  f.lp.add_constraint(std::move(terms), Relation::GreaterEq, cut.rhs, label + ")");
}

std::string to_string(ModelPart p) {
  switch (p) {
    case ModelPart::StrongDensity: return "sd";
    case ModelPart::WeakDensity: return "wd";
    case ModelPart::WdSubgraphs: return "wd-sub";
    case ModelPart::Orientation: return "orient";
    case ModelPart::CycleCover: return "cc";
    case ModelPart::TwoPseudotreeCover: return "2pt";
    case ModelPart::OrientationFvs: return "orient-fvs";
    case ModelPart::ChekuriMadan: return "cm";
  }
  return "?";
}

ModelPart parse_model_part(std::string_view text) {
  for (ModelPart p : {ModelPart::StrongDensity, ModelPart::WeakDensity, ModelPart::WdSubgraphs, ModelPart::Orientation,
                      ModelPart::CycleCover, ModelPart::TwoPseudotreeCover, ModelPart::OrientationFvs, ModelPart::ChekuriMadan}) {
    if (to_string(p) == text) return p;
  }
  throw ParseError("unknown formulation '" + std::string(text) + "'");
}

namespace {

// Copies every non-x variable and every row of `from` into `into`; returns the index map.
std::vector<int> merge_into(Formulation& into, const Formulation& from) {
  std::vector<int> map(static_cast<std::size_t>(from.lp.num_variables()), -1);
  for (std::size_t v = 0; v < from.x.size(); ++v) map[static_cast<std::size_t>(from.x[v])] = into.x[v];
  for (int j = 0; j < from.lp.num_variables(); ++j) {
    if (map[static_cast<std::size_t>(j)] >= 0) continue;
    std::string name = from.lp.name(j);
    while (into.lp.find_variable(name)) name = "'" + name;
    map[static_cast<std::size_t>(j)] = into.lp.add_variable(name, from.lp.nonnegative(j));
  }
  for (const Constraint& c : from.lp.constraints()) {
    std::vector<Term> terms;
    for (const Term& t : c.terms) terms.push_back({map[static_cast<std::size_t>(t.var)], t.coef});
    into.lp.add_constraint(std::move(terms), c.relation, c.rhs, c.label);
  }
  return map;
}

void remap(std::vector<std::array<int, 2>>& ys, const std::vector<int>& map) {
  for (auto& y : ys) {
    for (int& i : y) i = map[static_cast<std::size_t>(i)];
  }
}

}  // namespace

Model build_model(const Graph& g, std::span<const ModelPart> parts, const Caps& caps) {
  Model m;
  m.formulation = base_formulation(g);
  Formulation& f = m.formulation;
  auto family = [&](CutFamily c) {
    if (std::find(m.cut_families.begin(), m.cut_families.end(), c) == m.cut_families.end()) m.cut_families.push_back(c);
  };
  std::set<ModelPart> done;
  for (ModelPart p : parts) {
    if (!done.insert(p).second) continue;
    switch (p) {
      case ModelPart::StrongDensity: add_strong_density(f, g, caps); break;
      case ModelPart::WeakDensity: add_weak_density(f, g, caps); break;
      case ModelPart::Orientation: add_orientation(f, g); break;
      case ModelPart::CycleCover: family(CutFamily::Cycle); break;
      case ModelPart::TwoPseudotreeCover: family(CutFamily::TwoPseudotree); break;
      case ModelPart::WdSubgraphs: family(CutFamily::WdSubgraph); break;
      case ModelPart::OrientationFvs: {
        OrientationFvs o = build_orientation_fvs(g);
        const auto map = merge_into(f, o.model);
        for (auto& per_edge : o.yf) remap(per_edge, map);
        o.model = f;
        m.orientation_fvs = std::move(o);
        break;
      }
      case ModelPart::ChekuriMadan: {
        SfvsInstance inst = reduce_fvs_to_sfvs(g);
        CmFormulation cm = build_cm_lp(g, inst, CycleRealization::CuttingPlanes);
        const auto map = merge_into(f, cm.model);
        for (auto& per_vertex : cm.z) {
          for (int& i : per_vertex) {
            if (i >= 0) i = map[static_cast<std::size_t>(i)];
          }
        }
        m.subdivided = std::move(inst);
        m.labelling = std::move(cm);
        family(CutFamily::Cycle);
        break;
      }
    }
  }
  return m;
}

CuttingPlaneResult cutting_plane_solve(const Graph& g, Model model, const Caps& caps) {
  CuttingPlaneResult out;
  out.formulation = std::move(model.formulation);
  Formulation& f = out.formulation;
  const int n = g.num_vertices();
  for (;;) {
    if (out.iterations >= caps.cutting_plane_iterations) {
      throw CapExceeded("cutting planes: more than " + std::to_string(caps.cutting_plane_iterations) + " rounds");
    }
    ++out.iterations;
    out.solution = solve_lexicographic(f.lp, cost_objectives(g, f));
    if (!out.solution.optimal()) return out;
    const Vector x = f.x_values(out.solution.values);
    std::vector<ViolatedConstraint> cuts;
    for (CutFamily fam : model.cut_families) {
      std::vector<ViolatedConstraint> found;
      switch (fam) {
        case CutFamily::Cycle:
          if (model.subdivided) {
            // Cycles of the subdivided graph, with x = 0 off the original vertices.
            const Graph& h = model.subdivided->h;
            Vector xh = zeros(h.num_vertices());
            xh.head(n) = x;
            std::set<VertexSet> seen;
            for (ViolatedConstraint& c : cycle_cover_cuts(h, xh)) {
              std::vector<VertexId> kept;
              for (VertexId v : c.vertices)
                if (v < n) kept.push_back(v);
              if (!seen.insert(normalize(kept)).second) continue;
              found.push_back(unit_cut(CutFamily::Cycle, std::move(kept), x));
            }
          }
          if (!model.subdivided) found = cycle_cover_cuts(g, x);
          break;
        case CutFamily::TwoPseudotree: found = two_pseudotree_cuts(g, x); break;
        case CutFamily::WeakDensity: found = weak_density_cuts(g, x, caps); break;
        case CutFamily::StrongDensity: found = strong_density_cuts(g, x, caps); break;
        case CutFamily::WdSubgraph: found = wd_subgraph_cuts(g, x, caps); break;
      }
      cuts.insert(cuts.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    if (cuts.empty()) break;
    for (ViolatedConstraint& c : cuts) {
      add_cut(f, c);
      out.log.push_back({out.iterations, std::move(c)});
    }
  }
  return out;
}

CuttingPlaneResult cutting_plane_solve(const Graph& g, std::span<const ModelPart> parts, const Caps& caps) {
  return cutting_plane_solve(g, build_model(g, parts, caps), caps);
}

}  // namespace fvslab
