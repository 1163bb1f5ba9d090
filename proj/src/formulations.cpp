#include "fvslab/formulations.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

namespace fvslab {

namespace {

std::string xname(VertexId v) { return "x(" + std::to_string(v) + ")"; }

void require_mask_size(const Graph& g, int cap, const char* who) {
  if (g.num_vertices() > cap || g.num_vertices() > 62) {
    throw CapExceeded(std::string(who) + ": " + std::to_string(g.num_vertices()) + " vertices exceeds cap " +
                      std::to_string(std::min(cap, 62)));
  }
}

template <typename Keep>
std::vector<DensityRow> density_rows(const Graph& g, const Caps& caps, int rhs_shift, Keep keep, const char* who) {
  require_mask_size(g, caps.density_vertices, who);
  const int n = g.num_vertices();
  std::vector<DensityRow> rows;
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (VertexMask s = 1; s < (VertexMask{1} << n); ++s) {
    std::fill(deg.begin(), deg.end(), 0);
    int edges = 0;
    for (const Edge& e : g.edges()) {
      if (((s >> e.u) & 1U) && ((s >> e.v) & 1U)) {
        ++edges;
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
      }
    }
    if (!keep(edges)) continue;
    DensityRow row;
    row.set = s;
    row.rhs = edges - std::popcount(s) + rhs_shift;
    for (VertexMask rest = s; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (deg[static_cast<std::size_t>(v)] != 1) row.coefficients.emplace_back(v, deg[static_cast<std::size_t>(v)] - 1);
    }
    if (row.coefficients.empty() && row.rhs <= 0) continue;
    rows.push_back(std::move(row));
  }
  return rows;
}

void add_density_rows(Formulation& f, const std::vector<DensityRow>& rows, const char* family) {
  for (const DensityRow& r : rows) {
    std::vector<Term> terms;
    for (auto [v, c] : r.coefficients) terms.push_back({f.x[static_cast<std::size_t>(v)], c});
    std::string label = std::string(family) + "{";
    bool first = true;
    for (VertexId v : mask_to_set(r.set)) {
      label += (first ? "" : ",") + std::to_string(v);
      first = false;
    }
    f.lp.add_constraint(std::move(terms), Relation::GreaterEq, r.rhs, label + "}");
  }
}

}  // namespace

Vector Formulation::x_values(const Vector& point) const {
  Vector out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t v = 0; v < x.size(); ++v) out(static_cast<Eigen::Index>(v)) = point(x[v]);
  return out;
}

Formulation base_formulation(const Graph& g) {
  Formulation f;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Cost& c = g.cost(v);
    f.x.push_back(f.lp.add_variable(xname(v), true, c.is_finite() ? c.value() : Rational(0)));
  }
  return f;
}

std::vector<Vector> cost_objectives(const Graph& g, const Formulation& f) {
  Vector finite = zeros(f.lp.num_variables());
  Vector infinite = zeros(f.lp.num_variables());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Cost& c = g.cost(v);
    if (c.is_finite()) {
      finite(f.x[static_cast<std::size_t>(v)]) = c.value();
    } else {
      infinite(f.x[static_cast<std::size_t>(v)]) = 1;
    }
  }
  if (g.has_infinite_cost()) return {infinite, finite};
  return {finite};
}

Rational default_big_m(const Graph& g) {
  Rational total;
  for (const Cost& c : g.costs()) {
    if (c.is_finite()) total += c.value();
  }
  return Rational(1) + Rational(g.num_vertices() + 1) * total;
}

Vector big_m_objective(const Graph& g, const Formulation& f, const Rational& big_m) {
  Vector c = zeros(f.lp.num_variables());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Cost& cost = g.cost(v);
    c(f.x[static_cast<std::size_t>(v)]) = cost.is_finite() ? cost.value() : big_m;
  }
  return c;
}

std::vector<DensityRow> weak_density_rows(const Graph& g, const Caps& caps) {
  return density_rows(g, caps, 0, [](int) { return true; }, "weak density");
}

std::vector<DensityRow> strong_density_rows(const Graph& g, const Caps& caps) {
  return density_rows(g, caps, 1, [](int edges) { return edges > 0; }, "strong density");
}

void add_weak_density(Formulation& f, const Graph& g, const Caps& caps) {
  add_density_rows(f, weak_density_rows(g, caps), "wd");
}

void add_strong_density(Formulation& f, const Graph& g, const Caps& caps) {
  add_density_rows(f, strong_density_rows(g, caps), "sd");
}

Formulation build_weak_density(const Graph& g, const Caps& caps) {
  Formulation f = base_formulation(g);
  add_weak_density(f, g, caps);
  return f;
}

Formulation build_strong_density(const Graph& g, const Caps& caps) {
  Formulation f = base_formulation(g);
  add_strong_density(f, g, caps);
  return f;
}

void add_orientation(Formulation& f, const Graph& g) {
  if (!f.y.empty()) throw PreconditionError("orientation variables already present");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const std::string tag = std::to_string(e) + ",";
    f.y.push_back({f.lp.add_variable("y(" + tag + std::to_string(ed.u) + ")"),
                   f.lp.add_variable("y(" + tag + std::to_string(ed.v) + ")")});
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& y = f.y[static_cast<std::size_t>(e)];
    f.lp.add_constraint({{f.x[static_cast<std::size_t>(ed.u)], 1}, {f.x[static_cast<std::size_t>(ed.v)], 1}, {y[0], 1}, {y[1], 1}},
                        Relation::GreaterEq, 1, "cover(" + std::to_string(e) + ")");
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<Term> terms{{f.x[static_cast<std::size_t>(v)], 1}};
    for (const Incidence& inc : g.incident(v)) {
      const Edge& ed = g.edge(inc.edge);
      terms.push_back({f.y[static_cast<std::size_t>(inc.edge)][ed.u == v ? 0 : 1], 1});
    }
    f.lp.add_constraint(std::move(terms), Relation::LessEq, 1, "capacity(" + std::to_string(v) + ")");
  }
}

Formulation build_orientation(const Graph& g) {
  Formulation f = base_formulation(g);
  add_orientation(f, g);
  return f;
}

void add_cycle_cover_distance(Formulation& f, const Graph& g, DistanceVariant variant) {
  const int n = g.num_vertices();
  for (EdgeId e : cyclic_edges(g)) {
    const auto [s, t] = g.edge(e);
    std::vector<int> d(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
      d[static_cast<std::size_t>(v)] = f.lp.add_variable("d(" + std::to_string(e) + "," + std::to_string(v) + ")");
    }
    const std::string tag = std::to_string(e);
    f.lp.add_constraint({{d[static_cast<std::size_t>(s)], 1}}, Relation::Equal, 0, "dist-source(" + tag + ")");
    f.lp.add_constraint({{d[static_cast<std::size_t>(t)], 1}, {f.x[static_cast<std::size_t>(s)], 1}}, Relation::GreaterEq, 1,
                        "dist-close(" + tag + ")");
    for (EdgeId ab = 0; ab < g.num_edges(); ++ab) {
      if (ab == e && variant == DistanceVariant::ExcludeOwnEdge) continue;
      const auto [a, b] = g.edge(ab);
      for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
        f.lp.add_constraint({{d[static_cast<std::size_t>(from)], 1},
                             {f.x[static_cast<std::size_t>(to)], 1},
                             {d[static_cast<std::size_t>(to)], -1}},
                            Relation::GreaterEq, 0, "dist-step(" + tag + ";" + std::to_string(ab) + ")");
      }
    }
  }
}

Formulation build_cycle_cover_distance(const Graph& g, DistanceVariant variant) {
  Formulation f = base_formulation(g);
  add_cycle_cover_distance(f, g, variant);
  return f;
}

void add_cycle_cover_enumerated(Formulation& f, const Graph& g, const Caps& caps) {
  for (const Cycle& c : enumerate_cycles(g, caps)) {
    std::vector<Term> terms;
    std::string label = "cycle(";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      terms.push_back({f.x[static_cast<std::size_t>(c.vertices[i])], 1});
      label += (i ? "," : "") + std::to_string(c.vertices[i]);
    }
    f.lp.add_constraint(std::move(terms), Relation::GreaterEq, 1, label + ")");
  }
}

SubgraphRow build_wd_subgraphs_constraint(const Graph& g, std::span<const VertexId> vt, std::span<const EdgeId> et) {
  SubgraphRow row;
  row.vertices = normalize({vt.begin(), vt.end()});
  row.edges.assign(et.begin(), et.end());
  std::sort(row.edges.begin(), row.edges.end());
  if (std::adjacent_find(row.edges.begin(), row.edges.end()) != row.edges.end()) {
    throw PreconditionError("wd-subgraph: repeated edge");
  }
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (VertexId v : row.vertices) {
    if (v < 0 || v >= g.num_vertices()) throw PreconditionError("wd-subgraph: vertex out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  for (EdgeId e : row.edges) {
    if (e < 0 || e >= g.num_edges()) throw PreconditionError("wd-subgraph: edge out of range");
    const Edge& ed = g.edge(e);
    if (!in[static_cast<std::size_t>(ed.u)] || !in[static_cast<std::size_t>(ed.v)]) {
      throw PreconditionError("wd-subgraph: edge " + std::to_string(e) + " leaves the vertex set");
    }
    ++deg[static_cast<std::size_t>(ed.u)];
    ++deg[static_cast<std::size_t>(ed.v)];
  }
  for (VertexId v : row.vertices) row.coefficients.emplace_back(v, deg[static_cast<std::size_t>(v)] - 1);
  row.rhs = static_cast<int>(row.edges.size()) - static_cast<int>(row.vertices.size());
  return row;
}

OrientationFvs build_orientation_fvs(const Graph& g) {
  // The load row of an isolated vertex would force x_v = 1.
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) throw PreconditionError("orientation-fvs: isolated vertex " + std::to_string(v));
  }
  OrientationFvs out;
  out.model = base_formulation(g);
  Formulation& f = out.model;
  const int m = g.num_edges();
  const int n = g.num_vertices();
  out.yf.assign(static_cast<std::size_t>(m), std::vector<std::array<int, 2>>(static_cast<std::size_t>(m)));
  for (EdgeId fe = 0; fe < m; ++fe) {
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& ed = g.edge(e);
      const std::string tag = "y(" + std::to_string(fe) + ";" + std::to_string(e) + ",";
      out.yf[static_cast<std::size_t>(fe)][static_cast<std::size_t>(e)] = {
          f.lp.add_variable(tag + std::to_string(ed.u) + ")"), f.lp.add_variable(tag + std::to_string(ed.v) + ")")};
    }
  }
  auto xv = [&](VertexId v) { return f.x[static_cast<std::size_t>(v)]; };
  for (EdgeId fe = 0; fe < m; ++fe) {
    const auto& y = out.yf[static_cast<std::size_t>(fe)];
    const std::string ftag = std::to_string(fe);
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& ed = g.edge(e);
      f.lp.add_constraint({{xv(ed.u), 1}, {xv(ed.v), 1}, {y[static_cast<std::size_t>(e)][0], 1}, {y[static_cast<std::size_t>(e)][1], 1}},
                          Relation::GreaterEq, 1, "edge-cover(" + ftag + ";" + std::to_string(e) + ")");
    }
    for (VertexId v = 0; v < n; ++v) {
      std::vector<Term> terms{{xv(v), 1}};
      for (const Incidence& inc : g.incident(v)) {
        // y^f at the far endpoint w of e = vw.
        const Edge& ed = g.edge(inc.edge);
        terms.push_back({y[static_cast<std::size_t>(inc.edge)][ed.u == v ? 1 : 0], 1});
      }
      f.lp.add_constraint(std::move(terms), Relation::GreaterEq, 1, "load(" + ftag + ";" + std::to_string(v) + ")");
    }
    const auto [a, b] = g.edge(fe);
    std::vector<Term> terms;
    for (VertexId v = 0; v < n; ++v) {
      if (v != a && v != b) terms.push_back({xv(v), 1});
    }
    for (EdgeId e = 0; e < m; ++e) {
      if (e == fe) continue;
      terms.push_back({y[static_cast<std::size_t>(e)][0], 1});
      terms.push_back({y[static_cast<std::size_t>(e)][1], 1});
    }
    f.lp.add_constraint(std::move(terms), Relation::LessEq, n - 2, "cumulative(" + ftag + ")");
  }
  return out;
}

std::vector<std::array<Rational, 2>> integral_witness_orientation_fvs(const Graph& g, std::span<const VertexId> fvs, EdgeId f) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  if (f < 0 || f >= m) throw PreconditionError("witness: edge out of range");
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  for (VertexId v : fvs) in_s.at(static_cast<std::size_t>(v)) = 1;

  // Spanning forest: all edges of G - S first, then f, then the rest.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  std::vector<std::vector<Incidence>> tree(static_cast<std::size_t>(n));
  auto try_add = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    const int ru = find(ed.u), rv = find(ed.v);
    if (ru == rv) return false;
    parent[static_cast<std::size_t>(ru)] = rv;
    tree[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
    tree[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
    return true;
  };
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    if (in_s[static_cast<std::size_t>(ed.u)] || in_s[static_cast<std::size_t>(ed.v)]) continue;
    if (!try_add(e)) throw PreconditionError("witness: vertex set is not a feedback vertex set");
  }
  try_add(f);
  for (EdgeId e = 0; e < m; ++e) try_add(e);

  const auto [a, b] = g.edge(f);
  // BFS from a, then from a root of every other tree (a vertex of S when there is one).
  std::vector<EdgeId> up(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> roots{a};
  const Components comps = connected_components(Graph(n, [&] {
    std::vector<Edge> es;
    for (VertexId v = 0; v < n; ++v)
      for (const Incidence& inc : tree[static_cast<std::size_t>(v)])
        if (v < inc.neighbor) es.push_back({v, inc.neighbor});
    return es;
  }()));
  std::vector<VertexId> comp_root(static_cast<std::size_t>(comps.count), -1);
  comp_root[static_cast<std::size_t>(comps.of_vertex[static_cast<std::size_t>(a)])] = a;
  for (VertexId v = 0; v < n; ++v) {
    auto& r = comp_root[static_cast<std::size_t>(comps.of_vertex[static_cast<std::size_t>(v)])];
    if (r < 0 || (in_s[static_cast<std::size_t>(v)] && !in_s[static_cast<std::size_t>(r)] && r != a)) r = v;
  }
  for (VertexId r : comp_root) {
    if (r != a) roots.push_back(r);
  }
  for (VertexId r : roots) {
    std::deque<VertexId> queue{r};
    seen[static_cast<std::size_t>(r)] = 1;
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      for (const Incidence& inc : tree[static_cast<std::size_t>(u)]) {
        if (seen[static_cast<std::size_t>(inc.neighbor)]) continue;
        seen[static_cast<std::size_t>(inc.neighbor)] = 1;
        up[static_cast<std::size_t>(inc.neighbor)] = inc.edge;
        queue.push_back(inc.neighbor);
      }
    }
  }

  std::vector<std::array<Rational, 2>> y(static_cast<std::size_t>(m), {Rational(0), Rational(0)});
  auto point = [&](VertexId v, EdgeId e) {
    // v points along e: y at the far endpoint.
    const Edge& ed = g.edge(e);
    y[static_cast<std::size_t>(e)][ed.u == v ? 1 : 0] = 1;
  };
  for (VertexId v = 0; v < n; ++v) {
    if (in_s[static_cast<std::size_t>(v)] || v == a || v == b) continue;
    if (up[static_cast<std::size_t>(v)] >= 0) {
      point(v, up[static_cast<std::size_t>(v)]);
    } else if (g.degree(v) > 0) {
      point(v, g.incident(v).front().edge);
    } else {
      throw PreconditionError("witness: isolated vertex " + std::to_string(v) + " outside the deletion set");
    }
  }
  y[static_cast<std::size_t>(f)] = {Rational(1), Rational(1)};
  return y;
}

Vector orientation_fvs_point(const Graph& g, const OrientationFvs& model, std::span<const VertexId> fvs) {
  Vector p = zeros(model.model.lp.num_variables());
  for (VertexId v : fvs) p(model.model.x[static_cast<std::size_t>(v)]) = 1;
  for (EdgeId f = 0; f < g.num_edges(); ++f) {
    const auto y = integral_witness_orientation_fvs(g, fvs, f);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      for (int k = 0; k < 2; ++k) {
        p(model.yf[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)][static_cast<std::size_t>(k)]) =
            y[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
      }
    }
  }
  return p;
}

SfvsInstance reduce_fvs_to_sfvs(const Graph& g) {
  if (g.num_vertices() == 0) throw PreconditionError("reduction needs at least one vertex");
  SfvsInstance inst;
  const int n = g.num_vertices();
  const int m = g.num_edges();
  inst.original_vertices = n;
  inst.original_edges = m;
  inst.root = n;
  const int total = n + 1 + 3 * m;
  std::vector<Cost> costs(g.costs().begin(), g.costs().end());
  costs.resize(static_cast<std::size_t>(total), Cost::infinite());
  for (VertexId v = 0; v < n; ++v) inst.origin.push_back({SfvsInstance::Role::Original, v});
  inst.origin.push_back({SfvsInstance::Role::Root, -1});
  std::vector<Edge> edges{{0, inst.root}};
  for (EdgeId e = 0; e < m; ++e) {
    const VertexId a = n + 1 + 3 * e, s = a + 1, b = a + 2;
    inst.pivot.push_back({a, b});
    inst.terminal.push_back(s);
    inst.origin.push_back({SfvsInstance::Role::Pivot, e});
    inst.origin.push_back({SfvsInstance::Role::Terminal, e});
    inst.origin.push_back({SfvsInstance::Role::Pivot, e});
    const Edge& ed = g.edge(e);
    edges.push_back({ed.u, a});
    edges.push_back({a, s});
    edges.push_back({s, b});
    edges.push_back({b, ed.v});
  }
  inst.h = Graph(total, std::move(edges), std::move(costs));
  return inst;
}

void verify_sfvs_properties(const SfvsInstance& inst) {
  const Graph& h = inst.h;
  auto fail = [](const std::string& what) { throw VerificationError("subdivided instance: " + what); };
  std::vector<char> is_terminal(static_cast<std::size_t>(h.num_vertices()), 0);
  for (VertexId s : inst.terminal) is_terminal[static_cast<std::size_t>(s)] = 1;
  for (std::size_t e = 0; e < inst.terminal.size(); ++e) {
    const VertexId s = inst.terminal[e];
    if (!h.cost(s).is_infinite() || h.degree(s) != 2) fail("terminal must have infinite cost and degree two");
    for (const Incidence& inc : h.incident(s)) {
      if (!h.cost(inc.neighbor).is_infinite()) fail("terminal neighbours must have infinite cost");
      if (is_terminal[static_cast<std::size_t>(inc.neighbor)]) fail("adjacent terminals");
      for (const Incidence& far : h.incident(inc.neighbor)) {
        if (far.neighbor != s && is_terminal[static_cast<std::size_t>(far.neighbor)]) fail("terminals share a neighbour");
      }
    }
  }
  if (h.degree(inst.root) != 1 || !h.cost(inst.root).is_infinite() || is_terminal[static_cast<std::size_t>(inst.root)]) {
    fail("root must be a degree-one infinite-cost non-terminal");
  }
  // A cycle through a terminal must meet another one: with every other terminal
  // deleted, the terminal's edges are bridges.
  for (VertexId s : inst.terminal) {
    std::vector<VertexId> others;
    for (VertexId t : inst.terminal)
      if (t != s) others.push_back(t);
    const InducedSubgraph rest = delete_vertices(h, others);
    const auto local = std::lower_bound(rest.to_parent.begin(), rest.to_parent.end(), s) - rest.to_parent.begin();
    for (EdgeId e : cyclic_edges(rest.graph)) {
      const Edge& ed = rest.graph.edge(e);
      if (ed.u == local || ed.v == local) fail("a cycle contains a single terminal");
    }
  }
}

CmFormulation build_cm_lp(const Graph& g, const SfvsInstance& inst, CycleRealization cycles) {
  CmFormulation cm;
  cm.model = base_formulation(g);
  Formulation& f = cm.model;
  const int m = g.num_edges();
  const int root_label = m;
  const Graph& h = inst.h;
  cm.z.assign(static_cast<std::size_t>(h.num_vertices()), std::vector<int>(static_cast<std::size_t>(m + 1), -1));

  // The original vertex whose labels a vertex of H carries (itself, or the
  // non-terminal neighbour of a pivot); -1 for root and terminals.
  auto owner = [&](VertexId u) -> VertexId {
    const auto& o = inst.origin[static_cast<std::size_t>(u)];
    if (o.role == SfvsInstance::Role::Original) return o.id;
    if (o.role == SfvsInstance::Role::Pivot) {
      const Edge& ed = g.edge(o.id);
      return inst.pivot[static_cast<std::size_t>(o.id)][0] == u ? ed.u : ed.v;
    }
    return -1;
  };
  auto label_name = [&](int label) { return label == root_label ? std::string("r") : std::to_string(label); };

  for (VertexId u = 0; u < h.num_vertices(); ++u) {
    const VertexId own = owner(u);
    if (own < 0) continue;
    auto& row = cm.z[static_cast<std::size_t>(u)];
    std::vector<int> labels;
    for (const Incidence& inc : g.incident(own)) labels.push_back(inc.edge);
    std::sort(labels.begin(), labels.end());
    labels.push_back(root_label);
    for (int label : labels) {
      row[static_cast<std::size_t>(label)] =
          f.lp.add_variable("z(" + std::to_string(u) + "," + label_name(label) + ")");
    }
  }
  auto x_of = [&](VertexId u) -> int {
    const auto& o = inst.origin[static_cast<std::size_t>(u)];
    return o.role == SfvsInstance::Role::Original ? f.x[static_cast<std::size_t>(o.id)] : -1;
  };

  // Each non-deleted vertex takes exactly one label.
  for (VertexId u = 0; u < h.num_vertices(); ++u) {
    if (owner(u) < 0) continue;
    std::vector<Term> terms;
    if (const int xi = x_of(u); xi >= 0) terms.push_back({xi, 1});
    for (int zi : cm.z[static_cast<std::size_t>(u)])
      if (zi >= 0) terms.push_back({zi, 1});
    f.lp.add_constraint(std::move(terms), Relation::Equal, 1, "label(" + std::to_string(u) + ")");
  }
  // Exactly one pivot of each terminal carries the terminal's label.
  for (EdgeId e = 0; e < m; ++e) {
    const auto [a, b] = inst.pivot[static_cast<std::size_t>(e)];
    f.lp.add_constraint({{cm.z[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)], 1},
                         {cm.z[static_cast<std::size_t>(b)][static_cast<std::size_t>(e)], 1}},
                        Relation::Equal, 1, "pivot(" + std::to_string(e) + ")");
  }
  // Spreading on edges not touching a terminal, both directions. The root has
  // x = 0 and carries only the root label.
  for (EdgeId he = 0; he < h.num_edges(); ++he) {
    const Edge& ed = h.edge(he);
    const auto role_u = inst.origin[static_cast<std::size_t>(ed.u)].role;
    const auto role_v = inst.origin[static_cast<std::size_t>(ed.v)].role;
    if (role_u == SfvsInstance::Role::Terminal || role_v == SfvsInstance::Role::Terminal) continue;
    for (auto [u, v] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
      for (int label = 0; label <= m; ++label) {
        std::vector<Term> terms;
        Rational constant;
        if (const int xi = x_of(u); xi >= 0) terms.push_back({xi, 1});
        auto z_term = [&](VertexId w, int sign) {
          if (w == inst.root) {
            if (label == root_label) constant += Rational(sign);
            return;
          }
          const int zi = cm.z[static_cast<std::size_t>(w)][static_cast<std::size_t>(label)];
          if (zi >= 0) terms.push_back({zi, sign});
        };
        z_term(u, 1);
        z_term(v, -1);
        const bool has_z = std::any_of(terms.begin(), terms.end(), [&](const Term& t) { return t.var != x_of(u); });
        if (!has_z && constant.sign() >= 0) continue;  // implied by nonnegativity
        f.lp.add_constraint(std::move(terms), Relation::GreaterEq, -constant,
                            "spread(" + std::to_string(u) + "->" + std::to_string(v) + "," + label_name(label) + ")");
      }
    }
  }
  if (cycles == CycleRealization::Distance) add_cycle_cover_distance(f, g);
  return cm;
}

OrientationPoint extract_cm_solution(const Graph& g, const SfvsInstance& inst, const CmFormulation& cm, const Vector& values) {
  (void)inst;
  OrientationPoint p;
  p.x = cm.model.x_values(values);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    p.y.push_back({values(cm.z[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(e)]),
                   values(cm.z[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(e)])});
  }
  return p;
}

OrientationPoint extract_orientation(const Graph& g, const Formulation& f, const Vector& values) {
  if (static_cast<int>(f.y.size()) != g.num_edges()) throw PreconditionError("formulation has no orientation variables");
  OrientationPoint p;
  p.x = f.x_values(values);
  for (const auto& y : f.y) p.y.push_back({values(y[0]), values(y[1])});
  return p;
}

bool in_orientation_polyhedron(const Graph& g, const OrientationPoint& p) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (p.x(v).sign() < 0) return false;
  }
  std::vector<Rational> load(static_cast<std::size_t>(g.num_vertices()));
  for (VertexId v = 0; v < g.num_vertices(); ++v) load[static_cast<std::size_t>(v)] = p.x(v);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& y = p.y[static_cast<std::size_t>(e)];
    if (y[0].sign() < 0 || y[1].sign() < 0) return false;
    if (p.x(ed.u) + p.x(ed.v) + y[0] + y[1] < 1) return false;
    load[static_cast<std::size_t>(ed.u)] += y[0];
    load[static_cast<std::size_t>(ed.v)] += y[1];
  }
  return std::all_of(load.begin(), load.end(), [](const Rational& l) { return l <= 1; });
}

}  // namespace fvslab
