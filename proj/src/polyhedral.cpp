#include "fvslab/polyhedral.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "fvslab/generators.hpp"

namespace fvslab {

std::string to_string(Polyhedron p) {
  switch (p) {
    case Polyhedron::StrongDensity: return "sd";
    case Polyhedron::WeakDensity: return "wd";
    case Polyhedron::WdSubgraphs: return "wd-sub";
    case Polyhedron::CycleCover: return "cc";
    case Polyhedron::TwoPseudotreeCover: return "2pt";
    case Polyhedron::OrientationProjection: return "orient";
  }
  return "?";
}

Polyhedron parse_polyhedron(std::string_view text) {
  for (Polyhedron p : {Polyhedron::StrongDensity, Polyhedron::WeakDensity, Polyhedron::WdSubgraphs, Polyhedron::CycleCover,
                       Polyhedron::TwoPseudotreeCover, Polyhedron::OrientationProjection}) {
    if (to_string(p) == text) return p;
  }
  throw ParseError("unknown polyhedron '" + std::string(text) + "'");
}

std::string to_string(ScanKind k) {
  switch (k) {
    case ScanKind::WeakDensity: return "wd";
    case ScanKind::Orientation: return "orient";
    case ScanKind::StrongDensity: return "sd";
  }
  return "?";
}

ScanKind parse_scan_kind(std::string_view text) {
  for (ScanKind k : {ScanKind::WeakDensity, ScanKind::Orientation, ScanKind::StrongDensity}) {
    if (to_string(k) == text) return k;
  }
  throw ParseError("unknown scan kind '" + std::string(text) + "'");
}

std::string to_string(Threshold t) {
  switch (t) {
    case Threshold::AtLeastHalf: return ">=1/2";
    case Threshold::AtLeastThird: return ">=1/3";
    case Threshold::Violation: return "violation";
  }
  return "?";
}

namespace {

ViolatedConstraint unit_row(CutFamily kind, std::vector<VertexId> vertices, const Vector& x) {
  ViolatedConstraint c;
  c.kind = kind;
  for (VertexId v : vertices) {
    c.coefficients.emplace_back(v, 1);
    c.lhs += x(v);
  }
  c.rhs = 1;
  c.vertices = std::move(vertices);
  return c;
}

Membership from_cuts(std::vector<ViolatedConstraint> cuts) {
  Membership m;
  m.member = cuts.empty();
  if (!cuts.empty()) m.witness = *std::min_element(cuts.begin(), cuts.end(), more_violated);
  return m;
}

bool connected_mask(const Graph& g, VertexMask m) {
  if (m == 0) return false;
  const VertexMask start = m & (~m + 1);
  VertexMask seen = start;
  VertexMask frontier = start;
  while (frontier != 0) {
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

Membership membership(const Graph& g, Polyhedron kind, const Vector& x, const Caps& caps) {
  if (x.size() != g.num_vertices()) throw PreconditionError("point has the wrong dimension");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).sign() < 0) return {};
  }
  switch (kind) {
    case Polyhedron::WeakDensity: return from_cuts(weak_density_cuts(g, x, caps));
    case Polyhedron::StrongDensity: return from_cuts(strong_density_cuts(g, x, caps));
    case Polyhedron::WdSubgraphs: return from_cuts(wd_subgraph_cuts(g, x, caps));
    case Polyhedron::CycleCover: {
      std::vector<ViolatedConstraint> cuts;
      for (const Cycle& c : enumerate_cycles(g, caps)) {
        auto row = unit_row(CutFamily::Cycle, c.vertices, x);
        if (row.lhs < row.rhs) cuts.push_back(std::move(row));
      }
      return from_cuts(std::move(cuts));
    }
    case Polyhedron::TwoPseudotreeCover: {
      if (g.num_vertices() > caps.density_vertices) throw CapExceeded("2-pseudotree enumeration above the density cap");
      std::vector<ViolatedConstraint> cuts;
      for (VertexMask m = 1; m < (VertexMask{1} << g.num_vertices()); ++m) {
        if (edges_within(g, m) < std::popcount(m) + 1 || !connected_mask(g, m)) continue;
        auto row = unit_row(CutFamily::TwoPseudotree, mask_to_set(m), x);
        if (row.lhs < row.rhs) cuts.push_back(std::move(row));
      }
      return from_cuts(std::move(cuts));
    }
    case Polyhedron::OrientationProjection: {
      const Formulation f = build_orientation(g);
      std::map<int, Rational> fixed;
      for (VertexId v = 0; v < g.num_vertices(); ++v) fixed[f.x[static_cast<std::size_t>(v)]] = x(v);
      const FixedProgram rest = fix_variables(f.lp, fixed);
      return {!rest.trivially_infeasible && is_feasible(rest.lp), std::nullopt};
    }
  }
  return {};
}

bool ExtremePointReport::theorem_violation() const {
  if (kind == ScanKind::StrongDensity) return false;
  if (!is_vertex || threshold == Threshold::Violation) return true;
  return kind == ScanKind::Orientation && !is_minimal;
}

bool ExtremePointReport::conjecture_finding() const {
  return kind == ScanKind::StrongDensity && threshold != Threshold::AtLeastHalf;
}

ExtremePointReport extreme_point(const ScanInstance& instance, ScanKind kind, const Vector& objective, const Caps& caps) {
  const Graph& g = instance.graph;
  if (objective.size() != g.num_vertices()) throw PreconditionError("objective has the wrong dimension");
  if (kind == ScanKind::StrongDensity ? is_acyclic(g) : is_pseudoforest(g)) {
    throw PreconditionError("graph " + instance.id + " has no extreme point of interest for " + to_string(kind));
  }
  Formulation f = kind == ScanKind::WeakDensity     ? build_weak_density(g, caps)
                  : kind == ScanKind::StrongDensity ? build_strong_density(g, caps)
                                                    : build_orientation(g);
  ExtremePointReport r;
  r.graph_id = instance.id;
  r.kind = kind;
  r.objective = objective;

  Vector full = zeros(f.lp.num_variables());
  for (VertexId v = 0; v < g.num_vertices(); ++v) full(f.x[static_cast<std::size_t>(v)]) = objective(v);
  const std::vector<Vector> objectives{full};
  LpSolution sol;
  if (kind == ScanKind::Orientation) {
    const auto mv = solve_minimal_vertex(f.lp, objectives);
    sol = mv.solution;
    if (!sol.optimal()) throw VerificationError("orientation LP not solved on " + instance.id);
    r.is_minimal = mv.certified && is_minimal_point(f.lp, sol.values);
  } else {
    sol = solve_lexicographic(f.lp, objectives);
    if (!sol.optimal()) throw VerificationError("density LP not solved on " + instance.id);
    r.is_minimal = is_minimal_point(f.lp, sol.values);
  }
  r.is_vertex = is_vertex(f.lp, sol.values);
  r.point = f.x_values(sol.values);
  for (Eigen::Index i = 0; i < r.point.size(); ++i) r.max_x = std::max(r.max_x, r.point(i));
  r.threshold = r.max_x >= Rational(1, 2)   ? Threshold::AtLeastHalf
                : r.max_x >= Rational(1, 3) ? Threshold::AtLeastThird
                                            : Threshold::Violation;
  return r;
}

std::vector<Vector> scan_objectives(int n, int count, std::uint64_t seed) {
  std::vector<Vector> out;
  out.push_back(Vector::Constant(n, Rational(1)));
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    Vector c(n);
    for (int i = 0; i < n; ++i) c(i) = random_positive_rational(rng);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ExtremePointReport> extreme_point_scan(std::span<const ScanInstance> corpus, ScanKind kind,
                                                   const ScanOptions& options, const Caps& caps) {
  struct Task {
    std::size_t instance;
    Vector objective;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::seed_seq seq{options.seed, static_cast<std::uint64_t>(i)};
    std::array<std::uint64_t, 1> derived{};
    seq.generate(derived.begin(), derived.end());
    for (Vector& c : scan_objectives(corpus[i].graph.num_vertices(), options.random_objectives, derived[0])) {
      tasks.push_back({i, std::move(c)});
    }
  }
  std::vector<ExtremePointReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        reports[t] = extreme_point(corpus[tasks[t].instance], kind, tasks[t].objective, caps);
      } catch (...) {
        const std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

namespace {

using PairIndex = std::array<std::array<int, 8>, 8>;

PairIndex pair_index(int n) {
  PairIndex idx{};
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) idx[i][j] = idx[j][i] = k++;
  }
  return idx;
}

// True iff no relabeling gives a smaller code. `images[k][b]` is the bit that
// pair b moves to under permutation k.
bool is_canonical(std::uint32_t code, const std::vector<std::vector<int>>& images) {
  for (const auto& img : images) {
    std::uint32_t c = 0;
    for (std::uint32_t rest = code; rest != 0; rest &= rest - 1) c |= 1U << img[static_cast<std::size_t>(std::countr_zero(rest))];
    if (c < code) return false;
  }
  return true;
}

}  // namespace

std::vector<Graph> connected_non_pseudoforests(int n) {
  if (n < 1 || n > 6) throw CapExceeded("graph catalogue supports 1 <= n <= 6");
  const PairIndex idx = pair_index(n);
  const int pairs = n * (n - 1) / 2;
  std::vector<std::vector<int>> images;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> img(static_cast<std::size_t>(pairs));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) img[static_cast<std::size_t>(idx[i][j])] = idx[p[i]][p[j]];
    }
    images.push_back(std::move(img));
  } while (std::next_permutation(p.begin(), p.end()));

  std::set<std::uint32_t> canonical;
  for (std::uint32_t code = 0; code < (1U << pairs); ++code) {
    if (std::popcount(code) < n + 1) continue;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (code >> idx[i][j] & 1U) edges.push_back({i, j});
      }
    }
    if (is_connected(Graph(n, edges)) && is_canonical(code, images)) canonical.insert(code);
  }
  std::vector<Graph> out;
  for (std::uint32_t code : canonical) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (code >> idx[i][j] & 1U) edges.push_back({i, j});
      }
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

std::vector<ScanInstance> scan_corpus(int max_n) {
  std::vector<ScanInstance> out;
  for (int n = 4; n <= max_n; ++n) {
    int k = 0;
    for (Graph& g : connected_non_pseudoforests(n)) {
      out.push_back({"n" + std::to_string(n) + "-" + std::to_string(k++), std::move(g)});
    }
  }
  return out;
}

std::vector<Rational> density_slack_function(const Graph& g, const Vector& x) {
  const int n = g.num_vertices();
  if (n > 24) throw CapExceeded("f_x tabulation above 24 vertices");
  std::vector<Rational> f(std::size_t{1} << n);
  for (VertexMask s = 1; s < (VertexMask{1} << n); ++s) {
    Rational value = excess(g, s);
    for (VertexMask rest = s; rest != 0; rest &= rest - 1) {
      const int u = std::countr_zero(rest);
      int d = 0;
      for (const Incidence& inc : g.incident(u)) d += static_cast<int>(s >> inc.neighbor & 1U);
      value.submul(Rational(d - 1), x(u));
    }
    f[s] = std::move(value);
  }
  return f;
}

std::optional<SetPair> supermodularity_violation(const Graph& g, const Vector& x, const Caps& caps) {
  if (g.num_vertices() > caps.supermodularity_vertices) throw CapExceeded("supermodularity check above its vertex cap");
  check_point(g, x);
  const auto f = density_slack_function(g, x);
  const VertexMask full = (VertexMask{1} << g.num_vertices()) - 1;
  for (VertexMask a = 1; a <= full; ++a) {
    for (VertexMask b = a + 1; b <= full; ++b) {
      if ((a & b) == a || (a & b) == b) continue;
      if (f[a] + f[b] > f[a | b] + f[a & b]) return SetPair{a, b};
    }
  }
  return std::nullopt;
}

bool check_supermodularity(const Graph& g, const Vector& x, const Caps& caps) {
  check_point(g, x);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) >= Rational(1, 2)) throw PreconditionError("supermodularity needs every coordinate below 1/2");
  }
  return !supermodularity_violation(g, x, caps).has_value();
}

TightSetFamily tight_sets(const Graph& g, const Vector& x, const Caps& caps) {
  if (g.num_vertices() > caps.tight_set_vertices) throw CapExceeded("tight-set enumeration above its vertex cap");
  check_point(g, x);
  TightSetFamily t;
  t.x = x;
  const auto f = density_slack_function(g, x);
  for (VertexMask s = 1; s < f.size(); ++s) {
    if (f[s].is_zero()) t.sets.push_back(s);
  }
  return t;
}

namespace {

std::string mask_text(VertexMask m) {
  std::string s = "{";
  for (VertexId v : mask_to_set(m)) s += (s.size() > 1 ? "," : "") + std::to_string(v);
  return s + "}";
}

std::vector<int> density_row(const Graph& g, VertexMask s) {
  std::vector<int> row(static_cast<std::size_t>(g.num_vertices()), 0);
  for (VertexId u : mask_to_set(s)) {
    int d = 0;
    for (const Incidence& inc : g.incident(u)) d += static_cast<int>(s >> inc.neighbor & 1U);
    row[static_cast<std::size_t>(u)] = d - 1;
  }
  return row;
}

}  // namespace

TightSetReport check_tight_set_structure(const Graph& g, const Vector& x, const Caps& caps) {
  if (g.num_vertices() > caps.tight_set_vertices) throw CapExceeded("tight-set enumeration above its vertex cap");
  check_point(g, x);
  TightSetReport r;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) >= Rational(1, 2)) return r;
  }
  const Formulation wd = build_weak_density(g, caps);
  Vector full = zeros(wd.lp.num_variables());
  for (VertexId v = 0; v < g.num_vertices(); ++v) full(wd.x[static_cast<std::size_t>(v)]) = x(v);
  if (!wd.lp.feasible(full)) throw PreconditionError("point is outside the weak density polyhedron");
  r.applicable = true;
  r.is_vertex = is_vertex(wd.lp, full);
  r.family = tight_sets(g, x, caps);
  const std::set<VertexMask> tight(r.family.sets.begin(), r.family.sets.end());

  for (VertexMask a : r.family.sets) {
    if (std::popcount(a) < 2) r.failures.push_back("tight singleton " + mask_text(a));
    if (!connected_mask(g, a)) r.failures.push_back("tight set " + mask_text(a) + " induces a disconnected graph");
  }
  for (std::size_t i = 0; i < r.family.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < r.family.sets.size(); ++j) {
      const VertexMask a = r.family.sets[i];
      const VertexMask b = r.family.sets[j];
      const std::string pair = mask_text(a) + " and " + mask_text(b);
      if ((a & b) == 0) {
        r.failures.push_back("disjoint tight sets " + pair);
        continue;
      }
      if (!tight.contains(a & b) || !tight.contains(a | b)) r.failures.push_back("union or intersection not tight for " + pair);
      const VertexMask only_a = a & ~b;
      const VertexMask only_b = b & ~a;
      for (const Edge& e : g.edges()) {
        const VertexMask eu = VertexMask{1} << e.u;
        const VertexMask ev = VertexMask{1} << e.v;
        if (((only_a & eu) && (only_b & ev)) || ((only_a & ev) && (only_b & eu))) {
          r.failures.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " crosses " + pair);
        }
      }
      const auto ra = density_row(g, a);
      const auto rb = density_row(g, b);
      const auto rm = density_row(g, a & b);
      const auto rj = density_row(g, a | b);
      for (std::size_t u = 0; u < ra.size(); ++u) {
        if (ra[u] + rb[u] != rm[u] + rj[u]) {
          r.failures.push_back("row identity fails at vertex " + std::to_string(u) + " for " + pair);
          break;
        }
      }
    }
  }
  return r;
}

IntegralityGap integrality_gap(const Graph& g, Problem problem, std::span<const ModelPart> parts, const Caps& caps) {
  const auto opt = brute_force(g, problem, caps);
  if (!opt) throw PreconditionError("no finite-cost " + to_string(problem) + " solution");
  const auto lp = cutting_plane_solve(g, parts, caps);
  if (!lp.solution.optimal()) throw VerificationError("relaxation not solved");
  if (g.has_infinite_cost() && lp.solution.objective_values.front().sign() > 0) {
    throw PreconditionError("relaxation puts weight on infinite-cost vertices");
  }
  IntegralityGap gap;
  gap.lp = lp.solution.objective_values.back();
  gap.ip = opt->value;
  if (!gap.lp.is_zero()) gap.ratio = gap.ip / gap.lp;
  return gap;
}

}  // namespace fvslab
