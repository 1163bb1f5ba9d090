#include "fvslab/lp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fvslab/errors.hpp"

namespace fvslab {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::GreaterEq: return ">=";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
  }
  return "?";
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

int LinearProgram::add_variable(std::string name, bool nonnegative, Rational cost) {
  const int id = num_variables();
  if (!index_.emplace(name, id).second) throw PreconditionError("duplicate variable name '" + name + "'");
  names_.push_back(std::move(name));
  nonneg_.push_back(nonnegative ? 1 : 0);
  objective_.push_back(std::move(cost));
  return id;
}

int LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs, std::string label) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) throw PreconditionError("constraint refers to unknown variable");
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef.is_zero(); });
  constraints_.push_back({std::move(merged), relation, std::move(rhs), std::move(label)});
  return num_constraints() - 1;
}

std::optional<int> LinearProgram::find_variable(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector LinearProgram::objective() const {
  Vector c = zeros(num_variables());
  for (int j = 0; j < num_variables(); ++j) c(j) = objective_[static_cast<std::size_t>(j)];
  return c;
}

RowVector LinearProgram::dense_row(int i) const {
  RowVector row = RowVector::Constant(num_variables(), Rational(0));
  for (const Term& t : constraint(i).terms) row(t.var) = t.coef;
  return row;
}

Rational LinearProgram::activity(int i, const Vector& point) const {
  Rational sum;
  for (const Term& t : constraint(i).terms) sum.addmul(t.coef, point(t.var));
  return sum;
}

namespace {

bool holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::GreaterEq: return lhs >= rhs;
    case Relation::LessEq: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
  }
  return false;
}

Rational dot(const Vector& a, const Vector& b) {
  Rational sum;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!a(i).is_zero()) sum.addmul(a(i), b(i));
  }
  return sum;
}

}  // namespace

bool LinearProgram::satisfied(int i, const Vector& point) const {
  const Constraint& c = constraint(i);
  return holds(activity(i, point), c.relation, c.rhs);
}

std::optional<int> LinearProgram::first_violation(const Vector& point) const {
  if (point.size() != num_variables()) throw PreconditionError("point has wrong dimension");
  for (int i = 0; i < num_constraints(); ++i) {
    if (!satisfied(i, point)) return i;
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (nonnegative(j) && point(j).sign() < 0) return num_constraints() + j;
  }
  return std::nullopt;
}

std::vector<int> LinearProgram::tight_set(const Vector& point) const {
  std::vector<int> out;
  for (int i = 0; i < num_constraints(); ++i) {
    if (activity(i, point) == constraint(i).rhs) out.push_back(i);
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (nonnegative(j) && point(j).is_zero()) out.push_back(num_constraints() + j);
  }
  return out;
}

std::string LinearProgram::dump() const {
  std::ostringstream out;
  out << "min:";
  for (int j = 0; j < num_variables(); ++j) {
    if (!cost(j).is_zero()) out << ' ' << cost(j) << '*' << name(j);
  }
  out << '\n';
  for (const Constraint& c : constraints_) {
    if (c.terms.empty()) out << '0';
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      if (k > 0) out << ' ';
      out << c.terms[k].coef << '*' << name(c.terms[k].var);
    }
    out << ' ' << to_string(c.relation) << ' ' << c.rhs;
    if (!c.label.empty()) out << "  # " << c.label;
    out << '\n';
  }
  for (int j = 0; j < num_variables(); ++j) {
    if (!nonnegative(j)) out << "free " << name(j) << '\n';
  }
  return out.str();
}

namespace {

// Consecutive degenerate pivots tolerated under the largest-coefficient rule
// before switching to Bland's rule for the rest of the solve.
constexpr int kDegenerateStreakLimit = 50;

/// Dense exact tableau. Column `cols` holds the right-hand side and, in the
/// reduced-cost row, minus the objective value.
class Tableau {
public:
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : t_(Matrix::Constant(rows, cols + 1, Rational(0))),
        d_(RowVector::Constant(cols + 1, Rational(0))),
        basis_(static_cast<std::size_t>(rows), -1),
        blocked_(static_cast<std::size_t>(cols), 0),
        cols_(cols) {}

  Rational& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  Rational& rhs(Eigen::Index r) { return t_(r, cols_); }
  void set_basic(Eigen::Index r, int col) { basis_[static_cast<std::size_t>(r)] = col; }
  [[nodiscard]] int basic(Eigen::Index r) const { return basis_[static_cast<std::size_t>(r)]; }
  void block(Eigen::Index c) { blocked_[static_cast<std::size_t>(c)] = 1; }
  [[nodiscard]] Eigen::Index rows() const { return t_.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return cols_; }
  [[nodiscard]] long pivots() const { return pivots_; }
  [[nodiscard]] Rational objective() const { return -d_(cols_); }
  [[nodiscard]] const Rational& reduced_cost(Eigen::Index c) const { return d_(c); }

  void price(const std::vector<Rational>& cost) {
    for (Eigen::Index j = 0; j < cols_; ++j) d_(j) = cost[static_cast<std::size_t>(j)];
    d_(cols_) = 0;
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const Rational& cb = cost[static_cast<std::size_t>(basic(r))];
      if (cb.is_zero()) continue;
      for (Eigen::Index j = 0; j <= cols_; ++j) {
        if (!t_(r, j).is_zero()) d_(j).submul(cb, t_(r, j));
      }
    }
  }

  LpStatus optimize() {
    for (;;) {
      const Eigen::Index c = entering();
      if (c < 0) return LpStatus::Optimal;
      const Eigen::Index r = leaving(c);
      if (r < 0) return LpStatus::Unbounded;
      if (t_(r, cols_).is_zero()) {
        if (++degenerate_streak_ >= kDegenerateStreakLimit) bland_ = true;
      } else {
        degenerate_streak_ = 0;
      }
      pivot(r, c);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Rational inv = Rational(1) / t_(r, c);
    nonzero_.clear();
    for (Eigen::Index k = 0; k <= cols_; ++k) {
      if (!t_(r, k).is_zero()) {
        t_(r, k) *= inv;
        nonzero_.push_back(k);
      }
    }
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i == r || t_(i, c).is_zero()) continue;
      const Rational f = t_(i, c);
      for (Eigen::Index k : nonzero_) t_(i, k).submul(f, t_(r, k));
    }
    if (!d_(c).is_zero()) {
      const Rational f = d_(c);
      for (Eigen::Index k : nonzero_) d_(k).submul(f, t_(r, k));
    }
    basis_[static_cast<std::size_t>(r)] = static_cast<int>(c);
    ++pivots_;
  }

  /// Blocks every nonbasic column with positive reduced cost, restricting
  /// later stages to the current optimal face.
  void restrict_to_optimal_face() {
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (d_(j).sign() > 0) block(j);
    }
  }

  [[nodiscard]] std::vector<Rational> column_values() const {
    std::vector<Rational> v(static_cast<std::size_t>(cols_));
    for (Eigen::Index r = 0; r < rows(); ++r) v[static_cast<std::size_t>(basic(r))] = t_(r, cols_);
    return v;
  }

private:
  Eigen::Index entering() const {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (blocked_[static_cast<std::size_t>(j)] || d_(j).sign() >= 0) continue;
      if (bland_) return j;
      if (best < 0 || d_(j) < d_(best)) best = j;
    }
    return best;
  }

  // Minimum ratio; ties go to the lowest basic column index.
  Eigen::Index leaving(Eigen::Index c) const {
    Eigen::Index best = -1;
    Rational best_ratio;
    for (Eigen::Index r = 0; r < rows(); ++r) {
      if (t_(r, c).sign() <= 0) continue;
      Rational ratio = t_(r, cols_) / t_(r, c);
      if (best < 0 || ratio < best_ratio || (ratio == best_ratio && basic(r) < basic(best))) {
        best = r;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  Matrix t_;
  RowVector d_;
  std::vector<int> basis_;
  std::vector<char> blocked_;
  std::vector<Eigen::Index> nonzero_;
  Eigen::Index cols_;
  long pivots_ = 0;
  int degenerate_streak_ = 0;
  bool bland_ = false;
};

/// Column layout: one column per variable, a second (negated) column per free
/// variable, one slack per inequality, one artificial per row lacking a +1 slack.
struct StandardForm {
  std::vector<int> plus;
  std::vector<int> minus;  // -1 for nonnegative variables
  int structural = 0;
  int first_artificial = 0;
  int columns = 0;
};

LpSolution run_simplex(const LinearProgram& lp, std::span<const Vector> objectives, bool feasibility_only) {
  const int n = lp.num_variables();
  const int m = lp.num_constraints();
  StandardForm sf;
  sf.plus.resize(static_cast<std::size_t>(n));
  sf.minus.assign(static_cast<std::size_t>(n), -1);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    sf.plus[static_cast<std::size_t>(j)] = col++;
    if (!lp.nonnegative(j)) sf.minus[static_cast<std::size_t>(j)] = col++;
  }
  sf.structural = col;
  std::vector<int> slack(static_cast<std::size_t>(m), -1);
  std::vector<int> slack_sign(static_cast<std::size_t>(m), 0);
  std::vector<int> flip(static_cast<std::size_t>(m), 1);
  std::vector<char> needs_artificial(static_cast<std::size_t>(m), 0);
  int artificials = 0;
  for (int i = 0; i < m; ++i) {
    const Constraint& c = lp.constraint(i);
    const auto ui = static_cast<std::size_t>(i);
    if (c.relation != Relation::Equal) {
      slack[ui] = col++;
      slack_sign[ui] = c.relation == Relation::LessEq ? 1 : -1;
    }
    flip[ui] = c.rhs.sign() < 0 ? -1 : 1;
    if (slack_sign[ui] * flip[ui] != 1) {
      needs_artificial[ui] = 1;
      ++artificials;
    }
  }
  sf.first_artificial = col;
  sf.columns = col + artificials;

  Tableau tab(m, sf.columns);
  int next_artificial = sf.first_artificial;
  for (int i = 0; i < m; ++i) {
    const Constraint& c = lp.constraint(i);
    const auto ui = static_cast<std::size_t>(i);
    const Rational sign(flip[ui]);
    for (const Term& t : c.terms) {
      tab.at(i, sf.plus[static_cast<std::size_t>(t.var)]) = sign * t.coef;
      if (const int mc = sf.minus[static_cast<std::size_t>(t.var)]; mc >= 0) tab.at(i, mc) = -(sign * t.coef);
    }
    tab.rhs(i) = sign * c.rhs;
    if (slack[ui] >= 0) tab.at(i, slack[ui]) = Rational(slack_sign[ui] * flip[ui]);
    if (needs_artificial[ui]) {
      tab.at(i, next_artificial) = 1;
      tab.set_basic(i, next_artificial);
      tab.block(next_artificial);
      ++next_artificial;
    } else {
      tab.set_basic(i, slack[ui]);
    }
  }

  LpSolution sol;
  if (artificials > 0) {
    std::vector<Rational> phase1(static_cast<std::size_t>(sf.columns));
    for (int a = sf.first_artificial; a < sf.columns; ++a) phase1[static_cast<std::size_t>(a)] = 1;
    tab.price(phase1);
    tab.optimize();  // bounded below by zero
    if (tab.objective().sign() > 0) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = tab.pivots();
      return sol;
    }
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are redundant and keep their artificial basic at zero.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basic(r) < sf.first_artificial) continue;
      for (int j = 0; j < sf.first_artificial; ++j) {
        if (!tab.at(r, j).is_zero()) {
          tab.pivot(r, j);
          break;
        }
      }
    }
  }

  sol.status = LpStatus::Optimal;
  if (!feasibility_only) {
    for (std::size_t stage = 0; stage < objectives.size(); ++stage) {
      const Vector& obj = objectives[stage];
      if (obj.size() != n) throw PreconditionError("objective has wrong dimension");
      std::vector<Rational> cost(static_cast<std::size_t>(sf.columns));
      for (int j = 0; j < n; ++j) {
        cost[static_cast<std::size_t>(sf.plus[static_cast<std::size_t>(j)])] = obj(j);
        if (const int mc = sf.minus[static_cast<std::size_t>(j)]; mc >= 0) cost[static_cast<std::size_t>(mc)] = -obj(j);
      }
      if (stage > 0) tab.restrict_to_optimal_face();
      tab.price(cost);
      if (tab.optimize() == LpStatus::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.pivots = tab.pivots();
        return sol;
      }
      sol.objective_values.push_back(tab.objective());
    }
  }

  const std::vector<Rational> colv = tab.column_values();
  sol.values = zeros(n);
  for (int j = 0; j < n; ++j) {
    sol.values(j) = colv[static_cast<std::size_t>(sf.plus[static_cast<std::size_t>(j)])];
    if (const int mc = sf.minus[static_cast<std::size_t>(j)]; mc >= 0) sol.values(j) -= colv[static_cast<std::size_t>(mc)];
  }
  if (!sol.objective_values.empty()) sol.objective = sol.objective_values.front();
  sol.tight = lp.tight_set(sol.values);
  sol.pivots = tab.pivots();
  if (const auto bad = lp.first_violation(sol.values)) {
    throw VerificationError("simplex returned a point violating row " + std::to_string(*bad));
  }
  return sol;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const Vector c = lp.objective();
  return run_simplex(lp, std::span<const Vector>(&c, 1), false);
}

LpSolution solve_lexicographic(const LinearProgram& lp, std::span<const Vector> objectives) {
  return run_simplex(lp, objectives, false);
}

std::vector<std::vector<int>> independent_blocks(const LinearProgram& lp) {
  std::vector<int> parent(static_cast<std::size_t>(lp.num_variables()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Constraint& c : lp.constraints()) {
    for (std::size_t k = 1; k < c.terms.size(); ++k) {
      const int a = find(c.terms[0].var);
      const int b = find(c.terms[k].var);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& c = lp.constraint(i);
    by_root[c.terms.empty() ? -1 - i : find(c.terms[0].var)].push_back(i);
  }
  std::vector<std::vector<int>> out;
  for (auto& [root, rows] : by_root) out.push_back(std::move(rows));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_feasible(const LinearProgram& lp) {
  for (const std::vector<int>& rows : independent_blocks(lp)) {
    LinearProgram block;
    std::map<int, int> local;
    for (int i : rows) {
      const Constraint& c = lp.constraint(i);
      std::vector<Term> terms;
      for (const Term& t : c.terms) {
        auto [it, fresh] = local.try_emplace(t.var, 0);
        if (fresh) it->second = block.add_variable(lp.name(t.var), lp.nonnegative(t.var));
        terms.push_back({it->second, t.coef});
      }
      block.add_constraint(std::move(terms), c.relation, c.rhs, c.label);
    }
    if (run_simplex(block, {}, true).status != LpStatus::Optimal) return false;
  }
  return true;
}

namespace {

void require_feasible(const LinearProgram& lp, const Vector& point, const char* who) {
  if (const auto bad = lp.first_violation(point)) {
    throw PreconditionError(std::string(who) + ": point violates row " + std::to_string(*bad));
  }
}

}  // namespace

bool is_vertex(const LinearProgram& lp, const Vector& point) {
  require_feasible(lp, point, "is_vertex");
  const std::vector<int> tight = lp.tight_set(point);
  const int n = lp.num_variables();
  if (static_cast<int>(tight.size()) < n) return false;
  Matrix rows = Matrix::Constant(static_cast<Eigen::Index>(tight.size()), n, Rational(0));
  for (std::size_t k = 0; k < tight.size(); ++k) {
    const int id = tight[k];
    if (id < lp.num_constraints()) {
      for (const Term& t : lp.constraint(id).terms) rows(static_cast<Eigen::Index>(k), t.var) = t.coef;
    } else {
      rows(static_cast<Eigen::Index>(k), id - lp.num_constraints()) = 1;
    }
  }
  return exact_rank(rows) == n;
}

bool is_minimal_point(const LinearProgram& lp, const Vector& point) {
  require_feasible(lp, point, "is_minimal_point");
  const int n = lp.num_variables();
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (lp.nonnegative(j) && point(j).is_zero()) blocked[static_cast<std::size_t>(j)] = 1;
  }
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& c = lp.constraint(i);
    if (lp.activity(i, point) != c.rhs) continue;
    for (const Term& t : c.terms) {
      const int s = t.coef.sign();
      const bool blocks = c.relation == Relation::Equal || (c.relation == Relation::GreaterEq && s > 0) ||
                          (c.relation == Relation::LessEq && s < 0);
      if (blocks) blocked[static_cast<std::size_t>(t.var)] = 1;
    }
  }
  return std::all_of(blocked.begin(), blocked.end(), [](char b) { return b != 0; });
}

CoordinateRange coordinate_range_over_optimal_face(const LinearProgram& lp, std::span<const Vector> objectives,
                                                   int coordinate) {
  std::vector<Vector> objs(objectives.begin(), objectives.end());
  Vector unit = zeros(lp.num_variables());
  unit(coordinate) = 1;
  objs.push_back(unit);
  CoordinateRange range;
  const LpSolution lo = solve_lexicographic(lp, objs);
  if (lo.status == LpStatus::Infeasible) throw PreconditionError("coordinate range of an infeasible LP");
  if (lo.optimal()) range.min = lo.values(coordinate);
  objs.back() = -unit;
  const LpSolution hi = solve_lexicographic(lp, objs);
  if (hi.optimal()) range.max = hi.values(coordinate);
  return range;
}

CoordinateRange coordinate_range_over_optimal_face(const LinearProgram& lp, int coordinate) {
  const Vector c = lp.objective();
  return coordinate_range_over_optimal_face(lp, std::span<const Vector>(&c, 1), coordinate);
}

bool has_unique_optimum(const LinearProgram& lp, std::span<const Vector> objectives) {
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!coordinate_range_over_optimal_face(lp, objectives, j).degenerate()) return false;
  }
  return true;
}

MinimalVertexResult solve_minimal_vertex(const LinearProgram& lp, std::span<const Vector> objectives) {
  if (objectives.empty()) throw PreconditionError("solve_minimal_vertex needs at least one objective");
  MinimalVertexResult out;
  Vector mass = zeros(lp.num_variables());
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.nonnegative(j)) mass(j) = 1;
  }
  std::vector<Vector> objs(objectives.begin(), objectives.end());
  objs.push_back(mass);
  out.solution = solve_lexicographic(lp, objs);
  if (!out.solution.optimal()) return out;
  const std::vector<Rational> optimum(out.solution.objective_values.begin(),
                                      out.solution.objective_values.end() - 1);
  out.solution.objective_values.pop_back();
  if (is_minimal_point(lp, out.solution.values)) {
    out.certified = true;
    return out;
  }
  objs.pop_back();
  Rational eps = 1;
  for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
    std::vector<Vector> perturbed = objs;
    perturbed.back() += eps * mass;
    LpSolution s = solve_lexicographic(lp, perturbed);
    if (!s.optimal()) continue;
    bool same = true;
    for (std::size_t k = 0; k < objs.size(); ++k) {
      if (dot(objs[k], s.values) != optimum[k]) same = false;
    }
    if (!same || !is_minimal_point(lp, s.values)) continue;
    s.objective_values = optimum;
    s.objective = optimum.front();
    out.solution = std::move(s);
    out.certified = true;
    out.perturbed = true;
    return out;
  }
  return out;
}

FixedProgram fix_variables(const LinearProgram& lp, const std::map<int, Rational>& fixed) {
  FixedProgram out;
  std::vector<int> renumber(static_cast<std::size_t>(lp.num_variables()), -1);
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (fixed.contains(j)) continue;
    renumber[static_cast<std::size_t>(j)] = out.lp.add_variable(lp.name(j), lp.nonnegative(j), lp.cost(j));
    out.kept.push_back(j);
  }
  for (const Constraint& c : lp.constraints()) {
    Rational rhs = c.rhs;
    std::vector<Term> terms;
    for (const Term& t : c.terms) {
      if (const auto it = fixed.find(t.var); it != fixed.end()) {
        rhs.submul(t.coef, it->second);
      } else {
        terms.push_back({renumber[static_cast<std::size_t>(t.var)], t.coef});
      }
    }
    if (terms.empty()) {
      if (!holds(Rational(0), c.relation, rhs)) out.trivially_infeasible = true;
      continue;
    }
    out.lp.add_constraint(std::move(terms), c.relation, std::move(rhs), c.label);
  }
  return out;
}

}  // namespace fvslab
