#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fvslab/errors.hpp"
#include "fvslab/rational.hpp"

namespace fvslab {

enum class Relation { GreaterEq, LessEq, Equal };

std::string to_string(Relation r);

struct Term {
  int var;
  Rational coef;
};

/// One row of a linear program, kept as a sparse term list.
struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::GreaterEq;
  Rational rhs;
  std::string label;
};

/// Minimization LP over named variables with exact coefficients.
class LinearProgram {
public:
  /// Returns the new variable index.
  int add_variable(std::string name, bool nonnegative = true, Rational cost = 0);
  /// Duplicate variables in `terms` are merged and zero coefficients dropped.
  int add_constraint(std::vector<Term> terms, Relation relation, Rational rhs, std::string label = {});
  void set_cost(int var, Rational cost) { objective_.at(static_cast<std::size_t>(var)) = std::move(cost); }

  [[nodiscard]] int num_variables() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] int num_constraints() const { return static_cast<int>(constraints_.size()); }
  [[nodiscard]] const std::string& name(int var) const { return names_[static_cast<std::size_t>(var)]; }
  [[nodiscard]] bool nonnegative(int var) const { return nonneg_[static_cast<std::size_t>(var)] != 0; }
  [[nodiscard]] const Rational& cost(int var) const { return objective_[static_cast<std::size_t>(var)]; }
  [[nodiscard]] const Constraint& constraint(int i) const { return constraints_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::span<const Constraint> constraints() const { return constraints_; }
  [[nodiscard]] std::optional<int> find_variable(const std::string& name) const;
  /// Objective as a dense vector.
  [[nodiscard]] Vector objective() const;
  [[nodiscard]] RowVector dense_row(int i) const;

  [[nodiscard]] Rational activity(int i, const Vector& point) const;
  [[nodiscard]] bool satisfied(int i, const Vector& point) const;
  /// Index of the first violated constraint or negative bound, encoded like LpSolution::tight.
  [[nodiscard]] std::optional<int> first_violation(const Vector& point) const;
  [[nodiscard]] bool feasible(const Vector& point) const { return !first_violation(point).has_value(); }
  /// Constraint indices, then num_constraints() + j for every tight bound x_j >= 0.
  [[nodiscard]] std::vector<int> tight_set(const Vector& point) const;

  /// One constraint per line: `coef*var ... REL rhs`, exact fractions.
  [[nodiscard]] std::string dump() const;

private:
  std::vector<std::string> names_;
  std::vector<char> nonneg_;
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
  std::map<std::string, int, std::less<>> index_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector values;
  Rational objective;                       // value of the first objective
  std::vector<Rational> objective_values;   // one per lexicographic stage
  std::vector<int> tight;                   // see LinearProgram::tight_set
  long pivots = 0;

  [[nodiscard]] bool optimal() const { return status == LpStatus::Optimal; }
};

/// Two-phase primal simplex on a dense exact tableau. Returns a basic optimal
/// solution; deterministic for identical input.
LpSolution solve(const LinearProgram& lp);

/// Minimizes objectives in priority order, each over the optimal face of the
/// previous ones. The result is a vertex of the feasible region.
LpSolution solve_lexicographic(const LinearProgram& lp, std::span<const Vector> objectives);

/// Pure feasibility; splits the system into independent variable blocks first.
bool is_feasible(const LinearProgram& lp);

/// Rank of the tight rows equals the number of variables. Throws
/// PreconditionError for an infeasible point.
bool is_vertex(const LinearProgram& lp, const Vector& point);

/// Every variable is blocked from decreasing alone by a tight constraint or
/// its zero bound. Throws PreconditionError for an infeasible point.
bool is_minimal_point(const LinearProgram& lp, const Vector& point);

/// Min and max of one coordinate over the optimal face of `lp`'s objective.
/// nullopt components mean unbounded in that direction.
struct CoordinateRange {
  std::optional<Rational> min;
  std::optional<Rational> max;
  [[nodiscard]] bool degenerate() const { return min && max && *min == *max; }
};
CoordinateRange coordinate_range_over_optimal_face(const LinearProgram& lp, int coordinate);
CoordinateRange coordinate_range_over_optimal_face(const LinearProgram& lp, std::span<const Vector> objectives, int coordinate);

/// Optimal vertex is unique iff every coordinate range over the optimal face is a point.
bool has_unique_optimum(const LinearProgram& lp, std::span<const Vector> objectives);

struct MinimalVertexResult {
  LpSolution solution;
  bool certified = false;
  bool perturbed = false;
};

/// Vertex optimum for `objectives` that is also a minimal point: minimizes the
/// sum of all nonnegative variables over the optimal face, and if that point
/// fails certification, adds a shrinking multiple of that sum to the last objective.
MinimalVertexResult solve_minimal_vertex(const LinearProgram& lp, std::span<const Vector> objectives);

/// Substitutes fixed values and drops the variables. Remaining variables keep
/// their relative order; `kept` maps new index -> old index.
struct FixedProgram {
  LinearProgram lp;
  std::vector<int> kept;
  bool trivially_infeasible = false;  // a constant row is violated
};
FixedProgram fix_variables(const LinearProgram& lp, const std::map<int, Rational>& fixed);

/// Splits constraints into blocks sharing no variables. Each block lists constraint indices.
std::vector<std::vector<int>> independent_blocks(const LinearProgram& lp);

}  // namespace fvslab
