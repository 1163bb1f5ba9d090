#include "doctest.h"

#include <functional>
#include <random>

#include "fvslab/lp.hpp"

using namespace fvslab;

namespace {

Vector vec(std::initializer_list<Rational> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

// Solves a square system exactly; nullopt if singular.
std::optional<Vector> solve_square(Matrix a, Vector b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    a.row(c).swap(a.row(p));
    std::swap(b(c), b(p));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const Rational f = a(r, c) / a(c, c);
      for (Eigen::Index k = 0; k < n; ++k) a(r, k) -= f * a(c, k);
      b(r) -= f * b(c);
    }
  }
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = b(i) / a(i, i);
  return x;
}

// Minimum over all basic feasible points of a bounded, nonnegative LP.
std::optional<Rational> vertex_enumeration_optimum(const LinearProgram& lp) {
  const int n = lp.num_variables();
  const int m = lp.num_constraints();
  const int rows = m + n;
  std::optional<Rational> best;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Matrix a = Matrix::Constant(n, n, Rational(0));
      Vector b = zeros(n);
      for (int k = 0; k < n; ++k) {
        const int id = pick[static_cast<std::size_t>(k)];
        if (id < m) {
          a.row(k) = lp.dense_row(id);
          b(k) = lp.constraint(id).rhs;
        } else {
          a(k, id - m) = 1;
        }
      }
      const auto x = solve_square(a, b);
      if (!x || !lp.feasible(*x)) return;
      const Rational val = lp.objective().cwiseProduct(*x).sum();
      if (!best || val < *best) best = val;
      return;
    }
    for (int id = start; id < rows; ++id) {
      pick[static_cast<std::size_t>(depth)] = id;
      rec(id + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("one-variable lp") {
  LinearProgram lp;
  const int x = lp.add_variable("x", true, 1);
  lp.add_constraint({{x, 1}}, Relation::GreaterEq, Rational(1, 3));
  const LpSolution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.values(0) == Rational(1, 3));
  CHECK(s.objective == Rational(1, 3));
}

TEST_CASE("statuses") {
  LinearProgram infeasible;
  const int x = infeasible.add_variable("x");
  infeasible.add_constraint({{x, 1}}, Relation::LessEq, -1);
  CHECK(solve(infeasible).status == LpStatus::Infeasible);
  CHECK_FALSE(is_feasible(infeasible));

  LinearProgram unbounded;
  const int y = unbounded.add_variable("y", true, -1);
  unbounded.add_constraint({{y, 1}}, Relation::GreaterEq, 2);
  CHECK(solve(unbounded).status == LpStatus::Unbounded);

  LinearProgram free_var;
  const int z = free_var.add_variable("z", false, 1);
  free_var.add_constraint({{z, 1}}, Relation::GreaterEq, -5);
  const LpSolution s = solve(free_var);
  REQUIRE(s.optimal());
  CHECK(s.values(0) == -5);
}

TEST_CASE("Beale's cycling example terminates") {
  LinearProgram lp;
  const int a = lp.add_variable("x4", true, Rational(-3, 4));
  const int b = lp.add_variable("x5", true, 20);
  const int c = lp.add_variable("x6", true, Rational(-1, 2));
  const int d = lp.add_variable("x7", true, 6);
  lp.add_constraint({{a, Rational(1, 4)}, {b, -8}, {c, -1}, {d, 9}}, Relation::LessEq, 0);
  lp.add_constraint({{a, Rational(1, 2)}, {b, -12}, {c, Rational(-1, 2)}, {d, 3}}, Relation::LessEq, 0);
  lp.add_constraint({{c, 1}}, Relation::LessEq, 1);
  const LpSolution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective == Rational(-5, 4));
  CHECK(is_vertex(lp, s.values));
}

TEST_CASE("Kuhn's cycling example terminates") {
  LinearProgram lp;
  const int a = lp.add_variable("x1", true, -2);
  const int b = lp.add_variable("x2", true, -3);
  const int c = lp.add_variable("x3", true, 1);
  const int d = lp.add_variable("x4", true, 12);
  lp.add_constraint({{a, -2}, {b, -9}, {c, 1}, {d, 9}}, Relation::LessEq, 0);
  lp.add_constraint({{a, Rational(1, 3)}, {b, 1}, {c, Rational(-1, 3)}, {d, -2}}, Relation::LessEq, 0);
  lp.add_constraint({{a, 2}, {b, 3}, {c, -1}, {d, -12}}, Relation::LessEq, 2);
  const LpSolution s = solve(lp);
  REQUIRE(s.optimal());
  CHECK(s.objective == -2);
}

TEST_CASE("lexicographic objectives") {
  LinearProgram lp;
  const int x = lp.add_variable("x");
  const int y = lp.add_variable("y");
  lp.add_constraint({{x, 1}, {y, 1}}, Relation::GreaterEq, 1);
  lp.add_constraint({{x, 1}}, Relation::LessEq, Rational(1, 2));
  const std::vector<Vector> objs{vec({1, 0}), vec({0, 1})};
  const LpSolution s = solve_lexicographic(lp, objs);
  REQUIRE(s.optimal());
  CHECK(s.values == vec({0, 1}));
  CHECK(s.objective_values == std::vector<Rational>{0, 1});

  const std::vector<Vector> reversed{vec({0, 1}), vec({1, 0})};
  CHECK(solve_lexicographic(lp, reversed).values == vec({Rational(1, 2), Rational(1, 2)}));

  const std::vector<Vector> single{vec({1, 1})};
  lp.set_cost(x, 1);
  lp.set_cost(y, 1);
  CHECK(solve_lexicographic(lp, single).values == solve(lp).values);
}

TEST_CASE("vertex and minimality predicates") {
  LinearProgram square;
  const int x = square.add_variable("x");
  const int y = square.add_variable("y");
  square.add_constraint({{x, 1}}, Relation::LessEq, 1);
  square.add_constraint({{y, 1}}, Relation::LessEq, 1);
  CHECK(is_vertex(square, vec({1, 0})));
  CHECK_FALSE(is_vertex(square, vec({1, Rational(1, 2)})));
  CHECK_THROWS_AS(is_vertex(square, vec({2, 0})), PreconditionError);

  LinearProgram ray;
  const int z = ray.add_variable("z");
  (void)z;
  CHECK_FALSE(is_minimal_point(ray, vec({1})));
  CHECK(is_minimal_point(ray, vec({0})));

  LinearProgram atleast;
  const int w = atleast.add_variable("w");
  atleast.add_constraint({{w, 1}}, Relation::GreaterEq, 1);
  CHECK(is_minimal_point(atleast, vec({1})));
  CHECK(is_vertex(atleast, vec({1})));
}

TEST_CASE("coordinate range over the optimal face") {
  LinearProgram lp;
  const int x = lp.add_variable("x", true, 1);
  const int y = lp.add_variable("y", true, 1);
  lp.add_constraint({{x, 1}, {y, 1}}, Relation::GreaterEq, 1);
  const CoordinateRange r = coordinate_range_over_optimal_face(lp, 0);
  CHECK(r.min == Rational(0));
  CHECK(r.max == Rational(1));
  CHECK_FALSE(r.degenerate());
  const Vector c = lp.objective();
  CHECK_FALSE(has_unique_optimum(lp, std::span<const Vector>(&c, 1)));

  lp.set_cost(y, 2);
  const Vector c2 = lp.objective();
  CHECK(has_unique_optimum(lp, std::span<const Vector>(&c2, 1)));
}

TEST_CASE("minimal vertex selection") {
  // min x over {x + y >= 1}: x = 0, y free to grow; the minimal vertex has y = 1.
  LinearProgram lp;
  const int x = lp.add_variable("x", true, 1);
  const int y = lp.add_variable("y", true, 0);
  lp.add_constraint({{x, 1}, {y, 1}}, Relation::GreaterEq, 1);
  lp.add_constraint({{y, 1}}, Relation::LessEq, 5);
  const Vector c = lp.objective();
  const MinimalVertexResult r = solve_minimal_vertex(lp, std::span<const Vector>(&c, 1));
  CHECK(r.certified);
  CHECK(r.solution.values == vec({0, 1}));
  CHECK(r.solution.objective == 0);
}

TEST_CASE("fix variables and block decomposition") {
  LinearProgram lp;
  const int a = lp.add_variable("a");
  const int b = lp.add_variable("b");
  const int c = lp.add_variable("c");
  lp.add_constraint({{a, 1}, {b, 1}}, Relation::GreaterEq, 1);
  lp.add_constraint({{c, 1}}, Relation::LessEq, 2);
  CHECK(independent_blocks(lp).size() == 2);
  const FixedProgram f = fix_variables(lp, {{a, Rational(1, 3)}});
  CHECK(f.lp.num_variables() == 2);
  CHECK(f.kept == std::vector<int>{1, 2});
  CHECK(f.lp.constraint(0).rhs == Rational(2, 3));
  const FixedProgram g = fix_variables(lp, {{c, 3}});
  CHECK(g.trivially_infeasible);
}

TEST_CASE("dump format") {
  LinearProgram lp;
  const int x = lp.add_variable("x(0)", true, 1);
  lp.add_constraint({{x, Rational(2, 3)}}, Relation::GreaterEq, 1, "cover");
  CHECK(lp.dump() == "min: 1*x(0)\n2/3*x(0) >= 1  # cover\n");
}

TEST_CASE("random bounded lps match vertex enumeration") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 6);
  std::uniform_int_distribution<int> rhs(0, 8);
  int solved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    LinearProgram lp;
    const int n = 2 + trial % 3;
    const int m = 2 + trial % 4;
    for (int j = 0; j < n; ++j) lp.add_variable("v" + std::to_string(j), true, Rational(coef(rng), 1 + trial % 3));
    for (int i = 0; i < m; ++i) {
      std::vector<Term> t;
      for (int j = 0; j < n; ++j) t.push_back({j, coef(rng)});
      const Relation rel = i % 3 == 0 ? Relation::GreaterEq : Relation::LessEq;
      lp.add_constraint(std::move(t), rel, rhs(rng) - (i % 3 == 0 ? 2 : 0));
    }
    // Box to keep everything bounded.
    std::vector<Term> box;
    for (int j = 0; j < n; ++j) box.push_back({j, 1});
    lp.add_constraint(box, Relation::LessEq, 10);
    const LpSolution s = solve(lp);
    const auto oracle = vertex_enumeration_optimum(lp);
    CHECK(s.optimal() == oracle.has_value());
    if (s.optimal() && oracle) {
      CHECK(s.objective == *oracle);
      CHECK(is_vertex(lp, s.values));
      ++solved;
    }
  }
  CHECK(solved > 40);
}
