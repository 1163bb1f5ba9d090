#include "doctest.h"

#include <random>

#include "fvslab/generators.hpp"
#include "fvslab/polyhedral.hpp"

using namespace fvslab;

namespace {

Vector vec(std::initializer_list<Rational> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Rational& r : values) v(i++) = r;
  return v;
}

}  // namespace

TEST_CASE("all-ones lies in every polyhedron") {
  for (const Graph& g : {butterfly(), complete(4), figure1(3)}) {
    const Vector ones = Vector::Constant(g.num_vertices(), Rational(1));
    for (Polyhedron p : {Polyhedron::StrongDensity, Polyhedron::WeakDensity, Polyhedron::WdSubgraphs, Polyhedron::CycleCover,
                         Polyhedron::TwoPseudotreeCover, Polyhedron::OrientationProjection}) {
      INFO(to_string(p));
      CHECK(membership(g, p, ones).member);
    }
  }
}

TEST_CASE("membership witnesses") {
  const Graph g = butterfly();
  const Vector center = vec({Rational(1, 3), 0, 0, 0, 0});
  CHECK(membership(g, Polyhedron::WeakDensity, center).member);
  CHECK(membership(g, Polyhedron::OrientationProjection, center).member);
  const auto sd = membership(g, Polyhedron::StrongDensity, center);
  CHECK_FALSE(sd.member);
  REQUIRE(sd.witness);
  CHECK(sd.witness->violation() > 0);

  const Vector zero = zeros(5);
  CHECK_FALSE(membership(g, Polyhedron::OrientationProjection, zero).member);
  const auto cc = membership(g, Polyhedron::CycleCover, zero);
  REQUIRE(cc.witness);
  CHECK(cc.witness->vertices == std::vector<VertexId>{0, 1, 2});
  const auto tpt = membership(g, Polyhedron::TwoPseudotreeCover, zero);
  REQUIRE(tpt.witness);
  CHECK(tpt.witness->vertices == std::vector<VertexId>{0, 1, 2, 3, 4});
  CHECK_FALSE(membership(g, Polyhedron::WeakDensity, vec({-1, 1, 1, 1, 1})).member);
  CHECK_THROWS_AS(parse_polyhedron("nope"), ParseError);
}

TEST_CASE("K5 near-counterexample point against the weak density rows") {
  // The full vertex set gives 3 * 15/12 = 45/12 against 10 - 5.
  const Vector x = vec({Rational(7, 12), Rational(7, 12), Rational(1, 12), 0, 0});
  const auto wd = membership(complete(5), Polyhedron::WeakDensity, x);
  CHECK_FALSE(wd.member);
  REQUIRE(wd.witness);
  CHECK(wd.witness->lhs == Rational(45, 12));
  CHECK(wd.witness->rhs == 5);
}

TEST_CASE("projection membership matches the explicit weak density test on random points") {
  // Orientation points project into the weak density polyhedron.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = erdos_renyi(5 + trial % 3, 0.6, rng());
    Vector x(g.num_vertices());
    for (int i = 0; i < x.size(); ++i) x(i) = Rational(static_cast<long>(rng() % 4), 6);
    if (membership(g, Polyhedron::OrientationProjection, x).member) {
      CHECK(membership(g, Polyhedron::WeakDensity, x).member);
    }
  }
}

TEST_CASE("graph catalogue sizes") {
  // Connected graphs minus trees minus connected unicyclic graphs.
  CHECK(connected_non_pseudoforests(3).empty());
  CHECK(connected_non_pseudoforests(4).size() == 6 - 2 - 2);
  CHECK(connected_non_pseudoforests(5).size() == 21 - 3 - 5);
  CHECK(connected_non_pseudoforests(6).size() == 112 - 6 - 13);
  for (const Graph& g : connected_non_pseudoforests(5)) {
    CHECK(is_connected(g));
    CHECK_FALSE(is_pseudoforest(g));
  }
  CHECK(scan_corpus(5).size() == 15);
}

TEST_CASE("extreme points on the butterfly") {
  const ScanInstance b{"butterfly", butterfly()};
  const Vector ones = Vector::Constant(5, Rational(1));
  const auto wd = extreme_point(b, ScanKind::WeakDensity, ones);
  CHECK(wd.is_vertex);
  CHECK(wd.max_x == Rational(1, 3));
  CHECK(wd.point == vec({Rational(1, 3), 0, 0, 0, 0}));
  CHECK(wd.threshold == Threshold::AtLeastThird);
  CHECK_FALSE(wd.theorem_violation());

  const auto orient = extreme_point(b, ScanKind::Orientation, ones);
  CHECK(orient.is_vertex);
  CHECK(orient.is_minimal);
  CHECK(orient.max_x == Rational(1, 3));

  const auto sd = extreme_point(b, ScanKind::StrongDensity, ones);
  CHECK(sd.is_vertex);
  CHECK(sd.max_x >= Rational(1, 2));
  CHECK_FALSE(sd.conjecture_finding());

  CHECK_THROWS_AS(extreme_point({"c4", cycle(4)}, ScanKind::WeakDensity, Vector::Constant(4, Rational(1))), PreconditionError);
}

TEST_CASE("scan is independent of the job count") {
  const auto corpus = scan_corpus(5);
  ScanOptions one;
  one.random_objectives = 3;
  one.seed = 17;
  ScanOptions four = one;
  four.jobs = 4;
  const auto a = extreme_point_scan(corpus, ScanKind::WeakDensity, one);
  const auto b = extreme_point_scan(corpus, ScanKind::WeakDensity, four);
  REQUIRE(a.size() == corpus.size() * 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK_FALSE(a[i].theorem_violation());
  }
}

TEST_CASE("supermodularity of the density slack") {
  CHECK(check_supermodularity(complete(5), zeros(5)));
  CHECK(check_supermodularity(butterfly(), vec({Rational(1, 3), 0, 0, 0, 0})));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = erdos_renyi(7, 0.5, rng());
    Vector x(7);
    for (int i = 0; i < 7; ++i) x(i) = Rational(static_cast<long>(rng() % 5), 10);
    CHECK(check_supermodularity(g, x));
  }
  // Outside the hypothesis an edge with both ends at 1 has negative weight.
  const Vector big = Vector::Constant(3, Rational(1));
  CHECK_THROWS_AS(check_supermodularity(cycle(3), big), PreconditionError);
  CHECK(supermodularity_violation(cycle(3), big).has_value());
}

TEST_CASE("tight set structure on weak density vertices") {
  const auto k4 = check_tight_set_structure(complete(4), Vector::Constant(4, Rational(1, 3)));
  CHECK(k4.applicable);
  CHECK(k4.ok());
  const auto b = check_tight_set_structure(butterfly(), vec({Rational(1, 3), 0, 0, 0, 0}));
  CHECK(b.applicable);
  CHECK(b.is_vertex);
  CHECK(b.family.sets == std::vector<VertexMask>{0b11111});
  CHECK(b.ok());
  CHECK_FALSE(check_tight_set_structure(cycle(3), Vector::Constant(3, Rational(1, 2))).applicable);
  CHECK_THROWS_AS(check_tight_set_structure(butterfly(), zeros(5)), PreconditionError);

  ScanOptions options;
  options.random_objectives = 4;
  const auto corpus = scan_corpus(5);
  const auto reports = extreme_point_scan(corpus, ScanKind::WeakDensity, options);
  int checked = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (r.max_x >= Rational(1, 2)) continue;
    const Graph& g = corpus[i / 5].graph;
    const auto rep = check_tight_set_structure(g, r.point);
    INFO(r.graph_id);
    CHECK(rep.is_vertex);
    CHECK(rep.ok());
    CHECK(check_supermodularity(g, r.point));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("integrality gaps") {
  const std::vector<ModelPart> wd_cc{ModelPart::WeakDensity, ModelPart::CycleCover};
  const auto k4 = integrality_gap(complete(4), Problem::Fvs, wd_cc);
  CHECK(k4.lp == Rational(4, 3));
  CHECK(k4.ip == 2);
  CHECK(*k4.ratio == Rational(3, 2));
  const std::vector<ModelPart> wd{ModelPart::WeakDensity};
  const auto b = integrality_gap(butterfly(), Problem::Pfds, wd);
  CHECK(b.lp == Rational(1, 3));
  CHECK(b.ip == 1);
  CHECK(*b.ratio == 3);
  const std::vector<ModelPart> orient_2pt{ModelPart::Orientation, ModelPart::TwoPseudotreeCover};
  const auto f = integrality_gap(figure1(6), Problem::Pfds, orient_2pt);
  CHECK(f.ip == 5);
  CHECK(f.lp <= 3);
}
