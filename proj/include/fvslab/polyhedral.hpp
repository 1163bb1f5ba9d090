#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fvslab/algorithms.hpp"
#include "fvslab/separation.hpp"

namespace fvslab {

/// Polyhedra over x alone. OrientationProjection is the projection of the
/// orientation polyhedron onto x.
enum class Polyhedron { StrongDensity, WeakDensity, WdSubgraphs, CycleCover, TwoPseudotreeCover, OrientationProjection };

std::string to_string(Polyhedron p);
/// Accepts sd, wd, wd-sub, cc, 2pt, orient. Throws ParseError.
Polyhedron parse_polyhedron(std::string_view text);

struct Membership {
  bool member = false;
  /// Most violated row when one exists. Empty for a negative coordinate and for
  /// OrientationProjection, whose certificate is LP infeasibility.
  std::optional<ViolatedConstraint> witness;
};

/// Exact membership by full enumeration (cycles, subsets). OrientationProjection
/// solves the feasibility LP in y with x fixed. Throws CapExceeded.
Membership membership(const Graph& g, Polyhedron kind, const Vector& x, const Caps& caps = {});

/// Polyhedra probed for large extreme-point coordinates.
enum class ScanKind { WeakDensity, Orientation, StrongDensity };

std::string to_string(ScanKind k);
/// Accepts wd, orient, sd. Throws ParseError.
ScanKind parse_scan_kind(std::string_view text);

enum class Threshold { AtLeastHalf, AtLeastThird, Violation };

std::string to_string(Threshold t);

struct ScanInstance {
  std::string id;
  Graph graph;
};

struct ExtremePointReport {
  std::string graph_id;
  ScanKind kind = ScanKind::WeakDensity;
  Vector objective;
  Vector point;  // x coordinates only
  bool is_vertex = false;
  bool is_minimal = false;
  Rational max_x;
  Threshold threshold = Threshold::Violation;

  /// Below 1/3 for wd and orient, or an orient point that is not a certified
  /// minimal vertex.
  [[nodiscard]] bool theorem_violation() const;
  /// Below 1/2 for sd.
  [[nodiscard]] bool conjecture_finding() const;
};

/// Vertex optimum of the chosen polyhedron for a positive objective on x. For
/// Orientation the vertex is additionally certified minimal.
ExtremePointReport extreme_point(const ScanInstance& instance, ScanKind kind, const Vector& objective, const Caps& caps = {});

/// The all-ones vector followed by `count` random positive rationals with
/// denominators <= 10 per vertex.
std::vector<Vector> scan_objectives(int n, int count, std::uint64_t seed);

struct ScanOptions {
  int random_objectives = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// One report per (instance, objective), in instance order. Objective seeds are
/// derived from options.seed and the instance position, so the result does not
/// depend on jobs.
std::vector<ExtremePointReport> extreme_point_scan(std::span<const ScanInstance> corpus, ScanKind kind,
                                                   const ScanOptions& options, const Caps& caps = {});

/// Every connected graph on exactly n vertices that is not a pseudoforest, one
/// per isomorphism class, with the smallest adjacency code. n <= 6.
std::vector<Graph> connected_non_pseudoforests(int n);

/// connected_non_pseudoforests for 4..max_n, ids `n<k>-<index>`.
std::vector<ScanInstance> scan_corpus(int max_n);

/// f_x(S) = |E[S]| - |S| - sum_{u in S}(d_S(u) - 1) x_u for every mask S.
std::vector<Rational> density_slack_function(const Graph& g, const Vector& x);

struct SetPair {
  VertexMask a = 0;
  VertexMask b = 0;
};

/// First pair with f(A) + f(B) > f(A | B) + f(A & B). No precondition on x.
std::optional<SetPair> supermodularity_violation(const Graph& g, const Vector& x, const Caps& caps = {});

/// Supermodularity of f_x over all pairs. Throws PreconditionError unless every
/// x_u < 1/2 and n <= caps.supermodularity_vertices.
bool check_supermodularity(const Graph& g, const Vector& x, const Caps& caps = {});

struct TightSetFamily {
  Vector x;
  std::vector<VertexMask> sets;  // nonempty S with f_x(S) = 0, ascending
};

TightSetFamily tight_sets(const Graph& g, const Vector& x, const Caps& caps = {});

struct TightSetReport {
  /// False when some x_u >= 1/2; nothing else is checked then.
  bool applicable = false;
  bool is_vertex = false;
  TightSetFamily family;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks on every tight pair: overlap, closure under union and intersection,
/// no edge between A - B and B - A, and row(A) + row(B) = row(A & B) + row(A | B);
/// and on every tight set: at least two vertices, connected. The arguments
/// behind these only need x in the weak density polyhedron, so non-vertex
/// points are checked too. Throws PreconditionError outside the polyhedron and
/// CapExceeded above caps.tight_set_vertices.
TightSetReport check_tight_set_structure(const Graph& g, const Vector& x, const Caps& caps = {});

struct IntegralityGap {
  Rational lp;
  Rational ip;
  std::optional<Rational> ratio;  // ip / lp, absent when lp = 0
};

/// LP value by cutting planes over `parts`, integral value by brute force.
/// Throws PreconditionError when no finite-cost solution exists.
IntegralityGap integrality_gap(const Graph& g, Problem problem, std::span<const ModelPart> parts, const Caps& caps = {});

}  // namespace fvslab
