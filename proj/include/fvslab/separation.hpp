#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvslab/formulations.hpp"

namespace fvslab {

enum class CutFamily { Cycle, TwoPseudotree, WeakDensity, StrongDensity, WdSubgraph };

std::string to_string(CutFamily f);

/// A constraint sum_u coef_u x_u >= rhs violated by the point it was separated from.
struct ViolatedConstraint {
  CutFamily kind = CutFamily::Cycle;
  /// Cycle vertices in cycle order (canonical), or the vertex set U / S / V~.
  std::vector<VertexId> vertices;
  /// Edge set E~ for WdSubgraph, empty otherwise.
  std::vector<EdgeId> edges;
  std::vector<std::pair<VertexId, int>> coefficients;
  Rational lhs;
  Rational rhs;

  [[nodiscard]] Rational violation() const { return rhs - lhs; }
};

/// Larger violation first, then lexicographically smaller witness.
bool more_violated(const ViolatedConstraint& a, const ViolatedConstraint& b);

/// Vertex weights x must be nonnegative and sized to g; throws PreconditionError.
void check_point(const Graph& g, const Vector& x);

/// For every edge e = st on a cycle, the cheapest cycle through e: x_s plus a
/// vertex-weighted shortest s-t path in G - e. Returns each violated cycle once.
std::vector<ViolatedConstraint> cycle_cover_cuts(const Graph& g, const Vector& x);
std::optional<ViolatedConstraint> separate_cycle_cover(const Graph& g, const Vector& x);

struct SteinerTree {
  VertexSet vertices;
  Rational weight;
};
/// Minimum vertex weight of a connected subgraph containing all terminals,
/// by a vertex-weighted Dreyfus-Wagner recursion. nullopt if the terminals are
/// not in one component. At most 4 distinct terminals.
std::optional<SteinerTree> nwst(const Graph& g, const Vector& weights, std::span<const VertexId> terminals);

/// Minimum weight U with G[U] connected and |E[U]| >= |U| + 1, over unordered
/// pairs of distinct edges. Ties go to the lexicographically smaller U.
std::optional<SteinerTree> mc2pt(const Graph& g, const Vector& weights);
std::optional<ViolatedConstraint> separate_2pt_cover(const Graph& g, const Vector& x);

/// Enumeration over vertex subsets; CapExceeded above caps.density_vertices.
std::vector<ViolatedConstraint> weak_density_cuts(const Graph& g, const Vector& x, const Caps& caps = {});
std::vector<ViolatedConstraint> strong_density_cuts(const Graph& g, const Vector& x, const Caps& caps = {});
std::optional<ViolatedConstraint> separate_weak_density(const Graph& g, const Vector& x, const Caps& caps = {});
std::optional<ViolatedConstraint> separate_strong_density(const Graph& g, const Vector& x, const Caps& caps = {});

/// For each vertex subset V~ the worst edge set keeps e = uv in E[V~] iff
/// 1 - x_u - x_v > 0. One cut per violated V~.
std::vector<ViolatedConstraint> wd_subgraph_cuts(const Graph& g, const Vector& x, const Caps& caps = {});
std::optional<ViolatedConstraint> separate_wd_subgraphs(const Graph& g, const Vector& x, const Caps& caps = {});

/// Appends the cut as a row over f.x.
void add_cut(Formulation& f, const ViolatedConstraint& cut);

/// Pieces of a model, composed with `--and` on the command line.
enum class ModelPart { StrongDensity, WeakDensity, WdSubgraphs, Orientation, CycleCover, TwoPseudotreeCover, OrientationFvs, ChekuriMadan };

std::string to_string(ModelPart p);
/// Accepts sd, wd, wd-sub, orient, cc, 2pt, orient-fvs, cm. Throws ParseError.
ModelPart parse_model_part(std::string_view text);

struct Model {
  Formulation formulation;
  std::vector<CutFamily> cut_families;
  /// Set when the labelling LP is part of the model; its cycle cuts are
  /// separated on the subdivided graph.
  std::optional<SfvsInstance> subdivided;
  std::optional<CmFormulation> labelling;
  std::optional<OrientationFvs> orientation_fvs;
};

/// Explicit rows for sd, wd, orient, orient-fvs, cm; cut families for cc, 2pt, wd-sub.
Model build_model(const Graph& g, std::span<const ModelPart> parts, const Caps& caps = {});

struct CutLogEntry {
  int iteration = 0;
  ViolatedConstraint cut;
};

struct CuttingPlaneResult {
  LpSolution solution;
  Formulation formulation;  // with every added cut
  std::vector<CutLogEntry> log;
  int iterations = 0;
};

/// Solve, separate every family, add all violated cuts, repeat until none.
/// Minimizes the vertex costs of g lexicographically (infinite costs first).
/// Throws CapExceeded past caps.cutting_plane_iterations.
CuttingPlaneResult cutting_plane_solve(const Graph& g, Model model, const Caps& caps = {});
CuttingPlaneResult cutting_plane_solve(const Graph& g, std::span<const ModelPart> parts, const Caps& caps = {});

}  // namespace fvslab
