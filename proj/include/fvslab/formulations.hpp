#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvslab/graph.hpp"
#include "fvslab/lp.hpp"

namespace fvslab {

/// An LP over a graph. Every formulation owns one x variable per vertex,
/// created first, so x(v) has LP index `x[v]`.
struct Formulation {
  LinearProgram lp;
  std::vector<int> x;
  /// Orientation variables y(e, endpoint) when present: index [e][0] for edge(e).u, [e][1] for edge(e).v.
  std::vector<std::array<int, 2>> y;

  [[nodiscard]] Vector x_values(const Vector& point) const;
};

/// x variables only, with finite costs as LP costs (infinite-cost vertices get cost 0;
/// see cost_objectives).
Formulation base_formulation(const Graph& g);

/// Lexicographic objectives: [mass on infinite-cost x, finite costs] when some
/// vertex has infinite cost, else [finite costs].
std::vector<Vector> cost_objectives(const Graph& g, const Formulation& f);
/// Single objective with infinite costs replaced by `big_m`; cross-check only.
Vector big_m_objective(const Graph& g, const Formulation& f, const Rational& big_m);
/// 1 + (n + 1) * sum of finite costs.
Rational default_big_m(const Graph& g);

/// Row sum_{u in S}(d_S(u) - 1) x_u against rhs for one vertex set.
struct DensityRow {
  VertexMask set = 0;
  std::vector<std::pair<VertexId, int>> coefficients;  // (vertex, d_S(u) - 1), nonzero only
  int rhs = 0;
};
/// Weak density: every nonempty S, rhs |E[S]| - |S|. All-zero rows with rhs <= 0 dropped.
std::vector<DensityRow> weak_density_rows(const Graph& g, const Caps& caps = {});
/// Strong density: every S with E[S] nonempty, rhs |E[S]| - |S| + 1.
std::vector<DensityRow> strong_density_rows(const Graph& g, const Caps& caps = {});

void add_weak_density(Formulation& f, const Graph& g, const Caps& caps = {});
void add_strong_density(Formulation& f, const Graph& g, const Caps& caps = {});
Formulation build_weak_density(const Graph& g, const Caps& caps = {});
Formulation build_strong_density(const Graph& g, const Caps& caps = {});

/// x_u + x_v + y(e,u) + y(e,v) >= 1 per edge, x_u + sum_{e at u} y(e,u) <= 1 per vertex.
void add_orientation(Formulation& f, const Graph& g);
Formulation build_orientation(const Graph& g);

enum class DistanceVariant {
  /// Propagation rows for d^e skip the edge e itself, matching the path
  /// definition used to prove the projection equals the cycle cover polyhedron.
  ExcludeOwnEdge,
  /// Every edge, including e; strictly smaller projection.
  Literal,
};

/// Variables d(e,v) >= 0 for each cyclic edge e = st: d(e,s) = 0, d(e,t) + x_s >= 1,
/// d(e,a) + x_b >= d(e,b) in both directions per edge ab.
void add_cycle_cover_distance(Formulation& f, const Graph& g, DistanceVariant variant = DistanceVariant::ExcludeOwnEdge);
Formulation build_cycle_cover_distance(const Graph& g, DistanceVariant variant = DistanceVariant::ExcludeOwnEdge);

/// One sum_{u in C} x_u >= 1 row per enumerated cycle.
void add_cycle_cover_enumerated(Formulation& f, const Graph& g, const Caps& caps = {});

/// Row and rhs of the weak density constraint of a subgraph (vt, et).
struct SubgraphRow {
  VertexSet vertices;
  std::vector<EdgeId> edges;
  std::vector<std::pair<VertexId, int>> coefficients;  // (vertex, d(u) - 1) in the subgraph, all of vt
  int rhs = 0;
};
/// Throws PreconditionError if et is not contained in E[vt].
SubgraphRow build_wd_subgraphs_constraint(const Graph& g, std::span<const VertexId> vt, std::span<const EdgeId> et);

/// Variables x(v) and y(f;e,v) for every pair of edges e, f and endpoint v of e:
/// edge cover x_v + x_w + y^f_{e,v} + y^f_{e,w} >= 1 for all e = vw, f;
/// load x_v + sum_{e = vw} y^f_{e,w} >= 1 for all v, f (summed at the far endpoint);
/// budget sum_{v != a,b} x_v + sum_{e != f} (y^f_{e,v} + y^f_{e,w}) <= |V| - 2 for all f = ab.
/// Throws PreconditionError on an isolated vertex.
struct OrientationFvs {
  Formulation model;
  /// yf[f][e][k]: LP index of y^f at endpoint k of edge e (k = 0 for edge(e).u).
  std::vector<std::vector<std::array<int, 2>>> yf;
};
OrientationFvs build_orientation_fvs(const Graph& g);

/// 0/1 values of y^f for an FVS `fvs` and edge f, built from a spanning forest
/// containing every edge of G - fvs and f: every vertex outside fvs and f's
/// endpoints points along the first forest edge towards a (or its tree root).
/// Returned as yf_values[e][k]. Throws PreconditionError if fvs is not an FVS or a
/// vertex outside it is isolated.
std::vector<std::array<Rational, 2>> integral_witness_orientation_fvs(const Graph& g, std::span<const VertexId> fvs, EdgeId f);
/// Full point of build_orientation_fvs for x = indicator(fvs).
Vector orientation_fvs_point(const Graph& g, const OrientationFvs& model, std::span<const VertexId> fvs);

/// Subdivided instance: each edge e = uv becomes u, a_e, s_e, b_e, v; a
/// degree-one root r hangs off vertex 0.
struct SfvsInstance {
  enum class Role { Original, Root, Pivot, Terminal };
  struct Origin {
    Role role;
    int id;  // original vertex, or edge index for pivots/terminals; -1 for the root
  };
  Graph h;
  VertexId root = -1;
  std::vector<VertexId> terminal;          // per original edge
  std::vector<std::array<VertexId, 2>> pivot;  // per original edge: a_e next to edge(e).u, b_e next to edge(e).v
  std::vector<Origin> origin;              // per H vertex
  int original_vertices = 0;
  int original_edges = 0;
};
/// Requires at least one vertex.
SfvsInstance reduce_fvs_to_sfvs(const Graph& g);
/// Checks the structural properties assumed by the labelling LP; throws VerificationError.
void verify_sfvs_properties(const SfvsInstance& inst);

enum class CycleRealization { CuttingPlanes, Distance };

/// Labelling LP. Labels are original edge ids plus `root_label()` (= number of edges).
struct CmFormulation {
  Formulation model;  // x over original vertices
  /// z index by H vertex and label; -1 where the label is not in the vertex's label set.
  std::vector<std::vector<int>> z;
  [[nodiscard]] int root_label() const { return static_cast<int>(z.empty() ? 0 : z.front().size()) - 1; }
};
/// Label, pivot and spreading rows; pivots and the root are never deleted. With CycleRealization::Distance the cycle
/// constraints are added through the distance system on G; with CuttingPlanes
/// they are left to the caller (see cutting_plane_solve).
CmFormulation build_cm_lp(const Graph& g, const SfvsInstance& inst, CycleRealization cycles = CycleRealization::CuttingPlanes);

/// Point of the orientation polyhedron of G.
struct OrientationPoint {
  Vector x;
  std::vector<std::array<Rational, 2>> y;  // y[e][k] as in Formulation::y
};
/// y(e,u) = z(u,e) for e at u.
OrientationPoint extract_cm_solution(const Graph& g, const SfvsInstance& inst, const CmFormulation& cm, const Vector& values);
OrientationPoint extract_orientation(const Graph& g, const Formulation& f, const Vector& values);

/// Membership of (x, y) in the orientation polyhedron, exact.
bool in_orientation_polyhedron(const Graph& g, const OrientationPoint& p);

}  // namespace fvslab
