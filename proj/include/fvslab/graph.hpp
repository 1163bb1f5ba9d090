#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fvslab/errors.hpp"
#include "fvslab/rational.hpp"

namespace fvslab {

using VertexId = int;
using EdgeId = int;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;
/// Bit i set iff vertex i is a member; only for graphs with n <= 64.
using VertexMask = std::uint64_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  [[nodiscard]] VertexId other(VertexId w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Simple undirected graph with exact vertex costs. Immutable after construction.
class Graph {
public:
  Graph() = default;
  /// Unit costs when `costs` is empty. Throws PreconditionError on loops,
  /// parallel edges, out-of-range endpoints or a cost vector of the wrong size.
  Graph(int n, std::vector<Edge> edges, std::vector<Cost> costs = {});

  [[nodiscard]] int num_vertices() const { return n_; }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] const Cost& cost(VertexId v) const { return costs_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] std::span<const Cost> costs() const { return costs_; }
  [[nodiscard]] std::span<const Incidence> incident(VertexId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  [[nodiscard]] std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  [[nodiscard]] bool adjacent(VertexId u, VertexId v) const { return find_edge(u, v).has_value(); }
  [[nodiscard]] bool has_infinite_cost() const;

  [[nodiscard]] Graph with_costs(std::vector<Cost> costs) const { return Graph(n_, edges_, std::move(costs)); }

private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Cost> costs_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Cyclic vertex sequence; consecutive vertices (and last/first) are adjacent.
struct Cycle {
  std::vector<VertexId> vertices;

  /// Rotation starting at the smallest id, direction with the smaller second vertex.
  [[nodiscard]] Cycle canonical() const;
  [[nodiscard]] VertexSet vertex_set() const;
  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> to_parent;  // local vertex id -> parent vertex id
  std::vector<EdgeId> edge_to_parent;
};

/// G[S] with relabeled vertices 0..|S|-1 in increasing parent order.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> s);
/// G - S.
InducedSubgraph delete_vertices(const Graph& g, std::span<const VertexId> s);

VertexSet normalize(std::vector<VertexId> s);
VertexSet all_vertices(const Graph& g);
VertexSet complement(const Graph& g, std::span<const VertexId> s);
VertexSet mask_to_set(VertexMask mask);
VertexMask set_to_mask(std::span<const VertexId> s);

/// Component id per vertex (ids in order of smallest member) and component count.
struct Components {
  std::vector<int> of_vertex;
  int count = 0;
};
Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

bool is_acyclic(const Graph& g);
/// Every component has at most as many edges as vertices.
bool is_pseudoforest(const Graph& g);
/// Connected with |E| >= |V| + 1.
bool is_two_pseudotree(const Graph& g);

/// |E[S]| and |E[S]| - |S| for masks on graphs with n <= 64.
int edges_within(const Graph& g, VertexMask s);
int excess(const Graph& g, VertexMask s);

struct SemiDisjointCycle {
  Cycle cycle;
  std::optional<VertexId> pivot;  // the unique vertex of degree > 2, if any
};

/// First cycle (lowest-index scan) in which every vertex except at most one has
/// degree exactly 2 in g. Requires minimum degree >= 2.
std::optional<SemiDisjointCycle> find_semi_disjoint_cycle(const Graph& g);

struct PruneResult {
  InducedSubgraph kept;
  VertexSet removed;
};

/// Repeatedly removes vertices of degree <= 1.
PruneResult prune_degree_one(const Graph& g);

/// Non-bridge edges, ascending.
std::vector<EdgeId> cyclic_edges(const Graph& g);

/// Every simple cycle once up to rotation and reflection, in canonical form.
std::vector<Cycle> enumerate_cycles(const Graph& g, const Caps& caps = {});

/// Cheapest vertex (lowest index on ties) of the unique cycle of each
/// pseudotree component; a minimum-cost FVS of a pseudoforest.
VertexSet pseudoforest_fvs(const Graph& g);

/// Cost of a vertex set; nullopt if it contains an infinite-cost vertex.
std::optional<Rational> set_cost(const Graph& g, std::span<const VertexId> s);

bool is_fvs(const Graph& g, std::span<const VertexId> s);
bool is_pfds(const Graph& g, std::span<const VertexId> s);

}  // namespace fvslab
