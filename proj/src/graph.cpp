#include "fvslab/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace fvslab {

Graph::Graph(int n, std::vector<Edge> edges, std::vector<Cost> costs)
    : n_(n), edges_(std::move(edges)), costs_(std::move(costs)) {
  if (n_ < 0) throw PreconditionError("negative vertex count");
  if (costs_.empty()) costs_.assign(static_cast<std::size_t>(n_), Cost(1));
  if (static_cast<int>(costs_.size()) != n_) {
    throw PreconditionError("cost vector has " + std::to_string(costs_.size()) + " entries for " +
                            std::to_string(n_) + " vertices");
  }
  adjacency_.resize(static_cast<std::size_t>(n_));
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const auto [u, v] = edges_[static_cast<std::size_t>(e)];
    if (u < 0 || u >= n_ || v < 0 || v >= n_) {
      throw PreconditionError("edge " + std::to_string(e) + " has an endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    for (const Incidence& inc : adjacency_[static_cast<std::size_t>(u)]) {
      if (inc.neighbor == v) {
        throw PreconditionError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
      }
    }
    adjacency_[static_cast<std::size_t>(u)].push_back({v, e});
    adjacency_[static_cast<std::size_t>(v)].push_back({u, e});
  }
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  for (const Incidence& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

bool Graph::has_infinite_cost() const {
  return std::any_of(costs_.begin(), costs_.end(), [](const Cost& c) { return c.is_infinite(); });
}

Cycle Cycle::canonical() const {
  if (vertices.empty()) return *this;
  const auto k = vertices.size();
  const auto start = static_cast<std::size_t>(std::min_element(vertices.begin(), vertices.end()) - vertices.begin());
  Cycle out;
  out.vertices.reserve(k);
  const VertexId next = vertices[(start + 1) % k];
  const VertexId prev = vertices[(start + k - 1) % k];
  for (std::size_t i = 0; i < k; ++i) {
    out.vertices.push_back(next <= prev ? vertices[(start + i) % k] : vertices[(start + k - i) % k]);
  }
  return out;
}

VertexSet Cycle::vertex_set() const { return normalize(vertices); }

VertexSet normalize(std::vector<VertexId> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

VertexSet all_vertices(const Graph& g) {
  VertexSet s(static_cast<std::size_t>(g.num_vertices()));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

VertexSet complement(const Graph& g, std::span<const VertexId> s) {
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (VertexId v : s) in.at(static_cast<std::size_t>(v)) = 1;
  VertexSet out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

VertexSet mask_to_set(VertexMask mask) {
  VertexSet s;
  while (mask != 0) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

VertexMask set_to_mask(std::span<const VertexId> s) {
  VertexMask m = 0;
  for (VertexId v : s) {
    if (v < 0 || v >= 64) throw PreconditionError("vertex id out of mask range");
    m |= VertexMask{1} << v;
  }
  return m;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> s) {
  VertexSet keep = normalize({s.begin(), s.end()});
  std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= g.num_vertices()) {
      throw PreconditionError("vertex " + std::to_string(keep[i]) + " out of range");
    }
    local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  std::vector<EdgeId> edge_map;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const int lu = local[static_cast<std::size_t>(u)];
    const int lv = local[static_cast<std::size_t>(v)];
    if (lu >= 0 && lv >= 0) {
      edges.push_back({lu, lv});
      edge_map.push_back(e);
    }
  }
  std::vector<Cost> costs;
  costs.reserve(keep.size());
  for (VertexId v : keep) costs.push_back(g.cost(v));
  const int count = static_cast<int>(keep.size());
  return {Graph(count, std::move(edges), std::move(costs)), std::move(keep), std::move(edge_map)};
}

InducedSubgraph delete_vertices(const Graph& g, std::span<const VertexId> s) {
  return induced_subgraph(g, complement(g, s));
}

Components connected_components(const Graph& g) {
  Components c;
  c.of_vertex.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (c.of_vertex[static_cast<std::size_t>(s)] >= 0) continue;
    c.of_vertex[static_cast<std::size_t>(s)] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.incident(u)) {
        auto& id = c.of_vertex[static_cast<std::size_t>(inc.neighbor)];
        if (id < 0) {
          id = c.count;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++c.count;
  }
  return c;
}

bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

namespace {

struct ComponentCounts {
  std::vector<int> vertices;
  std::vector<int> edges;
};

ComponentCounts component_counts(const Graph& g, const Components& c) {
  ComponentCounts out{std::vector<int>(static_cast<std::size_t>(c.count), 0),
                      std::vector<int>(static_cast<std::size_t>(c.count), 0)};
  for (VertexId v = 0; v < g.num_vertices(); ++v) ++out.vertices[static_cast<std::size_t>(c.of_vertex[static_cast<std::size_t>(v)])];
  for (const Edge& e : g.edges()) ++out.edges[static_cast<std::size_t>(c.of_vertex[static_cast<std::size_t>(e.u)])];
  return out;
}

}  // namespace

bool is_acyclic(const Graph& g) {
  return g.num_edges() == g.num_vertices() - connected_components(g).count;
}

bool is_pseudoforest(const Graph& g) {
  const Components c = connected_components(g);
  const ComponentCounts counts = component_counts(g, c);
  for (int i = 0; i < c.count; ++i) {
    if (counts.edges[static_cast<std::size_t>(i)] > counts.vertices[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool is_two_pseudotree(const Graph& g) {
  return g.num_vertices() > 0 && is_connected(g) && g.num_edges() >= g.num_vertices() + 1;
}

int edges_within(const Graph& g, VertexMask s) {
  int count = 0;
  for (const Edge& e : g.edges()) {
    if (((s >> e.u) & 1U) && ((s >> e.v) & 1U)) ++count;
  }
  return count;
}

int excess(const Graph& g, VertexMask s) { return edges_within(g, s) - std::popcount(s); }

std::optional<SemiDisjointCycle> find_semi_disjoint_cycle(const Graph& g) {
  const int n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) < 2) throw PreconditionError("find_semi_disjoint_cycle: vertex " + std::to_string(v) + " has degree < 2");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (VertexId start = 0; start < n; ++start) {
    if (g.degree(start) != 2 || seen[static_cast<std::size_t>(start)]) continue;
    // Walk the maximal chain of degree-2 vertices through `start` in both directions.
    auto walk = [&](VertexId from, VertexId first) {
      std::vector<VertexId> path;
      VertexId prev = from;
      VertexId cur = first;
      while (g.degree(cur) == 2 && cur != start) {
        path.push_back(cur);
        const auto inc = g.incident(cur);
        const VertexId next = inc[0].neighbor == prev ? inc[1].neighbor : inc[0].neighbor;
        prev = cur;
        cur = next;
      }
      return std::pair{path, cur};  // cur is the terminating vertex (degree > 2 or start)
    };
    const auto inc = g.incident(start);
    auto [left, left_end] = walk(start, inc[0].neighbor);
    seen[static_cast<std::size_t>(start)] = 1;
    for (VertexId u : left) seen[static_cast<std::size_t>(u)] = 1;
    if (left_end == start) {
      // Whole component is a cycle.
      Cycle c;
      c.vertices.push_back(start);
      c.vertices.insert(c.vertices.end(), left.begin(), left.end());
      return SemiDisjointCycle{c.canonical(), std::nullopt};
    }
    auto [right, right_end] = walk(start, inc[1].neighbor);
    for (VertexId u : right) seen[static_cast<std::size_t>(u)] = 1;
    if (left_end == right_end) {
      Cycle c;
      c.vertices.push_back(left_end);
      c.vertices.insert(c.vertices.end(), left.rbegin(), left.rend());
      c.vertices.push_back(start);
      c.vertices.insert(c.vertices.end(), right.begin(), right.end());
      return SemiDisjointCycle{c.canonical(), left_end};
    }
  }
  return std::nullopt;
}

PruneResult prune_degree_one(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    if (deg[static_cast<std::size_t>(v)] <= 1) {
      removed[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Incidence& inc : g.incident(queue[head])) {
      const auto w = static_cast<std::size_t>(inc.neighbor);
      if (removed[w]) continue;
      if (--deg[w] <= 1) {
        removed[w] = 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  VertexSet gone = normalize(std::move(queue));
  return {delete_vertices(g, gone), std::move(gone)};
}

std::vector<EdgeId> cyclic_edges(const Graph& g) {
  // Iterative Tarjan bridge finding; an edge is cyclic iff it is not a bridge.
  const int n = g.num_vertices();
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> bridge(static_cast<std::size_t>(g.num_edges()), 0);
  int timer = 0;
  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const Incidence edge = inc[f.next++];
        if (edge.edge == f.parent_edge) continue;
        const auto w = static_cast<std::size_t>(edge.neighbor);
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({edge.neighbor, edge.edge, 0});
        } else {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const auto p = static_cast<std::size_t>(stack.back().v);
          const auto c = static_cast<std::size_t>(done.v);
          low[p] = std::min(low[p], low[c]);
          if (low[c] > disc[p]) bridge[static_cast<std::size_t>(done.parent_edge)] = 1;
        }
      }
    }
  }
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!bridge[static_cast<std::size_t>(e)]) out.push_back(e);
  }
  return out;
}

std::vector<Cycle> enumerate_cycles(const Graph& g, const Caps& caps) {
  const int n = g.num_vertices();
  if (n > caps.cycle_vertices) {
    throw CapExceeded("enumerate_cycles: " + std::to_string(n) + " vertices exceeds cap " +
                      std::to_string(caps.cycle_vertices));
  }
  std::vector<Cycle> out;
  std::vector<VertexId> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  // Each cycle is found from its smallest vertex s, and kept in the
  // orientation whose second vertex is smaller than its last.
  std::function<void(VertexId, VertexId)> extend = [&](VertexId s, VertexId u) {
    for (const Incidence& inc : g.incident(u)) {
      const VertexId w = inc.neighbor;
      if (w == s && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(Cycle{path});
        if (static_cast<long long>(out.size()) > caps.max_cycles) {
          throw CapExceeded("enumerate_cycles: more than " + std::to_string(caps.max_cycles) + " cycles");
        }
      }
      if (w <= s || on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      extend(s, w);
      path.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = 1;
    extend(s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet pseudoforest_fvs(const Graph& g) {
  if (!is_pseudoforest(g)) throw PreconditionError("pseudoforest_fvs: graph is not a pseudoforest");
  // After pruning leaves, what remains of a pseudoforest is a disjoint union of cycles.
  const PruneResult pruned = prune_degree_one(g);
  const Graph& core = pruned.kept.graph;
  const Components comps = connected_components(core);
  std::vector<VertexId> best(static_cast<std::size_t>(comps.count), -1);
  for (VertexId v = 0; v < core.num_vertices(); ++v) {
    const auto c = static_cast<std::size_t>(comps.of_vertex[static_cast<std::size_t>(v)]);
    const Cost& cost = core.cost(v);
    if (cost.is_infinite()) continue;
    if (best[c] < 0 || cost.value() < core.cost(best[c]).value()) best[c] = v;
  }
  VertexSet out;
  for (int c = 0; c < comps.count; ++c) {
    if (best[static_cast<std::size_t>(c)] < 0) {
      throw PreconditionError("pseudoforest_fvs: a cycle consists of infinite-cost vertices only");
    }
    out.push_back(pruned.kept.to_parent[static_cast<std::size_t>(best[static_cast<std::size_t>(c)])]);
  }
  return normalize(std::move(out));
}

std::optional<Rational> set_cost(const Graph& g, std::span<const VertexId> s) {
  Rational total;
  for (VertexId v : s) {
    const Cost& c = g.cost(v);
    if (c.is_infinite()) return std::nullopt;
    total += c.value();
  }
  return total;
}

bool is_fvs(const Graph& g, std::span<const VertexId> s) { return is_acyclic(delete_vertices(g, s).graph); }

bool is_pfds(const Graph& g, std::span<const VertexId> s) { return is_pseudoforest(delete_vertices(g, s).graph); }

}  // namespace fvslab
