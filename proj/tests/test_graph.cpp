#include "doctest.h"

#include <set>

#include "fvslab/generators.hpp"
#include "fvslab/graph.hpp"

using namespace fvslab;

namespace {

Graph triangle_with_pendant() { return Graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}); }

Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, edges);
}

// Cyclic edges by deleting each edge and checking whether its endpoints stay connected.
std::vector<EdgeId> cyclic_edges_by_removal(const Graph& g) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::vector<Edge> rest;
    for (EdgeId f = 0; f < g.num_edges(); ++f)
      if (f != e) rest.push_back(g.edge(f));
    const Components c = connected_components(Graph(g.num_vertices(), rest));
    if (c.of_vertex[g.edge(e).u] == c.of_vertex[g.edge(e).v]) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(Graph(2, {{0, 0}}), PreconditionError);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), PreconditionError);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), PreconditionError);
  CHECK_THROWS_AS(Graph(2, {}, {Cost(1)}), PreconditionError);
}

TEST_CASE("induced subgraph") {
  const Graph b = butterfly();
  const InducedSubgraph tri = induced_subgraph(b, std::vector<VertexId>{0, 1, 2});
  CHECK(tri.graph.num_vertices() == 3);
  CHECK(tri.graph.num_edges() == 3);
  CHECK(tri.to_parent == std::vector<VertexId>{0, 1, 2});

  const InducedSubgraph k3 = induced_subgraph(complete(5), std::vector<VertexId>{0, 1, 2});
  CHECK(k3.graph.num_edges() == 3);

  const InducedSubgraph empty = induced_subgraph(b, std::vector<VertexId>{});
  CHECK(empty.graph.num_vertices() == 0);
  CHECK(empty.graph.num_edges() == 0);
  CHECK_THROWS_AS(induced_subgraph(b, std::vector<VertexId>{7}), PreconditionError);
}

TEST_CASE("b(S) agrees with induced subgraph counts") {
  const Graph g = erdos_renyi(9, 0.5, 3);
  for (VertexMask s = 0; s < (VertexMask{1} << 9); ++s) {
    const InducedSubgraph sub = induced_subgraph(g, mask_to_set(s));
    CHECK(excess(g, s) == sub.graph.num_edges() - sub.graph.num_vertices());
  }
}

TEST_CASE("pseudoforest predicate") {
  CHECK(is_pseudoforest(cycle(5)));
  CHECK_FALSE(is_pseudoforest(butterfly()));
  CHECK(is_pseudoforest(path(6)));
  CHECK(is_pseudoforest(Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})));
  CHECK_FALSE(is_pseudoforest(complete(4)));
}

TEST_CASE("semi-disjoint cycles") {
  const auto tri = find_semi_disjoint_cycle(cycle(3));
  REQUIRE(tri);
  CHECK(tri->cycle.vertices.size() == 3);
  CHECK_FALSE(tri->pivot);

  const auto b = find_semi_disjoint_cycle(butterfly());
  REQUIRE(b);
  CHECK(b->pivot == 0);
  CHECK(b->cycle.vertex_set() == VertexSet{0, 1, 2});

  CHECK_FALSE(find_semi_disjoint_cycle(complete(4)));
  CHECK_THROWS_AS(find_semi_disjoint_cycle(path(3)), PreconditionError);
}

TEST_CASE("semi-disjoint cycle exists iff enumeration finds one") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Graph g0 = erdos_renyi(4 + static_cast<int>(seed % 6), 0.45, seed);
    const Graph g = prune_degree_one(g0).kept.graph;
    if (g.num_vertices() == 0) continue;
    bool brute = false;
    for (const Cycle& c : enumerate_cycles(g)) {
      int heavy = 0;
      for (VertexId v : c.vertices) heavy += g.degree(v) > 2;
      brute = brute || heavy <= 1;
    }
    const auto found = find_semi_disjoint_cycle(g);
    CHECK(found.has_value() == brute);
    if (found) {
      int heavy = 0;
      for (VertexId v : found->cycle.vertices) heavy += g.degree(v) > 2;
      CHECK(heavy <= 1);
      const auto& vs = found->cycle.vertices;
      for (std::size_t i = 0; i < vs.size(); ++i) CHECK(g.adjacent(vs[i], vs[(i + 1) % vs.size()]));
    }
  }
}

TEST_CASE("prune degree one") {
  CHECK(prune_degree_one(path(4)).kept.graph.num_vertices() == 0);
  const PruneResult tp = prune_degree_one(triangle_with_pendant());
  CHECK(tp.kept.to_parent == std::vector<VertexId>{0, 1, 2});
  CHECK(tp.removed == VertexSet{3});
  CHECK(prune_degree_one(butterfly()).kept.graph.num_edges() == 6);
}

TEST_CASE("pruning keeps every cycle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = erdos_renyi(3 + static_cast<int>(seed % 8), 0.35, 100 + seed);
    const PruneResult p = prune_degree_one(g);
    std::set<Cycle> mapped;
    for (const Cycle& c : enumerate_cycles(p.kept.graph)) {
      Cycle back;
      for (VertexId v : c.vertices) back.vertices.push_back(p.kept.to_parent[v]);
      mapped.insert(back.canonical());
    }
    const auto original = enumerate_cycles(g);
    CHECK(std::set<Cycle>(original.begin(), original.end()) == mapped);
  }
}

TEST_CASE("cyclic edges") {
  CHECK(cyclic_edges(path(5)).empty());
  CHECK(cyclic_edges(cycle(5)).size() == 5);
  CHECK(cyclic_edges(triangle_with_pendant()) == std::vector<EdgeId>{0, 1, 2});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = erdos_renyi(2 + static_cast<int>(seed % 9), 0.3, 7 * seed);
    CHECK(cyclic_edges(g) == cyclic_edges_by_removal(g));
    std::set<EdgeId> on_cycle;
    for (const Cycle& c : enumerate_cycles(g)) {
      for (std::size_t i = 0; i < c.vertices.size(); ++i)
        on_cycle.insert(*g.find_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]));
    }
    const auto ce = cyclic_edges(g);
    CHECK(std::set<EdgeId>(ce.begin(), ce.end()) == on_cycle);
  }
}

TEST_CASE("cycle enumeration") {
  CHECK(enumerate_cycles(complete(4)).size() == 7);
  CHECK(enumerate_cycles(cycle(5)).size() == 1);
  CHECK(enumerate_cycles(path(5)).empty());
  // K_n has sum_{k>=3} C(n,k) (k-1)!/2 cycles; 37 for n = 5, 197 for n = 6.
  CHECK(enumerate_cycles(complete(5)).size() == 37);
  CHECK(enumerate_cycles(complete(6)).size() == 197);
  Caps tiny;
  tiny.cycle_vertices = 4;
  CHECK_THROWS_AS(enumerate_cycles(complete(5), tiny), CapExceeded);
}

TEST_CASE("generators") {
  const Graph b = butterfly();
  CHECK(b.num_vertices() == 5);
  CHECK(b.num_edges() == 6);
  CHECK(b.degree(0) == 4);

  const Graph f = figure1(4);
  CHECK(f.num_vertices() == 7);
  CHECK(f.num_edges() == 13);
  int infinite = 0, ones = 0;
  for (const Cost& c : f.costs()) {
    if (c.is_infinite()) ++infinite;
    else if (c.value() == 1) ++ones;
  }
  CHECK(infinite == 3);
  CHECK(ones == 4);
  CHECK(complete(4).num_edges() == 6);
  CHECK(erdos_renyi(10, 0.5, 42).edges().size() == erdos_renyi(10, 0.5, 42).edges().size());
  CHECK(erdos_renyi(6, 1.0, 1).num_edges() == 15);
  CHECK(erdos_renyi(6, 0.0, 1).num_edges() == 0);
  CHECK_THROWS_AS(generate("petersen", {}), PreconditionError);
}

TEST_CASE("pseudoforest fvs") {
  CHECK(pseudoforest_fvs(cycle(5)) == VertexSet{0});
  const Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}},
                  {Cost(1), Cost(2), Cost(3), Cost(5), Cost(4), Cost(6)});
  CHECK(pseudoforest_fvs(two) == VertexSet{0, 4});
  CHECK(pseudoforest_fvs(path(4)).empty());
  CHECK_THROWS_AS(pseudoforest_fvs(butterfly()), PreconditionError);
}

TEST_CASE("graph text format round trip") {
  const Graph g = parse_graph("# a triangle\n3 3\n1\n1/2\ninf\n0 1\n1 2 # last two\n0 2\n");
  CHECK(g.cost(1).value() == Rational(1, 2));
  CHECK(g.cost(2).is_infinite());
  const Graph again = parse_graph(format_graph(g));
  CHECK(format_graph(again) == format_graph(g));
  CHECK_THROWS_AS(parse_graph("2 1\n1\n1\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3 2\n1\n1\n1\n0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("2 1\n1\n-1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("2 1\n1\n1\n"), ParseError);
}
