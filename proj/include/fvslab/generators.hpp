#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fvslab/graph.hpp"

namespace fvslab {

/// Two triangles sharing vertex 0: edges 01 02 12 03 04 34.
Graph butterfly();
Graph complete(int n);
Graph cycle(int n);
/// K_n on 0..n-1 (cost 1), plus a triangle u=n, v=n+1, w=n+2 of infinite-cost
/// vertices with u joined to every vertex of K_n.
Graph figure1(int n);
/// G(n, p); each pair (i < j) drawn in lexicographic order from one mt19937_64 stream.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Random positive rational k/d with d in [1, max_den] and k in [1, 2*max_den].
Rational random_positive_rational(std::mt19937_64& rng, int max_den = 10);
std::vector<Cost> random_costs(int n, std::mt19937_64& rng, int max_den = 10);

struct GenerateParams {
  int n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
};

/// kind is one of butterfly, complete, cycle, figure1, erdos-renyi.
Graph generate(std::string_view kind, const GenerateParams& params);

/// Graph text format: `n m`, n cost lines (`p/q`, integer or `inf`), m lines `u v`.
/// `#` starts a comment.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
std::string format_graph(const Graph& g);

}  // namespace fvslab
