#include "fvslab/generators.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace fvslab {

Graph butterfly() { return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}); }

Graph complete(int n) {
  if (n < 0) throw PreconditionError("complete: n must be >= 0");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  if (n < 3) throw PreconditionError("cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph figure1(int n) {
  if (n < 1) throw PreconditionError("figure1: n must be >= 1");
  const int u = n, v = n + 1, w = n + 2;
  const Graph clique = complete(n);
  std::vector<Edge> edges(clique.edges().begin(), clique.edges().end());
  for (int a = 0; a < n; ++a) edges.push_back({a, u});
  edges.push_back({u, v});
  edges.push_back({v, w});
  edges.push_back({u, w});
  std::vector<Cost> costs(static_cast<std::size_t>(n), Cost(1));
  costs.insert(costs.end(), 3, Cost::infinite());
  return Graph(n + 3, std::move(edges), std::move(costs));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw PreconditionError("erdos_renyi: need n >= 0 and p in [0, 1]");
  std::mt19937_64 rng(seed);
  // Edge iff the raw draw falls below p * 2^64.
  const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
  const bool always = p >= 1.0;
  const std::uint64_t threshold = always ? 0 : static_cast<std::uint64_t>(scaled);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t draw = rng();
      if (always || draw < threshold) edges.push_back({i, j});
    }
  }
  return Graph(n, std::move(edges));
}

Rational random_positive_rational(std::mt19937_64& rng, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(1, 2 * max_den);
  return Rational(num(rng), d);
}

std::vector<Cost> random_costs(int n, std::mt19937_64& rng, int max_den) {
  std::vector<Cost> costs;
  costs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) costs.emplace_back(random_positive_rational(rng, max_den));
  return costs;
}

Graph generate(std::string_view kind, const GenerateParams& params) {
  if (kind == "butterfly") return butterfly();
  if (kind == "complete") return complete(params.n);
  if (kind == "cycle") return cycle(params.n);
  if (kind == "figure1") return figure1(params.n);
  if (kind == "erdos-renyi" || kind == "erdos_renyi") return erdos_renyi(params.n, params.p, params.seed);
  throw PreconditionError("unknown graph kind '" + std::string(kind) + "'");
}

namespace {

/// Splits into whitespace-separated tokens, dropping `#` comments.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) tokens.push_back(w);
  }
  return tokens;
}

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ParseError(std::string("graph: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const std::vector<std::string> t = tokenize(text);
  if (t.size() < 2) throw ParseError("graph: missing header `n m`");
  const int n = parse_int(t[0], "vertex count");
  const int m = parse_int(t[1], "edge count");
  if (n < 0 || m < 0) throw ParseError("graph: negative counts");
  const std::size_t expected = 2 + static_cast<std::size_t>(n) + 2 * static_cast<std::size_t>(m);
  if (t.size() != expected) {
    throw ParseError("graph: expected " + std::to_string(expected) + " tokens, found " + std::to_string(t.size()));
  }
  std::vector<Cost> costs;
  for (int i = 0; i < n; ++i) {
    try {
      costs.push_back(Cost::parse(t[2 + static_cast<std::size_t>(i)]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("graph: cost of vertex ") + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<Edge> edges;
  for (int e = 0; e < m; ++e) {
    const std::size_t at = 2 + static_cast<std::size_t>(n) + 2 * static_cast<std::size_t>(e);
    edges.push_back({parse_int(t[at], "endpoint"), parse_int(t[at + 1], "endpoint")});
  }
  try {
    return Graph(n, std::move(edges), std::move(costs));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Cost& c : g.costs()) out << c.str() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace fvslab
