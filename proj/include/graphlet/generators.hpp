#pragma once

// Seeded synthetic graphs for tests and benchmarks.

#include <cmath>
#include <vector>

#include "graphlet/graph.hpp"
#include "graphlet/sampling.hpp"

namespace graphlet::gen {

using EdgePairs = std::vector<std::pair<VertexId, VertexId>>;

/// G(n, p): every pair independently. O(n^2).
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  EdgePairs pairs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (uniform01(rng) < p) pairs.emplace_back(a, b);
  return Graph::from_edges(n, pairs);
}

/// Chung-Lu style power-law graph: `m` endpoint pairs drawn proportional to
/// weights i^(-1/(gamma-1)), self-loops and repeats discarded, so the edge
/// count lands slightly below `m`.
inline Graph power_law(std::size_t n, std::size_t m, double gamma, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("power_law needs at least two vertices");
  const double exponent = -1.0 / (gamma - 1.0);
  std::vector<double> cumulative(n);
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) cumulative[i] = (acc += std::pow(static_cast<double>(i + 10), exponent));
  Rng rng(seed);
  auto draw = [&] {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), uniform01(rng) * acc);
    return static_cast<VertexId>(std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), n - 1));
  };
  EdgePairs pairs;
  pairs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) pairs.emplace_back(draw(), draw());
  return Graph::from_edges(n, pairs);
}

/// G(n, p) with a clique on vertices [0, k).
inline Graph planted_clique(std::size_t n, double p, std::size_t k, std::uint64_t seed) {
  Graph base = erdos_renyi(n, p, seed);
  EdgePairs pairs(base.edges().begin(), base.edges().end());
  for (VertexId a = 0; a < k; ++a)
    for (VertexId b = a + 1; b < k; ++b) pairs.emplace_back(a, b);
  return Graph::from_edges(n, pairs);
}

inline Graph complete(std::size_t n) {
  EdgePairs pairs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  return Graph::from_edges(n, pairs);
}

inline Graph path(std::size_t n) {
  EdgePairs pairs;
  for (VertexId a = 0; a + 1 < n; ++a) pairs.emplace_back(a, a + 1);
  return Graph::from_edges(n, pairs);
}

inline Graph cycle(std::size_t n) {
  EdgePairs pairs;
  for (VertexId a = 0; a < n; ++a) pairs.emplace_back(a, static_cast<VertexId>((a + 1) % n));
  return Graph::from_edges(n, pairs);
}

/// Center 0 joined to 1..leaves.
inline Graph star(std::size_t leaves) {
  EdgePairs pairs;
  for (VertexId a = 1; a <= leaves; ++a) pairs.emplace_back(0, a);
  return Graph::from_edges(leaves + 1, pairs);
}

inline Graph triangle_plus_isolated() {
  EdgePairs pairs{{0, 1}, {1, 2}, {0, 2}};
  return Graph::from_edges(4, pairs);
}

/// Vertex-disjoint union; b's ids are shifted past a's.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  EdgePairs pairs(a.edges().begin(), a.edges().end());
  const auto shift = static_cast<VertexId>(a.num_vertices());
  for (auto [u, v] : b.edges()) pairs.emplace_back(u + shift, v + shift);
  return Graph::from_edges(a.num_vertices() + b.num_vertices(), pairs);
}

/// Same structure with vertex i renamed perm[i].
inline Graph relabel(const Graph& g, std::span<const VertexId> perm) {
  EdgePairs pairs;
  for (auto [u, v] : g.edges()) pairs.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.num_vertices(), pairs);
}

}  // namespace graphlet::gen
