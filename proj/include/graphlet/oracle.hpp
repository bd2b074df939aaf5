#pragma once

// Brute-force ground truth. Deliberately independent of the CSR fast paths:
// adjacency comes from a dense matrix built off the edge list and every
// subset is classified from scratch.

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"

namespace graphlet::oracle {

inline constexpr std::size_t kDefaultVertexCap = 64;

class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(const Graph& g) : n_(g.num_vertices()), bits_(n_ * n_, false) {
    for (auto [u, v] : g.edges()) {
      bits_[u * n_ + v] = true;
      bits_[v * n_ + u] = true;
    }
  }
  bool operator()(VertexId a, VertexId b) const { return bits_[a * n_ + b]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// Graphlet id of the subgraph induced by 3 or 4 distinct vertices, decided by
/// edge count and degree multiset.
template <typename Adjacent>
int classify_induced(const Adjacent& adjacent, std::span<const VertexId> vs) {
  const std::size_t k = vs.size();
  if (k != 3 && k != 4) throw std::invalid_argument("classify_induced expects 3 or 4 vertices");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (vs[i] == vs[j]) throw std::invalid_argument("classify_induced expects distinct vertices");

  std::array<int, 4> deg{};
  int edges = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (adjacent(vs[i], vs[j])) {
        ++edges;
        ++deg[i];
        ++deg[j];
      }

  if (k == 3) {
    static constexpr int by_edges[] = {6, 5, 4, 3};
    return by_edges[edges];
  }

  std::sort(deg.begin(), deg.end());
  switch (edges) {
    case 6: return 7;
    case 5: return 8;
    case 4: return deg == std::array<int, 4>{1, 2, 2, 3} ? 9 : 10;
    case 3:
      if (deg == std::array<int, 4>{1, 1, 1, 3}) return 11;
      if (deg == std::array<int, 4>{1, 1, 2, 2}) return 12;
      return 13;  // {0, 2, 2, 2}: triangle plus isolated vertex
    case 2: return deg[0] == 0 ? 14 : 15;  // {0,1,1,2} adjacent, {1,1,1,1} disjoint
    case 1: return 16;
    default: return 17;
  }
}

inline int classify_induced(const Graph& g, std::span<const VertexId> vs) {
  for (VertexId v : vs)
    if (v >= g.num_vertices()) throw std::invalid_argument("vertex out of range");
  return classify_induced([&](VertexId a, VertexId b) { return g.has_edge(a, b); }, vs);
}

using ExactCounts = std::array<u128, kPatternCount>;

/// Exhaustive count of every pattern over all 2-, 3- and 4-subsets.
inline ExactCounts brute_force_counts(const Graph& g, std::size_t cap = kDefaultVertexCap) {
  const std::size_t n = g.num_vertices();
  if (n > cap)
    throw CapacityError("brute-force oracle limited to " + std::to_string(cap) + " vertices (graph has " +
                        std::to_string(n) + "); use exact counting instead");
  AdjacencyMatrix adj(g);
  ExactCounts y{};
  std::size_t m = 0;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) m += adj(a, b);
  y[slot(1)] = m;
  y[slot(2)] = choose2(n) - m;

  std::array<VertexId, 4> vs{};
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c) {
        vs = {a, b, c, 0};
        ++y[slot(classify_induced(adj, std::span<const VertexId>(vs.data(), 3)))];
        for (VertexId d = c + 1; d < n; ++d) {
          vs[3] = d;
          ++y[slot(classify_induced(adj, std::span<const VertexId>(vs)))];
        }
      }
  return y;
}

/// Per-edge ground truth: every 3- and 4-subset containing both endpoints of e.
inline ExactCounts brute_force_edge_counts(const Graph& g, EdgeId e, std::size_t cap = kDefaultVertexCap) {
  const std::size_t n = g.num_vertices();
  if (n > cap)
    throw CapacityError("brute-force oracle limited to " + std::to_string(cap) + " vertices");
  if (e >= g.num_edges()) throw std::out_of_range("edge id out of range");
  AdjacencyMatrix adj(g);
  auto [u, v] = g.edge(e);
  ExactCounts y{};
  y[slot(1)] = 1;
  std::array<VertexId, 4> vs{};
  for (VertexId a = 0; a < n; ++a) {
    if (a == u || a == v) continue;
    vs = {u, v, a, 0};
    ++y[slot(classify_induced(adj, std::span<const VertexId>(vs.data(), 3)))];
    for (VertexId b = a + 1; b < n; ++b) {
      if (b == u || b == v) continue;
      vs[3] = b;
      ++y[slot(classify_induced(adj, std::span<const VertexId>(vs)))];
    }
  }
  return y;
}

}  // namespace graphlet::oracle
