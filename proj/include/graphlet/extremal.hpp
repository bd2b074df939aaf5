#pragma once

#include <cmath>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/micro.hpp"
#include "graphlet/sampling.hpp"

namespace graphlet {

struct MaxGraphletResult {
  int pattern = 0;
  double z = 0;
  EdgeId edge = 0;
  std::size_t sampled = 0;
};

namespace detail {

/// Edges of the densest cores first: rank by edge core number (descending)
/// with a seeded random key breaking ties, and keep the first K.
inline std::vector<EdgeId> core_first_edges(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t m = g.num_edges();
  auto cores = kcore_numbers(g);
  Rng rng(seed);
  std::vector<std::pair<std::uint64_t, EdgeId>> keyed(m);
  for (EdgeId e = 0; e < m; ++e) keyed[e] = {rng(), e};
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    auto ca = cores.edge_core[a.second], cb = cores.edge_core[b.second];
    if (ca != cb) return ca > cb;
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<EdgeId> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(keyed[i].second);
  return out;
}

}  // namespace detail

/// Largest per-edge count of `pattern_id` over a sample of edges, each
/// evaluated exactly. Never exceeds the true maximum. Uniform designs use
/// the ordinary edge sampler; the kcore design takes ceil(p * m) edges (or K
/// in fixed-size mode) from the largest cores downward.
inline MaxGraphletResult max_graphlet_estimate(const Graph& g, int pattern_id, const SampleDesign& design) {
  if (pattern_id < 3 || pattern_id > static_cast<int>(kPatternCount))
    throw std::invalid_argument("max graphlet estimation supports patterns 3 to 17");
  const std::size_t m = g.num_edges();
  design.validate(m);

  std::vector<EdgeId> edges;
  if (design.weighting == Weighting::kcore) {
    std::size_t k = design.mode == SampleMode::probability
                        ? static_cast<std::size_t>(std::ceil(design.probability * static_cast<double>(m)))
                        : std::min(design.size, m);
    edges = detail::core_first_edges(g, std::min(k, m), design.seed);
  } else {
    edges = sample_edges(g, design).edges;
  }
  if (edges.empty()) throw std::runtime_error("empty edge sample: nothing to maximize over");

  VertexMarker marker(g.num_vertices());
  MaxGraphletResult best;
  best.pattern = pattern_id;
  best.sampled = edges.size();
  bool first = true;
  for (EdgeId e : edges) {
    double z = micro_exact(g, e, marker)[pattern_id];
    if (first || z > best.z || (z == best.z && e < best.edge)) {
      best.z = z;
      best.edge = e;
      first = false;
    }
  }
  return best;
}

}  // namespace graphlet
