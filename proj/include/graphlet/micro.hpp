#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/local_counts.hpp"
#include "graphlet/sampling.hpp"

namespace graphlet {

struct MicroEstimate {
  EdgeId edge = 0;
  VertexId u = 0;
  VertexId v = 0;
  RealVector x{};
  std::array<bool, kPatternCount> clamped{};
  double p_e = 1.0;
  double omega = 0;  // edges with both endpoints in N(u) ∪ N(v) \ {u, v}
  std::uint64_t seed = 0;

  double operator[](int pattern_id) const { return x[slot(pattern_id)]; }
};

struct MicroOptions {
  std::optional<std::size_t> max_scan;  // cap on neighbors probed per vertex
};

namespace detail {

/// Probes ceil(d_w * p) neighbors of w without replacement and calls
/// `hit(r, credit)` for each; credit is d_w / s_w so every hit count is an
/// unbiased estimate of the full scan.
template <typename Hit>
void scan_neighbors(const Graph& g, VertexId w, double p, const MicroOptions& opt, Rng& rng,
                    std::vector<VertexId>& scratch, Hit&& hit) {
  auto nb = g.neighbors(w);
  const std::size_t d = nb.size();
  if (d == 0) return;
  std::size_t s = static_cast<std::size_t>(std::ceil(static_cast<double>(d) * p));
  if (opt.max_scan) s = std::min(s, std::max<std::size_t>(1, *opt.max_scan));
  s = std::clamp<std::size_t>(s, 1, d);
  if (s == d) {
    for (VertexId r : nb) hit(r, 1.0);
    return;
  }
  const double credit = static_cast<double>(d) / static_cast<double>(s);
  scratch.assign(nb.begin(), nb.end());
  for (std::size_t i = 0; i < s; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, d - i));
    std::swap(scratch[i], scratch[j]);
    hit(scratch[i], credit);
  }
}

}  // namespace detail

/// Per-edge graphlet counts with neighbor subsampling. Patterns on three
/// vertices are exact; 4-node patterns come from estimated edge counts
/// between the roles T_e, S_u, S_v and the far set, plus degree sums.
/// At p_e = 1 every scan is exhaustive and the result is exact.
inline MicroEstimate micro_counts(const Graph& g, EdgeId e, double p_e, std::uint64_t seed, VertexMarker& marker,
                                  const MicroOptions& opt = {}) {
  if (!(p_e > 0.0 && p_e <= 1.0)) throw std::invalid_argument("neighbor sampling fraction must lie in (0, 1]");
  if (e >= g.num_edges()) throw std::out_of_range("edge id out of range");
  if (marker.size() < g.num_vertices()) marker.resize(g.num_vertices());

  MicroEstimate out;
  out.edge = e;
  out.p_e = p_e;
  out.seed = seed;
  EdgeLocal loc = classify_neighborhood(g, e, marker);
  out.u = loc.u;
  out.v = loc.v;

  Rng rng(mix_seed(seed, e));
  std::vector<VertexId> scratch;

  double cliques = 0, cycles = 0, common_star = 0, star_star = 0;
  for (VertexId w : loc.common) {
    detail::scan_neighbors(g, w, p_e, opt, rng, scratch, [&](VertexId r, double c) {
      if (marker.get(r) == Mark::common) cliques += c;
    });
    marker.set(w, Mark::retired);
  }
  for (VertexId w : loc.exclusive_u) {
    detail::scan_neighbors(g, w, p_e, opt, rng, scratch, [&](VertexId r, double c) {
      switch (marker.get(r)) {
        case Mark::exclusive_v: cycles += c; break;
        case Mark::exclusive_u: star_star += c; break;
        case Mark::retired: common_star += c; break;
        default: break;
      }
    });
    marker.set(w, Mark::none);
  }
  for (VertexId w : loc.exclusive_v) {
    detail::scan_neighbors(g, w, p_e, opt, rng, scratch, [&](VertexId r, double c) {
      switch (marker.get(r)) {
        case Mark::exclusive_v: star_star += c; break;
        case Mark::retired: common_star += c; break;
        default: break;
      }
    });
    marker.set(w, Mark::none);
  }

  const double t = static_cast<double>(loc.common.size());
  const double su = static_cast<double>(loc.exclusive_u.size());
  const double sv = static_cast<double>(loc.exclusive_v.size());
  const double s = su + sv;
  const double r = static_cast<double>(loc.far);
  const double n = static_cast<double>(g.num_vertices());
  double deg_common = 0, deg_star = 0;  // sum (d_w - 2) over T_e, (d_w - 1) over S
  for (VertexId w : loc.common) deg_common += static_cast<double>(g.degree(w)) - 2;
  for (VertexId w : loc.exclusive_u) deg_star += static_cast<double>(g.degree(w)) - 1;
  for (VertexId w : loc.exclusive_v) deg_star += static_cast<double>(g.degree(w)) - 1;

  out.omega = cliques + common_star + star_star + cycles;
  const double common_far = deg_common - 2 * cliques - common_star;
  const double star_far = deg_star - 2 * star_star - 2 * cycles - common_star;
  const double touching_endpoints = static_cast<double>(g.degree(loc.u) + g.degree(loc.v)) - 1;
  const double far_far = static_cast<double>(g.num_edges()) - touching_endpoints - deg_common - deg_star + out.omega;

  auto& x = out.x;
  auto c2 = [](double k) { return k * (k - 1) / 2; };
  x[slot(1)] = 1;
  x[slot(3)] = t;
  x[slot(4)] = s;
  x[slot(5)] = r;
  x[slot(6)] = 0;  // no independent triple contains an edge
  x[slot(7)] = cliques;
  x[slot(8)] = c2(t) - cliques + common_star;
  x[slot(9)] = t * s - common_star + common_far + star_star;
  x[slot(10)] = cycles;
  x[slot(11)] = c2(su) + c2(sv) - star_star;
  x[slot(12)] = su * sv - cycles + star_far;
  x[slot(13)] = t * r - common_far;
  x[slot(14)] = s * r - star_far;
  x[slot(15)] = far_far;
  x[slot(16)] = c2(r) - far_far;
  for (int id = 7; id <= 16; ++id) {
    if (x[slot(id)] < 0) {
      x[slot(id)] = 0;
      out.clamped[slot(id)] = true;
    }
  }
  double sum4 = 0;
  for (int id = 7; id <= 16; ++id) sum4 += x[slot(id)];
  // Complement within the C(n-2, 2) quadruples that contain the edge.
  double rest = c2(n - 2) - sum4;
  if (rest < 0) {
    rest = 0;
    out.clamped[slot(17)] = true;
  }
  x[slot(17)] = rest;
  return out;
}

inline MicroEstimate micro_counts(const Graph& g, EdgeId e, double p_e, std::uint64_t seed, const MicroOptions& opt = {}) {
  VertexMarker marker(g.num_vertices());
  return micro_counts(g, e, p_e, seed, marker, opt);
}

/// Exhaustive per-edge counts.
inline MicroEstimate micro_exact(const Graph& g, EdgeId e) { return micro_counts(g, e, 1.0, 0); }

inline MicroEstimate micro_exact(const Graph& g, EdgeId e, VertexMarker& marker) {
  return micro_counts(g, e, 1.0, 0, marker);
}

struct UnivariateStats {
  std::size_t count = 0;
  double mean = 0, median = 0, min = 0, max = 0, variance = 0, q1 = 0, q3 = 0, iqr = 0;
};

/// Quantile by linear interpolation between closest ranks, h = (N - 1) q.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty set");
  double h = (static_cast<double>(sorted.size()) - 1) * q;
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline UnivariateStats describe(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("statistics of an empty set");
  std::sort(values.begin(), values.end());
  UnivariateStats st;
  st.count = values.size();
  long double sum = 0;
  for (double v : values) sum += v;
  st.mean = static_cast<double>(sum / values.size());
  long double ss = 0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  st.variance = static_cast<double>(ss / values.size());
  st.min = values.front();
  st.max = values.back();
  st.median = quantile_sorted(values, 0.5);
  st.q1 = quantile_sorted(values, 0.25);
  st.q3 = quantile_sorted(values, 0.75);
  st.iqr = st.q3 - st.q1;
  return st;
}

/// Distribution of one pattern's per-edge counts over an edge set (all edges
/// when `edges` is empty). Variance is the population variance of that set.
inline UnivariateStats univariate_stats(const Graph& g, int pattern_id, std::span<const EdgeId> edges = {},
                                        double p_e = 1.0, std::uint64_t seed = 0) {
  if (pattern_id < 1 || pattern_id > static_cast<int>(kPatternCount)) throw std::invalid_argument("unknown pattern id");
  VertexMarker marker(g.num_vertices());
  std::vector<double> values;
  auto one = [&](EdgeId e) { values.push_back(micro_counts(g, e, p_e, seed, marker)[pattern_id]); };
  if (edges.empty()) {
    values.reserve(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) one(e);
  } else {
    values.reserve(edges.size());
    for (EdgeId e : edges) one(e);
  }
  return describe(std::move(values));
}

}  // namespace graphlet
