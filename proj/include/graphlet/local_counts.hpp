#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"

namespace graphlet {

/// Vertex roles inside one edge neighborhood.
enum class Mark : std::uint8_t {
  none = 0,
  exclusive_v = 1,  // lambda1: neighbor of v only
  exclusive_u = 2,  // lambda2: neighbor of u only
  common = 3,       // lambda3: neighbor of both endpoints
  retired = 4,      // lambda4: common neighbor already scanned
};

/// Per-worker mark table. Each edge gets a fresh generation, so starting a new
/// edge is O(1) instead of an O(n) clear.
class VertexMarker {
 public:
  explicit VertexMarker(std::size_t n = 0) : marks_(n, 0) {}

  void resize(std::size_t n) {
    marks_.assign(n, 0);
    generation_ = 1;
  }
  std::size_t size() const { return marks_.size(); }

  void next_generation() {
    if (++generation_ == (std::uint64_t{1} << 60)) {
      std::fill(marks_.begin(), marks_.end(), 0);
      generation_ = 1;
    }
  }

  Mark get(VertexId w) const {
    auto m = marks_[w];
    return (m >> 3) == generation_ ? static_cast<Mark>(m & 7) : Mark::none;
  }

  void set(VertexId w, Mark code) { marks_[w] = (generation_ << 3) | static_cast<std::uint64_t>(code); }

 private:
  std::vector<std::uint64_t> marks_;
  std::uint64_t generation_ = 1;
};

/// Decomposition of the neighborhood of edge (u, v), oriented so d_u <= d_v.
struct EdgeLocal {
  EdgeId edge = 0;
  VertexId u = 0;
  VertexId v = 0;
  std::vector<VertexId> common;       // T_e
  std::vector<VertexId> exclusive_u;  // S_u
  std::vector<VertexId> exclusive_v;  // S_v
  std::uint64_t far = 0;              // R_e: vertices outside N[u] ∪ N[v]

  std::uint64_t star_count() const { return exclusive_u.size() + exclusive_v.size(); }
};

struct EdgeUnrestricted {
  CountVector c{};

  u128 operator[](int pattern_id) const { return c[slot(pattern_id)]; }
};

inline std::pair<VertexId, VertexId> oriented_endpoints(const Graph& g, EdgeId e) {
  auto [a, b] = g.edge(e);
  if (g.degree(a) > g.degree(b)) std::swap(a, b);
  return {a, b};
}

/// Splits N(u) ∪ N(v) \ {u, v} into T_e, S_u and S_v in O(d_u + d_v) and leaves
/// the marker tagged with each vertex's role.
inline EdgeLocal classify_neighborhood(const Graph& g, EdgeId e, VertexMarker& marker) {
  EdgeLocal loc;
  loc.edge = e;
  std::tie(loc.u, loc.v) = oriented_endpoints(g, e);
  marker.next_generation();

  for (VertexId w : g.neighbors(loc.v))
    if (w != loc.u) marker.set(w, Mark::exclusive_v);
  for (VertexId w : g.neighbors(loc.u)) {
    if (w == loc.v) continue;
    if (marker.get(w) == Mark::exclusive_v) {
      loc.common.push_back(w);
      marker.set(w, Mark::common);
    } else {
      loc.exclusive_u.push_back(w);
      marker.set(w, Mark::exclusive_u);
    }
  }
  for (VertexId w : g.neighbors(loc.v))
    if (w != loc.u && marker.get(w) == Mark::exclusive_v) loc.exclusive_v.push_back(w);

  loc.far = g.num_vertices() - loc.common.size() - loc.star_count() - 2;
  return loc;
}

/// Marker-free variant: sorted-list merge, O(d_u + d_v) time and O(Δ) space.
inline EdgeLocal classify_neighborhood(const Graph& g, EdgeId e) {
  EdgeLocal loc;
  loc.edge = e;
  std::tie(loc.u, loc.v) = oriented_endpoints(g, e);
  auto nu = g.neighbors(loc.u);
  auto nv = g.neighbors(loc.v);
  std::size_t i = 0, j = 0;
  while (i < nu.size() || j < nv.size()) {
    if (j == nv.size() || (i < nu.size() && nu[i] < nv[j])) {
      if (nu[i] != loc.v) loc.exclusive_u.push_back(nu[i]);
      ++i;
    } else if (i == nu.size() || nv[j] < nu[i]) {
      if (nv[j] != loc.u) loc.exclusive_v.push_back(nv[j]);
      ++j;
    } else {
      loc.common.push_back(nu[i]);
      ++i, ++j;
    }
  }
  loc.far = g.num_vertices() - loc.common.size() - loc.star_count() - 2;
  return loc;
}

/// 4-cliques through e: adjacent pairs inside T_e. Each scanned w is retired
/// so that every pair is counted once. Mutates the marker.
inline u128 clique_count_marker(const Graph& g, VertexMarker& marker, std::span<const VertexId> common) {
  u128 k = 0;
  for (VertexId w : common) {
    for (VertexId r : g.neighbors(w))
      if (marker.get(r) == Mark::common) ++k;
    marker.set(w, Mark::retired);
  }
  return k;
}

/// 4-cycles through e: edges between S_u and S_v.
inline u128 cycle_count_marker(const Graph& g, const VertexMarker& marker, std::span<const VertexId> exclusive_u) {
  u128 c = 0;
  for (VertexId w : exclusive_u)
    for (VertexId r : g.neighbors(w))
      if (marker.get(r) == Mark::exclusive_v) ++c;
  return c;
}

namespace detail {

// |N(w) ∩ set| for sorted `set`, probing whichever side is smaller.
inline std::size_t count_adjacent(const Graph& g, VertexId w, std::span<const VertexId> set) {
  auto nw = g.neighbors(w);
  std::size_t hits = 0;
  if (set.size() <= nw.size()) {
    for (VertexId r : set) hits += std::binary_search(nw.begin(), nw.end(), r);
  } else {
    for (VertexId r : nw) hits += std::binary_search(set.begin(), set.end(), r);
  }
  return hits;
}

}  // namespace detail

/// Same value as clique_count_marker using binary search over sorted lists.
inline u128 clique_count_bsearch(const Graph& g, std::span<const VertexId> common) {
  u128 k = 0;
  for (std::size_t i = 0; i + 1 < common.size(); ++i)
    k += detail::count_adjacent(g, common[i], common.subspan(i + 1));
  return k;
}

/// Same value as cycle_count_marker using binary search over sorted lists.
inline u128 cycle_count_bsearch(const Graph& g, std::span<const VertexId> exclusive_u,
                                std::span<const VertexId> exclusive_v) {
  u128 c = 0;
  for (VertexId w : exclusive_u) c += detail::count_adjacent(g, w, exclusive_v);
  return c;
}

/// Constant-time per-edge unrestricted counts from the neighborhood sizes.
///
/// Slot 13 holds star·far and slot 14 triangle·far; the estimator pairs them
/// with the induced patterns they bound.
inline EdgeUnrestricted unrestricted_counts(const EdgeLocal& loc, u128 cliques, u128 cycles, const Graph& g) {
  const u128 t = loc.common.size();
  const u128 su = loc.exclusive_u.size();
  const u128 sv = loc.exclusive_v.size();
  const u128 s = su + sv;
  const u128 r = loc.far;
  EdgeUnrestricted out;
  auto& c = out.c;
  c[slot(3)] = t;
  c[slot(4)] = s;
  c[slot(5)] = r;
  c[slot(7)] = cliques;
  c[slot(8)] = choose2(t);
  c[slot(9)] = checked_mul(t, s);
  c[slot(10)] = cycles;
  c[slot(11)] = checked_add(choose2(su), choose2(sv));
  c[slot(12)] = checked_mul(su, sv);
  c[slot(13)] = checked_mul(s, r);
  c[slot(14)] = checked_mul(t, r);
  c[slot(15)] = choose2(r);
  const u128 du = g.degree(loc.u), dv = g.degree(loc.v);
  c[slot(16)] = static_cast<u128>(g.num_edges()) - (du - 1) - (dv - 1) - 1;
  return out;
}

enum class CountingVariant { automatic, marker, binary_search };

/// Full per-edge pipeline. `marker` may be null for the binary-search variant.
inline EdgeUnrestricted count_edge(const Graph& g, EdgeId e, VertexMarker* marker) {
  if (marker) {
    EdgeLocal loc = classify_neighborhood(g, e, *marker);
    u128 k = clique_count_marker(g, *marker, loc.common);
    u128 cyc = cycle_count_marker(g, *marker, loc.exclusive_u);
    return unrestricted_counts(loc, k, cyc, g);
  }
  EdgeLocal loc = classify_neighborhood(g, e);
  u128 k = clique_count_bsearch(g, loc.common);
  u128 cyc = cycle_count_bsearch(g, loc.exclusive_u, loc.exclusive_v);
  return unrestricted_counts(loc, k, cyc, g);
}

}  // namespace graphlet
