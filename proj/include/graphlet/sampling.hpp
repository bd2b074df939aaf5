#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"

namespace graphlet {

// ---------------------------------------------------------------------------
// Random numbers. The standard distributions are implementation-defined, so
// draws are derived from the raw engine output to keep seeds portable.

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

/// splitmix64 finalizer; used to derive independent per-item streams.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------

enum class SampleMode { probability, fixed_size };
enum class Weighting { uniform, kcore, custom };

struct SampleDesign {
  SampleMode mode = SampleMode::probability;
  double probability = 1.0;
  std::size_t size = 0;
  Weighting weighting = Weighting::uniform;
  std::vector<double> custom_weights;
  bool replacement = false;
  std::uint64_t seed = 0;

  static SampleDesign bernoulli(double p, std::uint64_t seed = 0, Weighting w = Weighting::uniform) {
    SampleDesign d;
    d.probability = p;
    d.seed = seed;
    d.weighting = w;
    return d;
  }

  static SampleDesign fixed(std::size_t k, std::uint64_t seed = 0, bool replacement = false,
                            Weighting w = Weighting::uniform) {
    SampleDesign d;
    d.mode = SampleMode::fixed_size;
    d.size = k;
    d.seed = seed;
    d.replacement = replacement;
    d.weighting = w;
    return d;
  }

  static SampleDesign exhaustive() { return bernoulli(1.0); }

  bool is_exhaustive(std::size_t m) const {
    if (mode == SampleMode::probability) return probability >= 1.0 && weighting == Weighting::uniform;
    return !replacement && size == m && weighting == Weighting::uniform;
  }

  void validate(std::size_t m) const {
    if (mode == SampleMode::probability) {
      if (!(probability > 0.0 && probability <= 1.0)) throw std::invalid_argument("sampling probability must lie in (0, 1]");
    } else {
      if (size == 0) throw std::invalid_argument("sample size must be positive");
      if (!replacement && size > m)
        throw std::invalid_argument("sample size " + std::to_string(size) + " exceeds edge count " + std::to_string(m) +
                                    " without replacement");
    }
    if (weighting == Weighting::custom) {
      if (custom_weights.size() != m) throw std::invalid_argument("custom weights must have one entry per edge");
      double sum = 0;
      for (double w : custom_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("custom weights must be finite and nonnegative");
        sum += w;
      }
      if (!(sum > 0)) throw std::invalid_argument("custom weights must have a positive sum");
    }
  }
};

inline std::string to_string(Weighting w) {
  switch (w) {
    case Weighting::uniform: return "uniform";
    case Weighting::kcore: return "kcore";
    default: return "custom";
  }
}

/// How inclusion probabilities are interpreted by the estimator.
enum class Scheme {
  poisson,                       // independent inclusion with probability pi_e
  simple_without_replacement,    // K distinct edges, uniform
  with_replacement,              // K independent draws with probability P_e
  weighted_without_replacement,  // successive weighted draws; pi_e approximated
};

/// A drawn sample. Edges sharing a weight share a class; `class_probability`
/// holds pi_c (inclusion) or P_c (per-draw), depending on the scheme.
struct EdgeSample {
  std::vector<EdgeId> edges;
  std::vector<std::uint32_t> edge_class;
  std::vector<double> class_probability;
  Scheme scheme = Scheme::poisson;
  std::size_t population = 0;
  bool approximate_inclusion = false;
};

namespace detail {

struct EdgeWeights {
  std::vector<std::uint32_t> cls;  // per edge
  std::vector<double> weight;      // per class
  double total = 0;
};

inline EdgeWeights edge_weights(const Graph& g, const SampleDesign& d) {
  const std::size_t m = g.num_edges();
  EdgeWeights w;
  w.cls.assign(m, 0);
  if (d.weighting == Weighting::uniform) {
    w.weight = {1.0};
    w.total = static_cast<double>(m);
    return w;
  }
  std::vector<double> raw(m);
  if (d.weighting == Weighting::kcore) {
    auto cores = kcore_numbers(g);
    for (std::size_t e = 0; e < m; ++e) raw[e] = cores.edge_core[e];
  } else {
    raw = d.custom_weights;
  }
  std::map<double, std::uint32_t> ids;
  for (double x : raw) ids.emplace(x, 0);
  for (auto& [x, id] : ids) {
    id = static_cast<std::uint32_t>(w.weight.size());
    w.weight.push_back(x);
  }
  for (std::size_t e = 0; e < m; ++e) {
    w.cls[e] = ids.at(raw[e]);
    w.total += raw[e];
  }
  return w;
}

}  // namespace detail

/// Draws edge neighborhoods according to the design. Deterministic for a
/// fixed seed. Probability mode includes each edge independently (weighted
/// designs use pi_e = min(1, p * m * w_e / sum w)); fixed size draws K edges,
/// distinct unless `replacement` is set.
inline EdgeSample sample_edges(const Graph& g, const SampleDesign& d) {
  const std::size_t m = g.num_edges();
  d.validate(m);
  auto w = detail::edge_weights(g, d);
  Rng rng(d.seed);
  EdgeSample s;
  s.population = m;

  if (d.mode == SampleMode::probability) {
    s.scheme = Scheme::poisson;
    const double scale = d.probability * static_cast<double>(m) / w.total;
    for (double x : w.weight) s.class_probability.push_back(std::min(1.0, scale * x));
    // One uniform per edge regardless of p keeps samples nested in p.
    for (EdgeId e = 0; e < m; ++e) {
      double u = uniform01(rng);
      if (u < s.class_probability[w.cls[e]]) {
        s.edges.push_back(e);
        s.edge_class.push_back(w.cls[e]);
      }
    }
    return s;
  }

  const std::size_t k = d.size;
  if (d.replacement) {
    s.scheme = Scheme::with_replacement;
    for (double x : w.weight) s.class_probability.push_back(x / w.total);
    std::vector<double> cumulative(m);
    double acc = 0;
    for (EdgeId e = 0; e < m; ++e) cumulative[e] = (acc += w.weight[w.cls[e]]);
    for (std::size_t i = 0; i < k; ++i) {
      double target = uniform01(rng) * acc;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
      EdgeId e = static_cast<EdgeId>(it - cumulative.begin());
      if (e == m) --e;
      while (w.weight[w.cls[e]] == 0.0) --e;  // rounding put target past the last positive slot
      s.edges.push_back(e);
      s.edge_class.push_back(w.cls[e]);
    }
    return s;
  }

  if (d.weighting == Weighting::uniform) {
    s.scheme = Scheme::simple_without_replacement;
    s.class_probability = {static_cast<double>(k) / static_cast<double>(m)};
    // Partial Fisher-Yates: the first K positions do not depend on K.
    std::vector<EdgeId> perm(m);
    std::iota(perm.begin(), perm.end(), EdgeId{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, m - i));
      std::swap(perm[i], perm[j]);
      s.edges.push_back(perm[i]);
      s.edge_class.push_back(0);
    }
    return s;
  }

  // Weighted without replacement: exponential keys log(u)/w, keep the K largest.
  s.scheme = Scheme::weighted_without_replacement;
  s.approximate_inclusion = true;
  for (double x : w.weight) s.class_probability.push_back(std::min(1.0, static_cast<double>(k) * x / w.total));
  std::size_t positive = 0;
  std::vector<std::pair<double, EdgeId>> keys(m);
  for (EdgeId e = 0; e < m; ++e) {
    double we = w.weight[w.cls[e]];
    double u = uniform01(rng);
    positive += we > 0;
    keys[e] = {we > 0 ? std::log1p(-u) / we : -std::numeric_limits<double>::infinity(), e};
  }
  if (k > positive) throw std::invalid_argument("sample size exceeds number of edges with positive weight");
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  for (std::size_t i = 0; i < k; ++i) {
    s.edges.push_back(keys[i].second);
    s.edge_class.push_back(w.cls[keys[i].second]);
  }
  return s;
}

}  // namespace graphlet
