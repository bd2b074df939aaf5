#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/estimator.hpp"
#include "graphlet/gfd.hpp"
#include "graphlet/sampling.hpp"

namespace graphlet {

enum class LossKind { max_relative, ks, l1 };

inline std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::max_relative: return "max-relative-error";
    case LossKind::ks: return "ks";
    default: return "l1";
  }
}

struct AdaptiveConfig {
  double beta = 0.01;
  std::size_t t_max = 100;
  double epsilon = 1e-6;
  std::optional<double> phi0;
  LossKind loss = LossKind::max_relative;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("error bound must lie in [0, 1]");
    if (t_max < 1) throw std::invalid_argument("iteration cap must be at least 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (phi0 && !(*phi0 > 0.0 && *phi0 <= 1.0)) throw std::invalid_argument("initial fraction must lie in (0, 1]");
  }
};

struct AdaptiveIteration {
  std::size_t t = 0;
  std::size_t k_t = 0;
  std::size_t cumulative = 0;
  double phi = 0;
  double delta = 1;
  RealVector x{};
};

struct AdaptiveTrace {
  std::vector<AdaptiveIteration> iterations;
};

/// Distance between successive estimates. Max relative error skips patterns
/// whose previous value is zero; KS and L1 compare the combined GFDs.
inline double loss(const RealVector& now, const RealVector& prev, LossKind kind) {
  if (kind == LossKind::max_relative) {
    double best = 0;
    for (int id = 7; id <= 17; ++id) {
      double p = prev[slot(id)];
      if (p == 0) continue;
      best = std::max(best, std::fabs(now[slot(id)] - p) / p);
    }
    return best;
  }
  std::vector<double> a, b;
  try {
    a = gfd(now, GfdVariant::combined);
    b = gfd(prev, GfdVariant::combined);
  } catch (const std::invalid_argument&) {
    return 1.0;
  }
  if (kind == LossKind::ks) return ks_statistic(a, b);
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

struct AdaptiveResult {
  GraphletEstimate estimate;
  AdaptiveTrace trace;
  double delta = 1;
};

/// Grows a uniform sample without replacement by a halving fraction of the
/// remaining edges until successive estimates agree within beta.
inline AdaptiveResult adaptive_estimate(const Graph& g, const AdaptiveConfig& cfg, const EngineOptions& opt = {},
                                        double alpha = 0.05) {
  cfg.validate();
  const std::size_t m = g.num_edges();
  if (m == 0) throw std::invalid_argument("adaptive estimation needs at least one edge");

  double delta = 1.0;
  double phi = cfg.phi0 ? *cfg.phi0 : (delta + cfg.epsilon) / std::sqrt(static_cast<double>(m));
  phi = std::min(1.0, phi);

  // One permutation drawn lazily; its prefix is the cumulative sample.
  Rng rng(cfg.seed);
  std::vector<EdgeId> perm(m);
  std::iota(perm.begin(), perm.end(), EdgeId{0});
  std::size_t used = 0;

  UnrestrictedAccumulator total;
  AdaptiveResult out;
  std::optional<RealVector> prev;

  for (std::size_t t = 1;; ++t) {
    std::size_t remaining = m - used;
    auto k_t = static_cast<std::size_t>(std::ceil(phi * static_cast<double>(remaining)));
    k_t = std::clamp<std::size_t>(k_t, 1, remaining);
    for (std::size_t i = used; i < used + k_t; ++i) {
      std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, m - i));
      std::swap(perm[i], perm[j]);
    }
    auto batch = accumulate(g, std::span<const EdgeId>(perm.data() + used, k_t), opt);
    used += k_t;
    if (t == 1)
      total = batch;
    else
      total.merge(batch);
    total.scheme = Scheme::simple_without_replacement;
    total.population = m;
    total.class_probability = {static_cast<double>(used) / static_cast<double>(m)};
    if (used == m) total.class_probability = {1.0};

    out.estimate = estimate_counts(total, g, alpha);
    delta = prev ? loss(out.estimate.x, *prev, cfg.loss) : 1.0;
    out.trace.iterations.push_back({t, k_t, used, phi, delta, out.estimate.x});
    prev = out.estimate.x;
    phi /= 2;
    if (delta - cfg.epsilon <= cfg.beta || t >= cfg.t_max || used == m) break;
  }
  out.delta = delta;
  return out;
}

}  // namespace graphlet
