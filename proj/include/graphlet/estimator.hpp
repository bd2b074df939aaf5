#pragma once

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include "graphlet/common.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/local_counts.hpp"
#include "graphlet/sampling.hpp"

namespace graphlet {

// ---------------------------------------------------------------------------
// Weights and the per-edge linear map

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() : num(0), den(1) {}
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  constexpr void normalize() {
    if (den < 0) num = -num, den = -den;
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend constexpr Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend constexpr Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend constexpr bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Per-pattern multiplicity corrections. W_i is the reciprocal of the number
/// of edges through which an occurrence of G_i is seen, after the subtractive
/// corrections of the estimator chain.
struct WeightVector {
  std::array<Rational, kPatternCount> w;

  static WeightVector standard() {
    return {{Rational(1), Rational(1), Rational(1, 3), Rational(1, 2), Rational(1), Rational(1), Rational(1, 6),
             Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 3), Rational(1), Rational(1, 3), Rational(1, 2),
             Rational(1, 2), Rational(1), Rational(1)}};
  }

  Rational operator[](int pattern_id) const { return w[slot(pattern_id)]; }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// X = constant + (1 / denominator) * A * sum_e q_e c(e), with integer A.
/// Row i of A applied to one edge's unrestricted counts is that edge's scaled
/// contribution to pattern i.
struct EstimatorMap {
  std::array<std::array<i128, kPatternCount>, kPatternCount> a{};
  i128 denominator = 1;
  Rational w6{1}, w17{1};

  static EstimatorMap build(const WeightVector& W) {
    using Row = std::array<Rational, kPatternCount>;
    // Rows are filled explicitly: g++ 11 value-initializes only part of a
    // std::array of this type when written as Row{}.
    auto zero = [] {
      Row r;
      r.fill(Rational(0));
      return r;
    };
    auto unit = [&](int j) {
      Row r = zero();
      r[slot(j)] = Rational(1);
      return r;
    };
    auto scale = [](Rational k, const Row& r) {
      Row out;
      for (std::size_t i = 0; i < kPatternCount; ++i) out[i] = k * r[i];
      return out;
    };
    auto add = [](const Row& x, const Row& y) {
      Row out;
      for (std::size_t i = 0; i < kPatternCount; ++i) out[i] = x[i] + y[i];
      return out;
    };
    auto sub = [&](const Row& x, const Row& y) { return add(x, scale(Rational(-1), y)); };

    std::array<Row, kPatternCount> x;
    x.fill(zero());
    x[slot(3)] = scale(W[3], unit(3));
    x[slot(4)] = scale(W[4], unit(4));
    x[slot(5)] = scale(W[5], unit(5));
    x[slot(6)] = scale(W[6] * Rational(-1), add(add(x[slot(3)], x[slot(4)]), x[slot(5)]));
    x[slot(7)] = scale(W[7], unit(7));
    x[slot(8)] = scale(W[8], sub(unit(8), unit(7)));
    x[slot(9)] = scale(W[9], sub(unit(9), scale(Rational(4), x[slot(8)])));
    x[slot(10)] = scale(W[10], unit(10));
    x[slot(11)] = scale(W[11], sub(unit(11), x[slot(9)]));
    x[slot(12)] = scale(W[12], sub(unit(12), unit(10)));
    // Slot 14 carries triangle*far and slot 13 star*far.
    x[slot(13)] = scale(W[13], sub(unit(14), x[slot(9)]));
    x[slot(14)] = scale(W[14], sub(unit(13), scale(Rational(2), x[slot(12)])));
    {
      Row r = unit(16);
      r = sub(r, scale(Rational(6), x[slot(7)]));
      r = sub(r, scale(Rational(4), x[slot(8)]));
      r = sub(r, scale(Rational(2), x[slot(9)]));
      r = sub(r, scale(Rational(4), x[slot(10)]));
      r = sub(r, scale(Rational(2), x[slot(12)]));
      x[slot(15)] = scale(W[15], r);
    }
    x[slot(16)] = scale(W[16], sub(unit(15), scale(Rational(2), x[slot(15)])));
    {
      Row r = zero();
      for (int i = 7; i <= 16; ++i) r = add(r, x[slot(i)]);
      x[slot(17)] = scale(W[17] * Rational(-1), r);
    }

    EstimatorMap map;
    std::int64_t lcm = 1;
    for (const auto& row : x)
      for (const auto& q : row) lcm = std::lcm(lcm, q.den);
    map.denominator = lcm;
    for (std::size_t i = 0; i < kPatternCount; ++i)
      for (std::size_t j = 0; j < kPatternCount; ++j) map.a[i][j] = static_cast<i128>(x[i][j].num * (lcm / x[i][j].den));
    map.w6 = W[6];
    map.w17 = W[17];
    return map;
  }

  std::array<i128, kPatternCount> apply(const CountVector& c) const {
    std::array<i128, kPatternCount> z{};
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      i128 acc = 0;
      for (std::size_t j = 0; j < kPatternCount; ++j)
        if (a[i][j] != 0 && c[j] != 0) acc = checked_add(acc, checked_mul(a[i][j], to_signed(c[j])));
      z[i] = acc;
    }
    return z;
  }
};

// ---------------------------------------------------------------------------
// Accumulation

struct ClassTotals {
  CountVector sum{};
  std::array<u128, kPatternCount> sum_sq{};  // of scaled per-edge contributions
  std::uint64_t count = 0;

  void merge(const ClassTotals& o) {
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      sum[i] = checked_add(sum[i], o.sum[i]);
      sum_sq[i] = checked_add(sum_sq[i], o.sum_sq[i]);
    }
    count += o.count;
  }
};

struct UnrestrictedAccumulator {
  std::vector<ClassTotals> classes;
  std::vector<double> class_probability;
  Scheme scheme = Scheme::poisson;
  std::size_t population = 0;
  std::uint64_t k_used = 0;
  bool track_variance = true;
  bool approximate_inclusion = false;
  WeightVector weights = WeightVector::standard();

  CountVector total() const {
    CountVector t{};
    for (const auto& c : classes)
      for (std::size_t i = 0; i < kPatternCount; ++i) t[i] = checked_add(t[i], c.sum[i]);
    return t;
  }

  bool operator==(const UnrestrictedAccumulator& o) const {
    if (classes.size() != o.classes.size() || k_used != o.k_used) return false;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c].sum != o.classes[c].sum || classes[c].sum_sq != o.classes[c].sum_sq ||
          classes[c].count != o.classes[c].count)
        return false;
    return true;
  }

  /// Folds another accumulator over the same design into this one.
  void merge(const UnrestrictedAccumulator& o) {
    if (classes.size() < o.classes.size()) classes.resize(o.classes.size());
    for (std::size_t c = 0; c < o.classes.size(); ++c) classes[c].merge(o.classes[c]);
    k_used += o.k_used;
  }
};

struct EngineOptions {
  std::size_t workers = 1;
  CountingVariant variant = CountingVariant::automatic;
  std::size_t marker_budget_bytes = std::size_t{1} << 30;
  std::size_t batch_size = 0;  // 0: max(64, K / (16 * workers))
  bool track_variance = true;
  WeightVector weights = WeightVector::standard();
};

inline bool use_marker(const Graph& g, const EngineOptions& opt) {
  switch (opt.variant) {
    case CountingVariant::marker: return true;
    case CountingVariant::binary_search: return false;
    default: return g.num_vertices() * sizeof(std::uint64_t) * std::max<std::size_t>(1, opt.workers) <= opt.marker_budget_bytes;
  }
}

namespace detail {

inline void add_edge(ClassTotals& t, const EdgeUnrestricted& c, const EstimatorMap* map) {
  for (std::size_t i = 0; i < kPatternCount; ++i) t.sum[i] = checked_add(t.sum[i], c.c[i]);
  ++t.count;
  if (!map) return;
  auto z = map->apply(c.c);
  for (std::size_t i = 0; i < kPatternCount; ++i) {
    u128 mag = static_cast<u128>(z[i] < 0 ? -z[i] : z[i]);
    t.sum_sq[i] = checked_add(t.sum_sq[i], checked_mul(mag, mag));
  }
}

}  // namespace detail

/// Sums per-edge unrestricted counts over a sample. Edges are processed in
/// descending d_u + d_v order in dynamically claimed batches; the result is
/// identical for every worker count.
inline UnrestrictedAccumulator accumulate(const Graph& g, const EdgeSample& sample, const EngineOptions& opt = {}) {
  const std::size_t k = sample.edges.size();
  const std::size_t workers = std::max<std::size_t>(1, opt.workers);
  const std::size_t num_classes = std::max<std::size_t>(1, sample.class_probability.size());

  UnrestrictedAccumulator acc;
  acc.classes.assign(num_classes, {});
  acc.class_probability = sample.class_probability;
  acc.scheme = sample.scheme;
  acc.population = sample.population;
  acc.k_used = k;
  acc.track_variance = opt.track_variance;
  acc.approximate_inclusion = sample.approximate_inclusion;
  acc.weights = opt.weights;
  if (k == 0) return acc;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> hardness(k);
  for (std::size_t i = 0; i < k; ++i) hardness[i] = edge_hardness(g, sample.edges[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hardness[a] > hardness[b]; });

  const std::size_t batch = opt.batch_size ? opt.batch_size : std::max<std::size_t>(64, k / (16 * workers));
  const bool marker_variant = use_marker(g, opt);
  const EstimatorMap map = EstimatorMap::build(opt.weights);
  const EstimatorMap* map_ptr = opt.track_variance ? &map : nullptr;

  std::atomic<std::size_t> next{0};
  std::vector<std::vector<ClassTotals>> partial(workers, std::vector<ClassTotals>(num_classes));
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](std::size_t id) {
    try {
      VertexMarker marker(marker_variant ? g.num_vertices() : 0);
      VertexMarker* mp = marker_variant ? &marker : nullptr;
      auto& local = partial[id];
      for (;;) {
        std::size_t begin = next.fetch_add(batch, std::memory_order_relaxed);
        if (begin >= k) break;
        std::size_t end = std::min(k, begin + batch);
        for (std::size_t i = begin; i < end; ++i) {
          std::size_t idx = order[i];
          std::uint32_t cls = sample.edge_class.empty() ? 0 : sample.edge_class[idx];
          detail::add_edge(local[cls], count_edge(g, sample.edges[idx], mp), map_ptr);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(k);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& local : partial)
    for (std::size_t c = 0; c < num_classes; ++c) acc.classes[c].merge(local[c]);
  return acc;
}

/// Exhaustive accumulation over a plain edge list (every edge weight one).
inline UnrestrictedAccumulator accumulate(const Graph& g, std::span<const EdgeId> edges, const EngineOptions& opt = {}) {
  EdgeSample s;
  s.edges.assign(edges.begin(), edges.end());
  s.edge_class.assign(edges.size(), 0);
  s.class_probability = {1.0};
  s.population = g.num_edges();
  s.scheme = Scheme::poisson;
  return accumulate(g, s, opt);
}

// ---------------------------------------------------------------------------
// Estimation

struct GraphletEstimate {
  RealVector x{};
  RealVector raw{};
  RealVector var{};
  RealVector lb{};
  RealVector ub{};
  std::array<bool, kPatternCount> clamped{};
  double alpha = 0.05;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t k_used = 0;
  bool approximate_inclusion = false;
  std::optional<std::array<i128, kPatternCount>> exact;

  double operator[](int pattern_id) const { return x[slot(pattern_id)]; }
  bool any_clamped() const { return std::any_of(clamped.begin(), clamped.end(), [](bool b) { return b; }); }
};

/// Two-sided standard normal critical value z_{alpha/2}.
inline double normal_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  boost::math::normal_distribution<double> standard;
  return boost::math::quantile(boost::math::complement(standard, alpha / 2.0));
}

/// lb = max(0, X - z * sqrt(V)), ub = X + z * sqrt(V).
inline void confidence_bounds(GraphletEstimate& est, double alpha) {
  const double z = normal_critical_value(alpha);
  est.alpha = alpha;
  for (std::size_t i = 0; i < kPatternCount; ++i) {
    double half = z * std::sqrt(std::max(0.0, est.var[i]));
    est.lb[i] = std::max(0.0, est.x[i] - half);
    est.ub[i] = est.x[i] + half;
    if (est.lb[i] > est.x[i]) est.lb[i] = est.x[i];
  }
}

namespace detail {

inline long double to_ld(i128 v) { return static_cast<long double>(v); }
inline long double to_ld(u128 v) { return static_cast<long double>(v); }

}  // namespace detail

/// Applies the estimator chain to accumulated counts. Negative estimates are
/// clamped to zero and flagged; the two complement patterns (3-node and
/// 4-node independent sets) absorb the remainder so both size classes sum to
/// their binomial totals.
inline GraphletEstimate estimate_counts(const UnrestrictedAccumulator& acc, const Graph& g, double alpha = 0.05) {
  const EstimatorMap map = EstimatorMap::build(acc.weights);
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  GraphletEstimate est;
  est.n = n;
  est.m = m;
  est.k_used = acc.k_used;
  est.approximate_inclusion = acc.approximate_inclusion;

  for (std::size_t c = 0; c < acc.classes.size(); ++c) {
    const auto& t = acc.classes[c];
    if (t.count == 0) continue;
    double p = c < acc.class_probability.size() ? acc.class_probability[c] : 1.0;
    if (!(p > 0.0)) throw std::invalid_argument("sampled edges with zero inclusion probability");
  }

  const long double denom = detail::to_ld(map.denominator);
  const long double c3 = detail::to_ld(binomial(n, 3));
  const long double c4 = detail::to_ld(binomial(n, 4));
  const long double draws = static_cast<long double>(acc.k_used);

  // Inverse-probability factor per class.
  auto class_factor = [&](std::size_t c) -> long double {
    long double p = acc.class_probability.at(c);
    if (acc.scheme == Scheme::with_replacement) return 1.0L / (draws * p);
    return 1.0L / p;
  };

  std::array<long double, kPatternCount> linear{};
  for (std::size_t c = 0; c < acc.classes.size(); ++c) {
    if (acc.classes[c].count == 0) continue;
    auto z = map.apply(acc.classes[c].sum);
    long double f = class_factor(c);
    for (std::size_t i = 0; i < kPatternCount; ++i) linear[i] += f * detail::to_ld(z[i]);
  }

  std::array<long double, kPatternCount> raw{};
  for (std::size_t i = 0; i < kPatternCount; ++i) raw[i] = linear[i] / denom;
  raw[slot(1)] = static_cast<long double>(m);
  raw[slot(2)] = detail::to_ld(choose2(n)) - static_cast<long double>(m);
  raw[slot(6)] += map.w6.value() * c3;
  raw[slot(17)] += map.w17.value() * c4;
  for (std::size_t i = 0; i < kPatternCount; ++i) est.raw[i] = static_cast<double>(raw[i]);

  // Clamp the directly estimated patterns, then close the complements.
  auto clamp = [&](int id) {
    long double v = raw[slot(id)];
    if (v < 0) {
      est.clamped[slot(id)] = true;
      v = 0;
    }
    est.x[slot(id)] = static_cast<double>(v);
  };
  for (int id : {1, 2, 3, 4, 5}) clamp(id);
  for (int id = 7; id <= 16; ++id) clamp(id);
  {
    long double s = 0;
    for (int id : {3, 4, 5}) s += est.x[slot(id)];
    long double v = map.w6.value() * c3 - s;
    est.clamped[slot(6)] = v < 0;
    est.x[slot(6)] = static_cast<double>(std::max(0.0L, v));
  }
  {
    long double s = 0;
    for (int id = 7; id <= 16; ++id) s += est.x[slot(id)];
    long double v = map.w17.value() * c4 - s;
    est.clamped[slot(17)] = v < 0;
    est.x[slot(17)] = static_cast<double>(std::max(0.0L, v));
  }

  // Exact integers when every edge was taken with certainty.
  bool exhaustive = acc.scheme != Scheme::with_replacement && acc.k_used == m;
  for (double p : acc.class_probability) exhaustive = exhaustive && p == 1.0;
  if (exhaustive && map.w6 == Rational(1) && map.w17 == Rational(1)) {
    std::array<i128, kPatternCount> exact{};
    auto z = map.apply(acc.total());
    bool integral = true;
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      integral = integral && z[i] % map.denominator == 0;
      exact[i] = z[i] / map.denominator;
    }
    exact[slot(1)] = static_cast<i128>(m);
    exact[slot(2)] = to_signed(choose2(n)) - static_cast<i128>(m);
    exact[slot(6)] = checked_add(exact[slot(6)], to_signed(binomial(n, 3)));
    exact[slot(17)] = checked_add(exact[slot(17)], to_signed(binomial(n, 4)));
    if (integral) {
      est.exact = exact;
      for (std::size_t i = 0; i < kPatternCount; ++i) {
        est.x[i] = static_cast<double>(exact[i]);
        est.raw[i] = est.x[i];
        est.clamped[i] = false;
      }
    }
  }

  // Variance.
  if (acc.track_variance && !exhaustive) {
    const long double d2 = denom * denom;
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      if (i == slot(1) || i == slot(2)) continue;
      long double v = 0;
      switch (acc.scheme) {
        case Scheme::poisson:
        case Scheme::weighted_without_replacement:
          for (std::size_t c = 0; c < acc.classes.size(); ++c) {
            long double p = acc.class_probability[c];
            v += (1.0L - p) / (p * p) * detail::to_ld(acc.classes[c].sum_sq[i]);
          }
          break;
        case Scheme::simple_without_replacement: {
          const long double kk = draws;
          const long double mm = static_cast<long double>(acc.population);
          if (acc.k_used >= acc.population) {
            v = 0;
          } else if (acc.k_used < 2) {
            v = std::numeric_limits<long double>::infinity();
          } else {
            long double s = detail::to_ld(map.apply(acc.classes[0].sum)[i]);
            long double ss = detail::to_ld(acc.classes[0].sum_sq[i]);
            long double s2 = (ss - s * s / kk) / (kk - 1);
            v = mm * mm * (1 - kk / mm) / kk * std::max(0.0L, s2);
          }
          break;
        }
        case Scheme::with_replacement: {
          const long double kk = draws;
          if (acc.k_used < 2) {
            v = std::numeric_limits<long double>::infinity();
            break;
          }
          long double s = 0, ss = 0;
          for (std::size_t c = 0; c < acc.classes.size(); ++c) {
            if (acc.classes[c].count == 0) continue;
            long double inv = 1.0L / acc.class_probability[c];
            s += inv * detail::to_ld(map.apply(acc.classes[c].sum)[i]);
            ss += inv * inv * detail::to_ld(acc.classes[c].sum_sq[i]);
          }
          long double s2 = (ss - s * s / kk) / (kk - 1);
          v = std::max(0.0L, s2) / kk;
          break;
        }
      }
      est.var[i] = static_cast<double>(v / d2);
    }
  }
  confidence_bounds(est, alpha);
  return est;
}

/// Exact counts: every edge processed once, zero variance.
inline GraphletEstimate exact_counts(const Graph& g, EngineOptions opt = {}) {
  opt.track_variance = false;
  auto sample = sample_edges(g, SampleDesign::exhaustive());
  auto acc = accumulate(g, sample, opt);
  return estimate_counts(acc, g);
}

/// Sample and estimate in one call.
inline GraphletEstimate estimate(const Graph& g, const SampleDesign& design, const EngineOptions& opt = {},
                                 double alpha = 0.05) {
  auto sample = sample_edges(g, design);
  auto acc = accumulate(g, sample, opt);
  return estimate_counts(acc, g, alpha);
}

}  // namespace graphlet
