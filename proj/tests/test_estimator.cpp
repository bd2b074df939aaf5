#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "suite.hpp"

using namespace graphlet;

namespace {

void expect_counts(const GraphletEstimate& est, std::initializer_list<std::pair<int, double>> nonzero, int from = 3) {
  RealVector want{};
  for (auto [id, v] : nonzero) want[slot(id)] = v;
  for (int id = from; id <= 17; ++id) EXPECT_EQ(est[id], want[slot(id)]) << "G" << id;
}

}  // namespace

TEST(Accumulate, K4AndTriangle) {
  auto k4 = gen::complete(4);
  std::vector<EdgeId> all(6);
  std::iota(all.begin(), all.end(), EdgeId{0});
  auto c = accumulate(k4, all).total();
  EXPECT_EQ(c[slot(3)], 12u);
  EXPECT_EQ(c[slot(7)], 6u);
  EXPECT_EQ(c[slot(8)], 6u);
  EXPECT_EQ(c[slot(16)], 6u);

  auto ti = gen::triangle_plus_isolated();
  std::vector<EdgeId> three{0, 1, 2};
  auto t = accumulate(ti, three).total();
  EXPECT_EQ(t[slot(3)], 3u);
  EXPECT_EQ(t[slot(5)], 3u);
  EXPECT_EQ(t[slot(14)], 3u);
}

TEST(Accumulate, IdenticalAcrossWorkersAndVariants) {
  auto g = gen::power_law(20000, 50000, 2.4, 11);
  auto sample = sample_edges(g, SampleDesign::exhaustive());
  EngineOptions base;
  auto ref = accumulate(g, sample, base);
  for (std::size_t w : {2, 4, 8}) {
    EngineOptions opt;
    opt.workers = w;
    opt.batch_size = 97;
    EXPECT_TRUE(accumulate(g, sample, opt) == ref) << w << " workers";
  }
  EngineOptions bs;
  bs.variant = CountingVariant::binary_search;
  bs.workers = 3;
  EXPECT_TRUE(accumulate(g, sample, bs) == ref);
  EngineOptions tiny;
  tiny.marker_budget_bytes = 1;  // forces the binary-search path
  EXPECT_FALSE(use_marker(g, tiny));
  EXPECT_TRUE(accumulate(g, sample, tiny) == ref);
}

TEST(Estimate, FullSamplingExamples) {
  auto ti = exact_counts(gen::triangle_plus_isolated());
  expect_counts(ti, {{1, 3}, {2, 3}, {3, 1}, {5, 3}, {13, 1}}, 1);

  expect_counts(exact_counts(gen::path(4)), {{4, 2}, {5, 2}, {12, 1}});
  expect_counts(exact_counts(gen::complete(4)), {{3, 4}, {7, 1}});
  expect_counts(exact_counts(gen::star(3)), {{4, 3}, {6, 1}, {11, 1}});
}

TEST(Estimate, ExactMatchesOracle) {
  auto g = gen::erdos_renyi(30, 0.2, 7);
  auto est = exact_counts(g);
  auto y = oracle::brute_force_counts(g);
  ASSERT_TRUE(est.exact);
  for (std::size_t i = 0; i < kPatternCount; ++i) EXPECT_EQ(est.exact->at(i), to_signed(y[i]));
}

TEST(Estimate, RelabelInvariant) {
  auto g = gen::erdos_renyi(50, 0.15, 21);
  std::vector<VertexId> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(3);
  std::shuffle(perm.begin(), perm.end(), rng);
  EXPECT_EQ(exact_counts(g).exact, exact_counts(gen::relabel(g, perm)).exact);
}

TEST(Estimate, FullSamplingHasZeroWidthBounds) {
  auto g = gen::erdos_renyi(40, 0.2, 1);
  auto est = estimate(g, SampleDesign::bernoulli(1.0, 3));
  for (std::size_t i = 0; i < kPatternCount; ++i) {
    EXPECT_EQ(est.var[i], 0);
    EXPECT_EQ(est.lb[i], est.x[i]);
    EXPECT_EQ(est.ub[i], est.x[i]);
  }
}

TEST(Estimate, AbsentPatternHasZeroBounds) {
  // A tree has no triangles, so every triangle-bearing count is zero.
  auto g = gen::path(30);
  auto est = estimate(g, SampleDesign::bernoulli(0.5, 8));
  for (int id : {3, 7, 10}) {
    EXPECT_EQ(est[id], 0);
    EXPECT_EQ(est.lb[slot(id)], 0);
    EXPECT_EQ(est.ub[slot(id)], 0);
  }
}

TEST(Estimate, BoundsBracketEstimate) {
  auto g = gen::erdos_renyi(80, 0.1, 5);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto est = estimate(g, SampleDesign::bernoulli(0.3, s));
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      EXPECT_LE(est.lb[i], est.x[i]);
      EXPECT_LE(est.x[i], est.ub[i]);
      EXPECT_GE(est.x[i], 0);
    }
  }
  EXPECT_THROW(normal_critical_value(0.0), std::invalid_argument);
  EXPECT_THROW(normal_critical_value(1.0), std::invalid_argument);
  EXPECT_NEAR(normal_critical_value(0.05), 1.959963984540054, 1e-12);
}

TEST(Estimate, ComplementIdentities) {
  auto g = gen::erdos_renyi(70, 0.1, 6);
  const double c3 = static_cast<double>(binomial(70, 3)), c4 = static_cast<double>(binomial(70, 4));
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto est = estimate(g, SampleDesign::bernoulli(0.2, s));
    double s3 = 0, s4 = 0;
    for (int id = 3; id <= 6; ++id) s3 += est[id];
    for (int id = 7; id <= 17; ++id) s4 += est[id];
    EXPECT_NEAR(s3, c3, c3 * 1e-12);
    EXPECT_NEAR(s4, c4, c4 * 1e-12);
  }
}

TEST(Estimate, DeterministicAcrossWorkers) {
  auto g = gen::erdos_renyi(300, 0.05, 2);
  auto design = SampleDesign::bernoulli(0.4, 19);
  auto ref = estimate(g, design);
  for (std::size_t w : {2, 4}) {
    EngineOptions opt;
    opt.workers = w;
    auto est = estimate(g, design, opt);
    EXPECT_EQ(est.x, ref.x);
    EXPECT_EQ(est.var, ref.var);
  }
}

TEST(Estimate, VarianceShrinksWithProbability) {
  auto g = gen::erdos_renyi(60, 0.1, 42);
  std::vector<RealVector> spread;
  for (double p : {0.1, 0.3, 0.6}) {
    RealVector sum{}, sum_sq{};
    const int runs = 300;
    for (int r = 0; r < runs; ++r) {
      auto est = estimate(g, SampleDesign::bernoulli(p, 100 + static_cast<std::uint64_t>(r)));
      for (std::size_t i = 0; i < kPatternCount; ++i) {
        sum[i] += est.x[i];
        sum_sq[i] += est.x[i] * est.x[i];
      }
    }
    RealVector var{};
    for (std::size_t i = 0; i < kPatternCount; ++i) var[i] = sum_sq[i] / runs - (sum[i] / runs) * (sum[i] / runs);
    spread.push_back(var);
  }
  for (int id : {3, 4, 9, 11, 12, 14}) {
    EXPECT_GE(spread[0][slot(id)], spread[1][slot(id)]) << "G" << id;
    EXPECT_GE(spread[1][slot(id)], spread[2][slot(id)]) << "G" << id;
  }
}

// Fixed-size designs: the mean over many seeds lands near the truth.
TEST(Estimate, OtherSchemesAreUnbiased) {
  auto g = gen::erdos_renyi(60, 0.1, 42);
  auto y = exact_counts(g).x;
  const std::size_t k = g.num_edges() / 3;
  for (bool replacement : {false, true}) {
    RealVector sum{}, sum_sq{};
    const int runs = 600;
    for (int r = 0; r < runs; ++r) {
      auto est = estimate(g, SampleDesign::fixed(k, static_cast<std::uint64_t>(r), replacement));
      for (std::size_t i = 0; i < kPatternCount; ++i) {
        sum[i] += est.raw[i];
        sum_sq[i] += est.raw[i] * est.raw[i];
      }
    }
    for (int id : {3, 4, 5, 8, 9, 11, 12, 13, 14, 15, 16}) {
      std::size_t i = slot(id);
      double mean = sum[i] / runs;
      double se = std::sqrt(std::max(0.0, sum_sq[i] / runs - mean * mean) / runs);
      EXPECT_LE(std::fabs(mean - y[i]), 4 * se + 1e-9) << "G" << id << (replacement ? " with" : " without") << " replacement";
    }
  }
}

TEST(Estimate, KcoreBernoulliIsUnbiased) {
  auto g = gen::power_law(400, 2000, 2.5, 3);
  auto y = exact_counts(g).x;
  RealVector sum{}, sum_sq{};
  const int runs = 400;
  for (int r = 0; r < runs; ++r) {
    auto est = estimate(g, SampleDesign::bernoulli(0.3, static_cast<std::uint64_t>(r), Weighting::kcore));
    for (std::size_t i = 0; i < kPatternCount; ++i) {
      sum[i] += est.raw[i];
      sum_sq[i] += est.raw[i] * est.raw[i];
    }
  }
  for (int id : {3, 4, 9, 11, 12}) {
    std::size_t i = slot(id);
    double mean = sum[i] / runs;
    double se = std::sqrt(std::max(0.0, sum_sq[i] / runs - mean * mean) / runs);
    EXPECT_LE(std::fabs(mean - y[i]), 4 * se + 1e-9) << "G" << id;
  }
}

TEST(Estimate, OverflowIsReported) {
  u128 big = ~u128{0} / 2;
  EXPECT_THROW(checked_add(big, big + 2), OverflowError);
  EXPECT_THROW(to_signed(~u128{0}), OverflowError);
}

TEST(Weights, StandardTableIsIntegralOnExactRuns) {
  auto map = EstimatorMap::build(WeightVector::standard());
  EXPECT_EQ(map.denominator, 12);
  EXPECT_EQ(map.w6, Rational(1));
  EXPECT_EQ(map.w17, Rational(1));
}
