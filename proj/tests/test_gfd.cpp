#include <gtest/gtest.h>

#include "suite.hpp"

using namespace graphlet;

TEST(Gfd, ConnectedExamples) {
  EXPECT_EQ(gfd(exact_counts(gen::complete(4)), GfdVariant::connected), (std::vector<double>{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(gfd(exact_counts(gen::path(4)), GfdVariant::connected), (std::vector<double>{0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(gfd(exact_counts(gen::cycle(4)), GfdVariant::connected), (std::vector<double>{0, 0, 0, 1, 0, 0}));
}

TEST(Gfd, VariantsAndErrors) {
  auto est = exact_counts(gen::erdos_renyi(30, 0.2, 3));
  for (auto v : {GfdVariant::connected, GfdVariant::disconnected, GfdVariant::combined}) {
    auto f = gfd(est, v);
    double s = 0;
    for (double x : f) s += x;
    EXPECT_NEAR(s, 1.0, 1e-12) << to_string(v);
  }
  EXPECT_EQ(gfd(est, GfdVariant::disconnected).size(), 5u);
  EXPECT_EQ(gfd(est, GfdVariant::combined).size(), 11u);
  // Only a triangle: no connected 4-node patterns at all.
  EXPECT_THROW(gfd(exact_counts(gen::complete(3)), GfdVariant::connected), std::invalid_argument);
}

TEST(Ks, Examples) {
  std::vector<double> a{0.2, 0.3, 0.5};
  EXPECT_EQ(ks_statistic(a, a), 0);
  EXPECT_EQ(ks_statistic(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 1);
  EXPECT_NEAR(ks_statistic(std::vector<double>{0.6, 0.4}, std::vector<double>{0.5, 0.5}), 0.1, 1e-15);
  EXPECT_THROW(ks_statistic(std::vector<double>{1}, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST(RelativeError, Examples) {
  RealVector y{};
  y[slot(7)] = 100;
  y[slot(8)] = 5;
  RealVector x = y;
  auto same = relative_error(x, y);
  EXPECT_EQ(same.max(), 0);
  EXPECT_TRUE(same.exact_zero[slot(9)]);
  x[slot(7)] = 110;
  x[slot(9)] = 3;
  auto r = relative_error(x, y);
  EXPECT_NEAR(*r.error[slot(7)], 0.1, 1e-15);
  EXPECT_FALSE(r.error[slot(9)].has_value());
  EXPECT_FALSE(r.exact_zero[slot(9)]);
}
