#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "suite.hpp"

using namespace graphlet;

namespace {

int classify(const Graph& g, std::array<VertexId, 4> vs) { return oracle::classify_induced(g, vs); }

}  // namespace

TEST(Classify, SpecExamples) {
  EXPECT_EQ(classify(gen::complete(4), {0, 1, 2, 3}), 7);
  EXPECT_EQ(classify(gen::path(4), {0, 1, 2, 3}), 12);
  EXPECT_EQ(classify(gen::triangle_plus_isolated(), {0, 1, 2, 3}), 13);
}

TEST(Classify, EveryFourVertexGraph) {
  // All 64 graphs on 4 labeled vertices; the per-class tallies are the
  // number of labeled copies of each shape.
  std::array<int, kPatternCount> tally{};
  std::array<std::pair<VertexId, VertexId>, 6> all{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int b = 0; b < 6; ++b)
      if (mask >> b & 1) pairs.push_back(all[b]);
    ++tally[slot(classify(Graph::from_edges(4, pairs), {0, 1, 2, 3}))];
  }
  std::array<int, kPatternCount> expected{0, 0, 0, 0, 0, 0, 1, 6, 12, 3, 4, 12, 4, 12, 3, 6, 1};
  EXPECT_EQ(tally, expected);
}

TEST(Classify, PermutationInvariant) {
  auto g = gen::erdos_renyi(8, 0.5, 3);
  for (VertexId a = 0; a < 8; ++a)
    for (VertexId b = a + 1; b < 8; ++b)
      for (VertexId c = b + 1; c < 8; ++c)
        for (VertexId d = c + 1; d < 8; ++d) {
          std::array<VertexId, 4> vs{a, b, c, d};
          int id = classify(g, vs);
          while (std::next_permutation(vs.begin(), vs.end())) ASSERT_EQ(classify(g, vs), id);
        }
}

TEST(Classify, RejectsBadSets) {
  auto g = gen::complete(4);
  std::array<VertexId, 2> two{0, 1};
  std::array<VertexId, 3> dup{0, 1, 1};
  EXPECT_THROW(oracle::classify_induced(g, two), std::invalid_argument);
  EXPECT_THROW(oracle::classify_induced(g, dup), std::invalid_argument);
}

TEST(BruteForce, SpecExamples) {
  auto k4 = oracle::brute_force_counts(gen::complete(4));
  EXPECT_EQ(k4[slot(3)], 4u);
  EXPECT_EQ(k4[slot(7)], 1u);
  for (int id : {4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17}) EXPECT_EQ(k4[slot(id)], 0u) << id;

  auto s3 = oracle::brute_force_counts(gen::star(3));
  EXPECT_EQ(s3[slot(4)], 3u);
  EXPECT_EQ(s3[slot(6)], 1u);
  EXPECT_EQ(s3[slot(11)], 1u);

  std::vector<std::pair<VertexId, VertexId>> two{{0, 1}, {2, 3}};
  auto de = oracle::brute_force_counts(Graph::from_edges(4, two));
  EXPECT_EQ(de[slot(5)], 4u);
  EXPECT_EQ(de[slot(15)], 1u);
}

TEST(BruteForce, SizeClassesSumToBinomials) {
  for (const auto& [name, g] : suite::random_suite()) {
    auto y = oracle::brute_force_counts(g);
    u128 s3 = 0, s4 = 0;
    for (int id = 3; id <= 6; ++id) s3 += y[slot(id)];
    for (int id = 7; id <= 17; ++id) s4 += y[slot(id)];
    EXPECT_EQ(s3, binomial(g.num_vertices(), 3)) << name;
    EXPECT_EQ(s4, binomial(g.num_vertices(), 4)) << name;
  }
}

TEST(BruteForce, CapacityGuard) {
  auto g = gen::path(70);
  EXPECT_THROW(oracle::brute_force_counts(g), CapacityError);
  EXPECT_NO_THROW(oracle::brute_force_counts(g, 80));
  EXPECT_THROW(oracle::brute_force_edge_counts(g, 0), CapacityError);
}

TEST(BruteForceEdge, SpecExamples) {
  auto k4 = oracle::brute_force_edge_counts(gen::complete(4), 0);
  EXPECT_EQ(k4[slot(3)], 2u);
  EXPECT_EQ(k4[slot(7)], 1u);
  auto c4 = gen::cycle(4);
  auto y = oracle::brute_force_edge_counts(c4, *c4.find_edge(0, 1));
  EXPECT_EQ(y[slot(4)], 2u);
  EXPECT_EQ(y[slot(10)], 1u);
  auto ti = oracle::brute_force_edge_counts(gen::triangle_plus_isolated(), 0);
  EXPECT_EQ(ti[slot(3)], 1u);
  EXPECT_EQ(ti[slot(5)], 1u);
  EXPECT_EQ(ti[slot(13)], 1u);
}

// Each edge-bearing occurrence is seen from each of its edges.
TEST(BruteForceEdge, MultiplicityIdentity) {
  for (const auto& [name, g] : suite::random_suite()) {
    auto y = oracle::brute_force_counts(g);
    std::array<u128, kPatternCount> sum{};
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      auto ye = oracle::brute_force_edge_counts(g, e);
      for (std::size_t i = 0; i < kPatternCount; ++i) sum[i] += ye[i];
    }
    for (int id = 3; id <= 16; ++id) {
      if (id == 6) continue;
      EXPECT_EQ(sum[slot(id)], y[slot(id)] * static_cast<u128>(kPatterns[slot(id)].edges)) << name << " G" << id;
    }
  }
}
