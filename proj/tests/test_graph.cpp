#include <gtest/gtest.h>

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <numeric>

#include "suite.hpp"

using namespace graphlet;

TEST(LoadGraph, Triangle) {
  auto g = load_graph("0 1\n1 2\n2 0\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.has_edge(0, 2));
}

TEST(LoadGraph, DropsSelfLoopsAndDuplicates) {
  auto g = load_graph("1 1\n1 2\n2 1\n");
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(LoadGraph, SymbolicLabels) {
  auto g = load_graph("a b\nb c");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.label(0), "a");
  EXPECT_EQ(g.label(1), "b");
  EXPECT_EQ(g.label(2), "c");
  EXPECT_EQ(*g.find_label("c"), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(LoadGraph, CommentsCommasAndSparseIds) {
  auto g = load_graph("# header\n% other\n10,20\n20\t30\n\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.label(0), "10");
  EXPECT_EQ(g.label(2), "30");
}

TEST(LoadGraph, ParseErrorsCarryLineNumbers) {
  try {
    load_graph("0 1\n2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(load_graph(""), ParseError);
  EXPECT_THROW(load_graph("# only comments\n"), ParseError);
  EXPECT_THROW(load_graph("3 3\n0 0\n", InputFormat::edge_list), ParseError);  // only self-loops
}

TEST(LoadGraph, MatrixMarket) {
  auto g = load_graph("%%MatrixMarket matrix coordinate pattern symmetric\n% c\n5 5 3\n1 2\n2 3\n3 1\n");
  EXPECT_EQ(g.num_vertices(), 5u);  // isolated vertices 4 and 5 are kept
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.label(0), "1");
  EXPECT_THROW(load_graph("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n"), ParseError);
}

TEST(LoadGraph, CanonicalRoundTrip) {
  for (const auto& [name, g] : suite::random_suite()) {
    if (g.num_edges() == 0) continue;
    auto text = serialize(g);
    auto back = load_graph(text, InputFormat::canonical);
    EXPECT_EQ(back, g) << name;
    EXPECT_EQ(serialize(back), text) << name;
  }
  EXPECT_THROW(load_graph("3 2\n0 1\n", InputFormat::canonical), ParseError);
}

TEST(LoadGraph, EdgeListReserializationIsIdempotent) {
  auto g = load_graph("5 3\n3 9\n9 5\n");
  std::string once;
  for (auto [u, v] : g.edges()) once += g.label(u) + " " + g.label(v) + "\n";
  auto h = load_graph(once);
  EXPECT_EQ(h, g);
}

TEST(LoadGraph, GzipFiles) {
  auto dir = std::filesystem::temp_directory_path();
  auto path = (dir / "graphlet_test_k4.txt.gz").string();
  gzFile f = gzopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  std::string text = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  auto g = load_graph_file(path);
  EXPECT_EQ(g, gen::complete(4));
  std::filesystem::remove(path);
  EXPECT_THROW(load_graph_file((dir / "graphlet_missing.txt").string()), std::runtime_error);
}

TEST(Graph, Invariants) {
  auto g = gen::erdos_renyi(40, 0.2, 1);
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    degree_sum += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      EXPECT_NE(nb[i], v);
      if (i) {
        EXPECT_LT(nb[i - 1], nb[i]);
      }
      EXPECT_TRUE(g.has_edge(nb[i], v));
    }
  }
  EXPECT_EQ(degree_sum, 2 * g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge(e);
    EXPECT_LT(u, v);
    EXPECT_EQ(*g.find_edge(v, u), e);
  }
}

TEST(KCore, Examples) {
  EXPECT_EQ(kcore_numbers(gen::complete(4)).core, (std::vector<std::uint32_t>{3, 3, 3, 3}));
  EXPECT_EQ(kcore_numbers(gen::path(4)).core, (std::vector<std::uint32_t>{1, 1, 1, 1}));
  std::vector<std::pair<VertexId, VertexId>> tp{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  auto g = Graph::from_edges(4, tp);
  auto c = kcore_numbers(g);
  EXPECT_EQ(c.core, (std::vector<std::uint32_t>{2, 2, 2, 1}));
  EXPECT_EQ(c.max_core, 2u);
  EXPECT_EQ(c.edge_core[*g.find_edge(0, 3)], 1u);
}

// Every vertex with core >= c keeps at least c neighbors of core >= c.
TEST(KCore, PeelingProperty) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = gen::power_law(500, 3000, 2.3, seed);
    auto c = kcore_numbers(g);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      EXPECT_LE(c.core[v], g.degree(v));
      std::size_t strong = 0;
      for (VertexId w : g.neighbors(v)) strong += c.core[w] >= c.core[v];
      EXPECT_GE(strong, c.core[v]);
    }
  }
}

TEST(KCore, RelabelInvariant) {
  auto g = gen::erdos_renyi(60, 0.1, 4);
  std::vector<VertexId> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0u);
  std::reverse(perm.begin(), perm.end());
  auto h = gen::relabel(g, perm);
  auto a = kcore_numbers(g), b = kcore_numbers(h);
  for (VertexId v = 0; v < g.num_vertices(); ++v) EXPECT_EQ(a.core[v], b.core[perm[v]]);
}

TEST(Hardness, Examples) {
  auto k4 = gen::complete(4);
  for (EdgeId e = 0; e < 6; ++e) EXPECT_EQ(edge_hardness(k4, e), 6u);
  auto p4 = gen::path(4);
  EXPECT_EQ(edge_hardness(p4, *p4.find_edge(1, 2)), 4u);
  auto s3 = gen::star(3);
  EXPECT_EQ(edge_hardness(s3, *s3.find_edge(0, 1)), 4u);
}

TEST(Patterns, NamesAndIds) {
  EXPECT_EQ(pattern_name(7), "4-clique");
  EXPECT_EQ(*pattern_by_name("4-path"), 12);
  EXPECT_EQ(*pattern_by_name("G14"), 14);
  EXPECT_EQ(*pattern_by_name("3"), 3);
  EXPECT_FALSE(pattern_by_name("G18"));
  EXPECT_FALSE(pattern_by_name("pentagon"));
}

TEST(Checked, OverflowThrows) {
  u128 big = ~u128{0};
  EXPECT_THROW(checked_add(big, u128{1}), OverflowError);
  EXPECT_THROW(checked_mul(big, u128{2}), OverflowError);
  EXPECT_EQ(to_string(binomial(100, 4)), "3921225");
  EXPECT_EQ(to_string(i128{-42}), "-42");
}
