#include <gtest/gtest.h>

#include <random>

#include "geosoc/graph_analysis.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace geosoc;
using namespace geosoc::testing;

TEST(CoreDecompose, Triangle) {
  SocialGraph g(3, {{0, 1}, {1, 2}, {0, 2}});
  auto core = core_decompose(g, 3, 0);
  EXPECT_EQ(core.vertices, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(core.graph.edge_count(), 3u);
}

TEST(CoreDecompose, StarVanishes) {
  SocialGraph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_TRUE(core_decompose(g, 3, 0).vertices.empty());
}

TEST(CoreDecompose, G1PeelsToNothing) {
  EXPECT_TRUE(core_decompose(g1().g, 5, 0).vertices.empty());
  auto core = core_decompose(g1().g, 3, 0);
  EXPECT_EQ(core.vertices, (std::vector<int>{a, c, d}));
}

TEST(CoreDecompose, RandomInvariant) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto rc = random_case(s);
    auto core = core_decompose(rc.g, rc.p, rc.k);
    const int need = rc.p - rc.k - 1;
    for (int v : core.vertices) {
      EXPECT_GE(core.graph.degree(v), need);
      for (int u : core.graph.neighbors(v)) EXPECT_TRUE(core.contains(u));
    }
    // maximal: no outside vertex could join
    for (int v = 0; v < static_cast<int>(rc.g.vertex_count()); ++v) {
      if (core.contains(v)) continue;
      int inside = 0;
      for (int u : rc.g.neighbors(v)) inside += core.contains(u);
      EXPECT_LT(inside, need);
    }
  }
}

TEST(CoreDecompose, BadK) { EXPECT_THROW(core_decompose(g1().g, 3, 3), std::invalid_argument); }

TEST(DegreePartition, Examples) {
  auto empty = degree_partition(SocialGraph(3));
  ASSERT_EQ(empty.classes.size(), 1u);
  EXPECT_EQ(empty.class_degree[0], 0);

  auto path = degree_partition(SocialGraph(3, {{0, 1}, {1, 2}}));
  ASSERT_EQ(path.classes.size(), 2u);
  EXPECT_EQ(path.classes[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(path.class_degree[0], 1);
  EXPECT_EQ(path.classes[1], (std::vector<int>{1}));
  EXPECT_EQ(path.class_degree[1], 2);

  auto k4 = degree_partition(SocialGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  ASSERT_EQ(k4.classes.size(), 1u);
  EXPECT_EQ(k4.class_degree[0], 3);
}

TEST(ThresholdGraph, Examples) {
  EXPECT_TRUE(is_threshold_graph(SocialGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
  EXPECT_FALSE(is_threshold_graph(SocialGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
  EXPECT_TRUE(is_threshold_graph(SocialGraph(3)));
  EXPECT_TRUE(is_threshold_graph(SocialGraph(4, {{0, 1}, {0, 2}, {0, 3}})));
  EXPECT_FALSE(is_threshold_graph(SocialGraph(4, {{0, 1}, {2, 3}})));  // 2K2
  EXPECT_FALSE(is_threshold_graph(SocialGraph(4, {{0, 1}, {1, 2}, {2, 3}})));  // P4
}

TEST(ThresholdGraph, Construction) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 40)(rng);
    EXPECT_TRUE(is_threshold_graph(threshold_graph(n, rng)));
  }
}
