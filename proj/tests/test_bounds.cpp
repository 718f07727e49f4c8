#include <gtest/gtest.h>

#include <random>

#include "geosoc/bounds.hpp"
#include "support/fixtures.hpp"

using namespace geosoc;
using namespace geosoc::testing;

TEST(Sso, Examples) {
  auto fx = g1();
  const std::vector<int> si{a};
  EXPECT_FALSE(sso_admits(si, b, 0, 3, fx.g));
  EXPECT_TRUE(sso_admits(si, c, 0, 3, fx.g));
  EXPECT_TRUE(sso_admits({}, a, 0, 3, fx.g));
}

TEST(Sso, ThetaAtTopAdmitsAll) {
  auto fx = g1();
  for (int p = 2; p <= 6; ++p)
    for (int v = 0; v < 6; ++v) {
      std::vector<int> si;
      for (int u = 0; u < 6 && static_cast<int>(si.size()) < p - 1; ++u)
        if (u != v) si.push_back(u);
      EXPECT_TRUE(sso_admits(si, v, p - 1, p, fx.g));
    }
}

TEST(Sso, MatchesRealForm) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 500; ++it) {
    const int n = 7;
    SocialGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    const int p = 2 + static_cast<int>(rng() % 5);
    const int theta = static_cast<int>(rng() % p);
    std::vector<int> si;
    for (int u = 1; u < n && static_cast<int>(si.size()) < p - 1; ++u)
      if (rng() % 2) si.push_back(u);
    auto all = si;
    all.push_back(0);
    const double s = static_cast<double>(all.size());
    const double lhs = avg_acquainted(all, g);
    const double rhs = s - theta * s / (p - 1) - 1;
    EXPECT_EQ(sso_admits(si, 0, theta, p, g), lhs >= rhs - 1e-12);
  }
}

TEST(ThetaBar, Anchors) {
  auto fx = merge_example();
  // stored order is by distance: a(1) b(2) c(3)
  EXPECT_EQ(theta_bar(std::vector<int>{a, b, c}, 1, 4, fx.g), 2);
  EXPECT_EQ(theta_bar(std::vector<int>{c, d, e}, 1, 4, fx.g), 1);
}

TEST(RankValue, Anchors) {
  EXPECT_EQ(rank_value(4, 100, 2, 6), 806.0);
  EXPECT_EQ(rank_value(4, 100, 1, 12), 412.0);
  EXPECT_EQ(rank_value(5, 10, 2, 0), 100.0);
}

TEST(FamiliarityPruneSsgq, Examples) {
  auto fx = g1();
  EXPECT_TRUE(familiarity_prune_ssgq(std::vector<int>{b, d}, std::vector<int>{e, f}, 3, 0, fx.g));
  for (int p = 2; p <= 5; ++p)
    EXPECT_FALSE(familiarity_prune_ssgq(std::vector<int>{b}, std::vector<int>{e, f}, p, p - 1, fx.g));
  EXPECT_FALSE(familiarity_prune_ssgq(std::vector<int>{a, c, d}, {}, 3, 0, fx.g));
  EXPECT_TRUE(familiarity_prune_ssgq(std::vector<int>{a}, {}, 3, 2, fx.g));
}

TEST(FamiliarityPruneSsgq, CountsAnchor) {
  // (1/3)(0 + 1*1 + 2*1) = 1 < 2
  EXPECT_TRUE(familiarity_prune_ssgq_counts(0, 2, 2, 1, 1, 3, 0));
  EXPECT_FALSE(familiarity_prune_ssgq_counts(0, 2, 2, 1, 3, 3, 0));
}

TEST(DistancePrune, Examples) {
  EXPECT_TRUE(distance_prune(11, 2, 3, 19, 27));
  EXPECT_EQ(distance_prune_bound(11, 2, 3, 19), 30.0);
  EXPECT_FALSE(distance_prune(11, 2, 3, 19, kInf));
  for (int p = 1; p <= 5; ++p) EXPECT_FALSE(distance_prune(0, p, p, 123, 0.5));
  EXPECT_FALSE(distance_prune(11, 2, 3, 19, 30.5));
  EXPECT_TRUE(distance_prune(11, 2, 3, 19, 30));
}

TEST(FamiliarityPrune1, Examples) {
  auto fx = g1();
  EXPECT_TRUE(familiarity_prune_1(std::vector<int>{a, e}, 0, fx.g));
  EXPECT_TRUE(familiarity_prune_1_counts(2, 0, 0));
  for (int v = 0; v < 6; ++v)
    for (int k = 0; k < 3; ++k) EXPECT_FALSE(familiarity_prune_1(std::vector<int>{v}, k, fx.g));
  EXPECT_FALSE(familiarity_prune_1(std::vector<int>{a, c, d}, 0, fx.g));
  EXPECT_FALSE(familiarity_prune_1({}, 0, fx.g));
}

TEST(FamiliarityPrune2, Examples) {
  auto fx = g1();
  EXPECT_TRUE(familiarity_prune_2(std::vector<int>{a}, std::vector<int>{b, c, d, e, f}, 5, 0, fx.g));
  EXPECT_TRUE(familiarity_prune_2_counts(8, 1, 5, 0));
  EXPECT_FALSE(familiarity_prune_2_counts(12, 1, 5, 0));
  EXPECT_FALSE(familiarity_prune_2(std::vector<int>{a, c, d}, {}, 3, 0, fx.g));
  EXPECT_FALSE(familiarity_prune_2(std::vector<int>{a}, {}, 4, 2, fx.g));
}

TEST(MergePrune, Examples) {
  const std::vector<double> mu{kInf, 5, 7, 9};
  EXPECT_FALSE(merge_prune(20, 2, 4, mu, kInf));
  EXPECT_TRUE(merge_prune(20, 2, 4, std::vector<double>{kInf, 5, 5, 5}, 30));
  EXPECT_FALSE(merge_prune(20, 2, 4, std::vector<double>{kInf, 5, 5, 5}, 30.5));
  EXPECT_TRUE(merge_prune(1, 4, 4, mu, 1));
  EXPECT_FALSE(merge_prune(1, 4, 4, mu, 1.5));
}

TEST(Otdp, PointExamples) {
  EXPECT_TRUE(otdp_point(2, 50, 10, 3, 5, 80));
  EXPECT_EQ(otdp_point_bound(2, 50, 10, 3, 5), 95.0);
  EXPECT_FALSE(otdp_point(2, 50, 10, 3, 5, kInf));
  EXPECT_EQ(otdp_point_bound(2, 0, 10, 4, 3), 6.0);
}

TEST(Otdp, BallDegenerates) {
  const std::vector<double> ds{4, 7};
  // same ball: only the frontier term is left
  EXPECT_EQ(otdp_ball_bound(ds, 0.0, 3.0, 4, 2.5), 5.0);
  // zero radius with every member closer than the ball: matches the point form
  EXPECT_DOUBLE_EQ(otdp_ball_bound(ds, 20.0, 0.0, 3, 1.5), otdp_point_bound(2, 20.0, 11.0, 3, 1.5));
  EXPECT_TRUE(otdp_ball(ds, {{0, 0}, 1}, {{20, 0}, 0}, 3, 1.5, 30.5));
  EXPECT_FALSE(otdp_ball(ds, {{0, 0}, 1}, {{20, 0}, 0}, 3, 1.5, kInf));
}

TEST(Itdp, Examples) {
  EXPECT_FALSE(itdp_bound(0.0, 1, 3, 1.0, 5.0).has_value());
  EXPECT_FALSE(itdp(100.0, 1, 3, 0.0, 5.0, 1.0));
  // coincident points: prune iff (p-|S_I|)*f >= D + |S_I|*r
  EXPECT_TRUE(itdp(0.0, 2, 4, 1.0, 5.0, 8.0));
  EXPECT_FALSE(itdp(0.0, 2, 4, 1.0, 5.0, 8.5));
  EXPECT_FALSE(itdp(0.0, 2, 4, 1.0, 5.0, kInf));
}

TEST(Aldp, Examples) {
  const std::vector<Location> si{{0, 0}, {1, 1}};
  const Ball big{{0, 0}, 5};
  EXPECT_EQ(aldp_bound(si, big, 4, 3.0), 6.0);
  EXPECT_TRUE(aldp(si, big, 4, 3.0, 6.0));
  EXPECT_FALSE(aldp(si, big, 4, 3.0, 6.5));
  EXPECT_FALSE(aldp(si, big, 4, 3.0, kInf));
}

// Each ball bound stays below the true cost of S_I at every venue inside the ball.
TEST(BallBounds, RandomizedSoundness) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(0, 100);
  for (int it = 0; it < 3000; ++it) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<Location> si(n);
    for (auto& l : si) l = {c(rng), c(rng)};
    std::vector<Location> venues(1 + rng() % 6);
    for (auto& l : venues) l = {c(rng), c(rng)};
    BallTree bt(venues);
    const Location ref{c(rng), c(rng)};
    double pair_sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair_sum += distance(si[i], si[j]);
    std::vector<double> d_ref;
    for (auto& s : si) d_ref.push_back(distance(s, ref));
    for (int b = 0; b < static_cast<int>(bt.nodes().size()); ++b) {
      const Ball& ball = bt.node(b).ball;
      double best = kInf;
      for (int v : bt.venues_in(b)) {
        double s = 0.0;
        for (auto& l : si) s += distance(l, venues[v]);
        best = std::min(best, s);
      }
      EXPECT_LE(aldp_bound(si, ball, n, 0.0), best + 1e-9);
      EXPECT_LE(otdp_ball_bound(d_ref, distance(ref, ball.center), ball.radius, n, 0.0), best + 1e-9);
      if (auto ib = itdp_bound(pair_sum, n, n, ball.radius, 0.0)) {
        EXPECT_LE(*ib, best + 1e-9);
      }
    }
  }
}
