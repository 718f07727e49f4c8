#include <gtest/gtest.h>

#include <random>

#include "geosoc/mrgq.hpp"
#include "geosoc/oracle.hpp"
#include "geosoc/ssgq.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"

using namespace geosoc;
using namespace geosoc::testing;

namespace {

enum Venue : int { q1, q2, q3, q4 };

std::optional<PairChoice> scan_best(std::span<const int> S_I, std::span<const int> S_R, std::span<const int> Q,
                                    double t, const SpatialDataset& d) {
  std::optional<PairChoice> best;
  for (int v : S_R)
    for (int q : Q) {
      if (d.dist(v, q) > t) continue;
      double s = d.dist(v, q);
      for (int m : S_I) s += d.dist(m, q);
      PairChoice c{v, q, s};
      if (!best || pair_before(c, *best, nullptr)) best = c;
    }
  return best;
}

using Solver = std::function<std::optional<Solution>(const Query&, const SocialGraph&, const SpatialDataset&,
                                                     const SearchOptions&)>;

std::vector<std::pair<std::string, Solver>> venue_set_solvers() {
  return {
      {"ssp", [](auto& q, auto& g, auto& d, auto& o) { return ssp_solve(q, g, d, o); }},
      {"sfgp", [](auto& q, auto& g, auto& d, auto& o) { return sfgp_solve(q, g, d, o); }},
      {"mags-srdo", [](auto& q, auto& g, auto& d, auto& o) { return mags_solve(q, g, d, MagsOrdering::Srdo, o); }},
      {"mags-apdo", [](auto& q, auto& g, auto& d, auto& o) { return mags_solve(q, g, d, MagsOrdering::Apdo, o); }},
  };
}

}  // namespace

TEST(Sfgp, ToyVenueSet) {
  auto fx = sfgp_example();
  const Query q(3, 0, 100, {q1, q2, q3}, FamiliarityMode::PerVertex);
  std::vector<std::pair<int, std::vector<int>>> drops;
  SearchOptions opt;
  opt.on_venue_pruned = [&](Rule, std::span<const int> si, int v) { drops.emplace_back(v, std::vector<int>(si.begin(), si.end())); };
  auto s = sfgp_solve(q, fx.g, fx.data, opt);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->group, (std::vector<int>{a, b, c}));
  EXPECT_EQ(s->venue, q2);
  EXPECT_EQ(s->total_distance, 6.0);
  EXPECT_EQ(brute_force(q, fx.g, fx.data).best->total_distance, 6.0);

  auto at = std::find(drops.begin(), drops.end(), std::make_pair(int(q3), std::vector<int>{a, c}));
  ASSERT_NE(at, drops.end());
  for (auto it = drops.begin(); it != at; ++it)
    EXPECT_FALSE(it->first == q3 && it->second == std::vector<int>{a});
}

TEST(Ssp, ToyVenueSet) {
  auto fx = sfgp_example();
  auto s = ssp_solve(Query(3, 0, 100, {q1, q2, q3}, FamiliarityMode::PerVertex), fx.g, fx.data);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->venue, q2);
  EXPECT_EQ(s->total_distance, 6.0);
}

TEST(VenueSet, UnreachableVenues) {
  auto fx = sfgp_example();
  SpatialDataset far(fx.data.members(), {{500, 500}, {-500, 500}});
  const Query q(2, 1, 10, {0, 1}, FamiliarityMode::PerVertex);
  for (auto& [name, solve] : venue_set_solvers()) EXPECT_FALSE(solve(q, fx.g, far, {}).has_value()) << name;
}

TEST(VenueSet, SingleVenueMatchesSsgs) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto rc = random_case(s);
    for (auto mode : {FamiliarityMode::PerVertex, FamiliarityMode::Average}) {
      const Query q = rc.single(mode);
      auto ref = ssgs_solve(q, rc.g, rc.data);
      for (auto& [name, solve] : venue_set_solvers()) {
        auto got = solve(q, rc.g, rc.data, {});
        ASSERT_EQ(got.has_value(), ref.has_value()) << name << " seed " << s;
        if (got) {
          EXPECT_NEAR(got->total_distance, ref->total_distance, 1e-9) << name << " seed " << s;
        }
      }
    }
  }
}

TEST(VenueSet, MatchesOracleRandom) {
  for (std::uint64_t s = 0; s < 120; ++s) {
    auto rc = random_case(s);
    for (auto mode : {FamiliarityMode::PerVertex, FamiliarityMode::Average}) {
      const Query q = rc.query(mode);
      auto want = brute_force(q, rc.g, rc.data).best;
      SearchOptions opt;
      opt.check_apdo = true;
      for (auto& [name, solve] : venue_set_solvers()) {
        auto got = solve(q, rc.g, rc.data, opt);
        ASSERT_EQ(got.has_value(), want.has_value()) << name << " seed " << s;
        if (!got) continue;
        EXPECT_NEAR(got->total_distance, want->total_distance, 1e-9) << name << " seed " << s;
        EXPECT_TRUE(is_feasible(got->group, got->venue, q, rc.g, rc.data)) << name;
        EXPECT_NEAR(total_distance(got->group, got->venue, rc.data), got->total_distance, 1e-9);
      }
    }
  }
}

TEST(VenueSet, StatsOutFilledWithoutAnswer) {
  auto fx = g1();
  SearchStats st;
  st.explored = 99;
  SearchOptions opt;
  opt.stats_out = &st;
  EXPECT_FALSE(mags_solve(Query(3, 0, 100, {0}, FamiliarityMode::PerVertex), SocialGraph(6), fx.data,
                          MagsOrdering::Apdo, opt));
  EXPECT_EQ(st.explored, 0u);
}

TEST(SrdoSeed, ToyLayout) {
  auto fx = seed_example();
  RTree rt(fx.data.members());
  BallTree bt(fx.data.venues());
  const std::vector<int> all{a, b, c, d};
  auto seed = srdo_seed(rt, bt, fx.data, all, 100);
  ASSERT_TRUE(seed);
  EXPECT_EQ(seed->member, d);
  EXPECT_EQ(seed->venue, q4);
}

TEST(SrdoSeed, SinglePair) {
  SpatialDataset ds({{1, 1}}, {{4, 5}});
  RTree rt(ds.members());
  BallTree bt(ds.venues());
  auto seed = srdo_seed(rt, bt, ds, std::vector<int>{0}, 10);
  ASSERT_TRUE(seed);
  EXPECT_EQ(seed->member, 0);
  EXPECT_EQ(seed->venue, 0);
  EXPECT_DOUBLE_EQ(seed->score, 5.0);
  EXPECT_FALSE(srdo_seed(rt, bt, ds, std::vector<int>{0}, 4.9));
}

TEST(SrdoSeed, MatchesScan) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(0, 100);
  for (int it = 0; it < 300; ++it) {
    std::vector<Location> mem(1 + rng() % 30), ven(1 + rng() % 10);
    for (auto& l : mem) l = {c(rng), c(rng)};
    for (auto& l : ven) l = {c(rng), c(rng)};
    SpatialDataset ds(mem, ven);
    RTree rt(ds.members(), 4);
    BallTree bt(ds.venues());
    std::vector<int> sr, qs;
    for (int v = 0; v < static_cast<int>(mem.size()); ++v) sr.push_back(v);
    for (int q = 0; q < static_cast<int>(ven.size()); ++q) qs.push_back(q);
    const double t = c(rng);
    auto got = srdo_seed(rt, bt, ds, sr, t);
    auto want = scan_best({}, sr, qs, t, ds);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_EQ(got->member, want->member);
      EXPECT_EQ(got->venue, want->venue);
    }
  }
}

TEST(ApdoNext, ToySecondPick) {
  auto fx = seed_example();
  RTree rt(fx.data.members());
  BallTree bt(fx.data.venues());
  const std::vector<int> si{d}, sr{a, b, c}, qs{q1, q2, q3, q4};
  auto nx = apdo_next(si, sr, qs, 100, rt, bt, fx.data);
  ASSERT_TRUE(nx);
  EXPECT_EQ(nx->member, a);
  EXPECT_EQ(nx->venue, q3);
  EXPECT_NEAR(nx->score, 3.2, 1e-12);
}

TEST(ApdoNext, EmptyStateIsSeed) {
  auto fx = seed_example();
  RTree rt(fx.data.members());
  BallTree bt(fx.data.venues());
  const std::vector<int> all{a, b, c, d}, qs{q1, q2, q3, q4};
  auto nx = apdo_next({}, all, qs, 100, rt, bt, fx.data);
  auto seed = srdo_seed(rt, bt, fx.data, all, 100);
  ASSERT_TRUE(nx && seed);
  EXPECT_EQ(nx->member, seed->member);
  EXPECT_EQ(nx->venue, seed->venue);
}

TEST(ApdoNext, MatchesScan) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> c(0, 100);
  for (int it = 0; it < 300; ++it) {
    const int n = 2 + static_cast<int>(rng() % 25), m = 1 + static_cast<int>(rng() % 8);
    std::vector<Location> mem(n), ven(m);
    for (auto& l : mem) l = {c(rng), c(rng)};
    for (auto& l : ven) l = {c(rng), c(rng)};
    SpatialDataset ds(mem, ven);
    RTree rt(ds.members(), 4);
    BallTree bt(ds.venues());
    std::vector<int> si, sr, qs;
    for (int v = 0; v < n; ++v) (rng() % 3 == 0 ? si : sr).push_back(v);
    for (int q = 0; q < m; ++q)
      if (rng() % 4 != 0) qs.push_back(q);
    const double t = c(rng);
    auto got = apdo_next(si, sr, qs, t, rt, bt, ds);
    auto want = scan_best(si, sr, qs, t, ds);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_EQ(got->member, want->member);
      EXPECT_EQ(got->venue, want->venue);
      EXPECT_NEAR(got->score, want->score, 1e-9);
    }
  }
}

TEST(Mags, ThresholdGraphStopsAfterP) {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 10) {
    const int n = std::uniform_int_distribution<int>(20, 80)(rng);
    auto g = threshold_graph(n, rng);
    const int p = std::uniform_int_distribution<int>(2, 8)(rng);
    const int k = std::uniform_int_distribution<int>(0, p - 1)(rng);
    auto ds = unit_distance_layout(n, 3);
    const Query q(p, k, 2.0, {0, 1, 2}, FamiliarityMode::PerVertex);
    auto s = mags_solve(q, g, ds, MagsOrdering::Apdo);
    if (!s) continue;
    ++checked;
    EXPECT_EQ(s->stats.explored, static_cast<std::uint64_t>(p));
    EXPECT_NEAR(s->total_distance, p, 1e-9);
  }
}

TEST(Mags, PrunedAndUnprunedAgree) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto rc = random_case(s);
    const Query q = rc.query(FamiliarityMode::PerVertex);
    SearchOptions none;
    none.prune = PruneConfig::none();
    for (auto ord : {MagsOrdering::Srdo, MagsOrdering::Apdo}) {
      auto x = mags_solve(q, rc.g, rc.data, ord);
      auto y = mags_solve(q, rc.g, rc.data, ord, none);
      ASSERT_EQ(x.has_value(), y.has_value());
      if (x) {
        EXPECT_NEAR(x->total_distance, y->total_distance, 1e-9);
        EXPECT_LE(x->stats.explored, y->stats.explored);
      }
    }
  }
}
