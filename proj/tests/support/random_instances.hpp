#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "geosoc/core.hpp"

namespace geosoc::testing {

struct RandomCase {
  SocialGraph g;
  SpatialDataset data;
  int p = 3;
  int k = 0;
  double t = 1.0;
  std::vector<int> venues;

  Query query(FamiliarityMode m) const { return Query(p, k, t, venues, m); }
  Query single(FamiliarityMode m, int venue = 0) const { return Query(p, k, t, {venue}, m); }
};

struct CaseRanges {
  int n_min = 8, n_max = 15;
  int p_min = 3, p_max = 6;
  int q_min = 1, q_max = 5;
  double box = 100.0;
};

// Radius regimes rotate with the seed: tight, medium, loose.
inline RandomCase random_case(std::uint64_t seed, const CaseRanges& r = {}) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const int n = uni(r.n_min, r.n_max);
  const int m = uni(r.q_min, r.q_max);
  RandomCase rc;
  rc.p = std::min(n, uni(r.p_min, r.p_max));
  rc.k = uni(0, rc.p - 1);
  static constexpr double lo[] = {0.1, 0.3, 0.6}, hi[] = {0.3, 0.6, 1.4};
  rc.t = r.box * real(lo[seed % 3], hi[seed % 3]);
  std::vector<Location> mem(n), ven(m);
  for (auto& l : mem) l = {real(0, r.box), real(0, r.box)};
  for (auto& l : ven) l = {real(0, r.box), real(0, r.box)};
  const double prob = real(0.3, 0.9);
  rc.g = SocialGraph(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (real(0, 1) < prob) rc.g.add_edge(u, v);
  rc.data = SpatialDataset(std::move(mem), std::move(ven));
  for (int j = 0; j < m; ++j) rc.venues.push_back(j);
  return rc;
}

// Threshold graph grown by adding isolated or dominating vertices.
inline SocialGraph threshold_graph(int n, std::mt19937_64& rng) {
  SocialGraph g(n);
  std::bernoulli_distribution dominating(0.5);
  for (int v = 1; v < n; ++v)
    if (dominating(rng))
      for (int u = 0; u < v; ++u) g.add_edge(u, v);
  return g;
}

// Every member at the origin, venues on the unit circle: all member-venue distances are 1.
inline SpatialDataset unit_distance_layout(int n, int venues) {
  std::vector<Location> mem(n, Location{0.0, 0.0}), ven;
  for (int j = 0; j < venues; ++j) {
    const double a = 2.0 * std::numbers::pi * j / venues;
    ven.push_back({std::cos(a), std::sin(a)});
  }
  return SpatialDataset(std::move(mem), std::move(ven));
}

}  // namespace geosoc::testing
