#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "geosoc/core.hpp"

namespace geosoc {

inline constexpr std::uint64_t kOracleBudget = 100'000'000;

struct OracleResult {
  std::optional<Solution> best;
  std::uint64_t combinations = 0;
};

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

// Calls f(idx) for every increasing r-subset of 0..n-1 in lexicographic order.
template <class F>
void for_each_combination(int n, int r, F&& f) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    f(std::as_const(idx));
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Exhaustive search over every venue and every p-subset of its in-radius members.
inline OracleResult brute_force(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                std::uint64_t budget = kOracleBudget) {
  auto venues = q.venues;
  std::sort(venues.begin(), venues.end());
  std::vector<std::vector<int>> reach;
  std::uint64_t planned = 0;
  for (int venue : venues) {
    std::vector<int> in;
    for (int v = 0; v < static_cast<int>(d.member_count()); ++v)
      if (d.dist(v, venue) <= q.t) in.push_back(v);
    planned += detail::binomial_capped(in.size(), q.p, budget);
    if (planned > budget) throw std::length_error("oracle budget exceeded; shrink the instance");
    reach.push_back(std::move(in));
  }
  OracleResult res;
  for (std::size_t i = 0; i < venues.size(); ++i) {
    const auto& in = reach[i];
    detail::for_each_combination(static_cast<int>(in.size()), q.p, [&](const std::vector<int>& idx) {
      ++res.combinations;
      std::vector<int> grp(idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j) grp[j] = in[idx[j]];
      if (!familiarity_ok(grp, q.k, q.mode, g)) return;
      const double tot = total_distance(grp, venues[i], d);
      const auto& b = res.best;
      if (!b || precedes(tot, grp, venues[i], b->total_distance, b->group, b->venue))
        res.best = Solution{grp, venues[i], tot, {}};
    });
  }
  return res;
}

// Cheapest way to grow S_I to p members drawn from `pool`, over the given venues,
// ignoring every constraint. +inf when the pool is too small.
inline double completion_bound_oracle(std::span<const int> S_I, std::span<const int> venues, int p,
                                      std::span<const int> pool, const SpatialDataset& d,
                                      std::uint64_t budget = kOracleBudget) {
  std::vector<int> rest;
  for (int v : pool)
    if (std::find(S_I.begin(), S_I.end(), v) == S_I.end()) rest.push_back(v);
  const int need = p - static_cast<int>(S_I.size());
  if (need < 0) throw std::invalid_argument("S_I larger than p");
  if (need > static_cast<int>(rest.size())) return kInf;
  if (detail::binomial_capped(rest.size(), need, budget) * venues.size() > budget)
    throw std::length_error("oracle budget exceeded; shrink the instance");
  double best = kInf;
  for (int venue : venues) {
    double base = 0.0;
    for (int s : S_I) base += d.dist(s, venue);
    detail::for_each_combination(static_cast<int>(rest.size()), need, [&](const std::vector<int>& idx) {
      double tot = base;
      for (int j : idx) tot += d.dist(rest[j], venue);
      best = std::min(best, tot);
    });
  }
  return best;
}

}  // namespace geosoc
