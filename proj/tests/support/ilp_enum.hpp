#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "geosoc/ilp.hpp"

namespace geosoc::testing {

struct EnumResult {
  std::optional<double> objective;
  std::uint64_t assignments = 0;
  std::uint64_t feasible = 0;
};

// Walks every 0/1 assignment of phi (and pi, for the venue-set model). mu and
// delta take the smallest values their rows allow; the model itself decides
// feasibility and the objective.
inline EnumResult enumerate_model(const IlpModel& m, const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                  bool venue_set) {
  const int n = static_cast<int>(d.member_count());
  auto venues = q.venues;
  std::sort(venues.begin(), venues.end());
  const int nq = venue_set ? static_cast<int>(venues.size()) : 0;
  auto lbl = [](long long id) { return id < 0 ? "n" + std::to_string(-id) : std::to_string(id); };
  EnumResult res;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask)
    for (std::uint64_t qm = 0; qm < (1ULL << nq); ++qm) {
      ++res.assignments;
      std::map<std::string, double> x;
      auto phi = [&](int u) { return static_cast<double>((mask >> u) & 1ULL); };
      auto pi = [&](int j) { return static_cast<double>((qm >> j) & 1ULL); };
      for (int u = 0; u < n; ++u) {
        x["phi_u" + lbl(d.member_label(u))] = phi(u);
        double nb = 0;
        for (int v : g.neighbors(u)) nb += phi(v);
        x["mu_u" + lbl(d.member_label(u))] = std::max(0.0, (q.p - 1) * phi(u) - nb);
        if (venue_set) {
          double del = 0.0;
          for (int j = 0; j < nq; ++j) del = std::max(del, d.dist(u, venues[j]) * (phi(u) + pi(j) - 1.0));
          x["delta_u" + lbl(d.member_label(u))] = del;
        }
      }
      for (int j = 0; j < nq; ++j) x["pi_q" + lbl(d.venue_label(venues[j]))] = pi(j);
      if (!m.validate_assignment(x).ok) continue;
      ++res.feasible;
      const double obj = m.evaluate_objective(x);
      if (!res.objective || obj < *res.objective) res.objective = obj;
    }
  return res;
}

}  // namespace geosoc::testing
