#pragma once

#include <span>
#include <vector>

#include "geosoc/balltree.hpp"
#include "geosoc/core.hpp"

namespace geosoc {

namespace detail {

inline std::vector<char> mark(std::span<const int> S, std::size_t n) {
  std::vector<char> m(n, 0);
  for (int v : S) m.at(v) = 1;
  return m;
}

inline int count_marked(const std::vector<int>& nb, const std::vector<char>& m) {
  int c = 0;
  for (int u : nb) c += m[u];
  return c;
}

}  // namespace detail

// Socio-spatial ordering test for adding v to S_I, in exact integer form.
inline bool sso_admits(std::span<const int> S_I, int v, int theta, int p, const SocialGraph& g) {
  if (p <= 1) return true;
  long long e2 = 0;
  for (int s : S_I)
    if (g.adjacent(s, v)) e2 += 2;
  for (std::size_t i = 0; i < S_I.size(); ++i)
    for (std::size_t j = i + 1; j < S_I.size(); ++j)
      if (g.adjacent(S_I[i], S_I[j])) e2 += 2;
  const long long n = static_cast<long long>(S_I.size()) + 1;
  const long long pm1 = p - 1;
  // e2/n >= n - theta*n/(p-1) - 1, multiplied through by n(p-1)
  return e2 * pm1 >= n * n * pm1 - static_cast<long long>(theta) * n * n - n * pm1;
}

// Smallest theta >= k such that every prefix of the stored order passes the test.
inline int theta_bar(std::span<const int> S, int k, int p, const SocialGraph& g) {
  for (int theta = k; theta < p - 1; ++theta) {
    bool ok = true;
    for (std::size_t i = 0; i < S.size() && ok; ++i) ok = sso_admits(S.first(i), S[i], theta, p, g);
    if (ok) return theta;
  }
  return std::max(k, p - 1);
}

inline double rank_value(int p, double t, int theta_bar, double sum_d) {
  return static_cast<double>(p) * t * theta_bar + sum_d;
}

// Familiarity bound from precomputed counts: intra = sum_{S_I}|N_v∩S_I|, max_rr = max_{S_R}|N_v∩S_R|,
// cross = sum_{S_I}|N_v∩S_R|.
inline bool familiarity_prune_ssgq_counts(long long intra, int size_I, int size_R, long long max_rr,
                                          long long cross, int p, int k) {
  if (size_R == 0 && size_I < p) return true;
  const long long lhs = intra + static_cast<long long>(p - size_I) * max_rr + 2 * cross;
  return lhs < static_cast<long long>(p) * (p - k - 1);
}

inline bool familiarity_prune_ssgq(std::span<const int> S_I, std::span<const int> S_R, int p, int k,
                                   const SocialGraph& g) {
  const std::size_t n = g.vertex_count();
  auto mi = detail::mark(S_I, n);
  auto mr = detail::mark(S_R, n);
  long long intra = 0, cross = 0, max_rr = 0;
  for (int v : S_I) {
    intra += detail::count_marked(g.neighbors(v), mi);
    cross += detail::count_marked(g.neighbors(v), mr);
  }
  for (int v : S_R) max_rr = std::max<long long>(max_rr, detail::count_marked(g.neighbors(v), mr));
  return familiarity_prune_ssgq_counts(intra, static_cast<int>(S_I.size()), static_cast<int>(S_R.size()), max_rr,
                                       cross, p, k);
}

inline double distance_prune_bound(double sum_SI, int size_SI, int p, double d_min) {
  if (size_SI >= p) return sum_SI;
  return sum_SI + static_cast<double>(p - size_SI) * d_min;
}

inline bool distance_prune(double sum_SI, int size_SI, int p, double d_min, double D) {
  if (D == kInf) return false;
  return distance_prune_bound(sum_SI, size_SI, p, d_min) >= D;
}

// Some member of S_I already misses more than k+1 acquaintances.
inline bool familiarity_prune_1_counts(int size_I, int min_intra, int k) { return size_I - min_intra > k + 1; }

inline bool familiarity_prune_1(std::span<const int> S_I, int k, const SocialGraph& g) {
  if (S_I.empty()) return false;
  auto mi = detail::mark(S_I, g.vertex_count());
  int mn = static_cast<int>(S_I.size());
  for (int v : S_I) mn = std::min(mn, detail::count_marked(g.neighbors(v), mi));
  return familiarity_prune_1_counts(static_cast<int>(S_I.size()), mn, k);
}

// The remaining candidates are too sparse to fill the group.
inline bool familiarity_prune_2_counts(long long rr_sum, int size_I, int p, int k) {
  const long long need = static_cast<long long>(p - size_I) * (p - size_I - k - 1);
  return rr_sum < need;
}

inline bool familiarity_prune_2(std::span<const int> S_I, std::span<const int> S_R, int p, int k,
                                const SocialGraph& g) {
  auto mr = detail::mark(S_R, g.vertex_count());
  long long s = 0;
  for (int v : S_R) s += detail::count_marked(g.neighbors(v), mr);
  return familiarity_prune_2_counts(s, static_cast<int>(S_I.size()), p, k);
}

// mu[j] is the smallest member distance present in U_j (index 0 unused).
inline bool merge_prune(double sum_d, int size, int p, const std::vector<double>& mu, double D) {
  if (D == kInf) return false;
  double m = kInf;
  for (int j = size; j <= p - 1; ++j)
    if (j >= 1 && j < static_cast<int>(mu.size())) m = std::min(m, mu[j]);
  if (m == kInf) m = 0.0;
  const double extra = size >= p ? 0.0 : static_cast<double>(p - size) * m;
  return sum_d + extra >= D;
}

inline double otdp_point_bound(int size_SI, double d_qxqy, double sum_d_si_qx, int p, double d_vmin) {
  const double tail = size_SI >= p ? 0.0 : static_cast<double>(p - size_SI) * d_vmin;
  return std::max(0.0, size_SI * d_qxqy - sum_d_si_qx) + tail;
}

inline bool otdp_point(int size_SI, double d_qxqy, double sum_d_si_qx, int p, double d_vmin, double D) {
  if (D == kInf) return false;
  return otdp_point_bound(size_SI, d_qxqy, sum_d_si_qx, p, d_vmin) >= D;
}

// Per-member clamped form: d_s_ctrx[i] is the distance from the i-th member to ctr(B_x).
inline double otdp_ball_bound(std::span<const double> d_s_ctrx, double d_ctrx_ctry, double r_y, int p,
                              double frontier) {
  double s = 0.0;
  for (double d : d_s_ctrx) s += std::max(0.0, d_ctrx_ctry - d - r_y);
  const int size = static_cast<int>(d_s_ctrx.size());
  return s + (size >= p ? 0.0 : static_cast<double>(p - size) * frontier);
}

inline bool otdp_ball(std::span<const double> d_s_ctrx, const Ball& bx, const Ball& by, int p, double frontier,
                      double D) {
  if (D == kInf) return false;
  return otdp_ball_bound(d_s_ctrx, distance(bx.center, by.center), by.radius, p, frontier) >= D;
}

inline std::optional<double> itdp_bound(double pair_sum, int size_SI, int p, double r_bx, double frontier) {
  if (size_SI < 2) return std::nullopt;
  const double tail = size_SI >= p ? 0.0 : static_cast<double>(p - size_SI) * frontier;
  return pair_sum / (size_SI - 1) - size_SI * r_bx + tail;
}

inline bool itdp(double pair_sum, int size_SI, int p, double r_bx, double frontier, double D) {
  if (D == kInf) return false;
  auto b = itdp_bound(pair_sum, size_SI, p, r_bx, frontier);
  return b && *b >= D;
}

inline double aldp_bound(std::span<const Location> S_I, const Ball& bx, int p, double frontier) {
  double s = 0.0;
  for (const auto& l : S_I) s += mindist_point_ball(l, bx);
  const int size = static_cast<int>(S_I.size());
  return s + (size >= p ? 0.0 : static_cast<double>(p - size) * frontier);
}

inline bool aldp(std::span<const Location> S_I, const Ball& bx, int p, double frontier, double D) {
  if (D == kInf) return false;
  return aldp_bound(S_I, bx, p, frontier) >= D;
}

}  // namespace geosoc
