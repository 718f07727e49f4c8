#pragma once

#include <optional>
#include <vector>

#include "geosoc/graph_analysis.hpp"
#include "geosoc/search.hpp"

namespace geosoc {

inline std::optional<Solution> ssp_solve(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                         const SearchOptions& opt = {}) {
  SearchStats stats;
  double D = kInf;
  std::vector<int> best;
  int best_venue = -1;
  {
    ScopedTimer timer(stats.elapsed_ms);
    std::optional<RTree> own;
    const RTree& rt = member_tree(d, opt, own);
    auto venues = q.venues;
    std::sort(venues.begin(), venues.end());
    for (int venue : venues) {
      BranchAndBound::Config cfg;
      cfg.q_ref = venue;
      BranchAndBound bb(q, g, d, rt, rt.range_query(d.venue(venue), q.t), {venue}, opt, cfg);
      bb.set_incumbent(D, best, best_venue);
      bb.run();
      accumulate(stats, bb.stats());
      D = bb.incumbent();
      best = bb.best_group();
      best_venue = bb.best_venue();
    }
  }
  if (opt.stats_out) *opt.stats_out = stats;
  if (best_venue < 0) return std::nullopt;
  return Solution{best, best_venue, D, stats};
}

namespace detail {

// Members within t of at least one query venue, ascending.
inline std::vector<int> in_reach(const RTree& rt, const SpatialDataset& d, const std::vector<int>& venues, double t,
                                 const std::vector<char>* allowed = nullptr) {
  std::vector<char> hit(d.member_count(), 0);
  for (int q : venues)
    for (int v : rt.range_query(d.venue(q), t)) hit[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(hit.size()); ++v)
    if (hit[v] && (!allowed || (*allowed)[v])) out.push_back(v);
  return out;
}

}  // namespace detail

inline std::optional<Solution> sfgp_solve(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                          const SearchOptions& opt = {}) {
  SearchStats stats;
  std::optional<Solution> out;
  {
    ScopedTimer timer(stats.elapsed_ms);
    std::optional<RTree> own;
    const RTree& rt = member_tree(d, opt, own);
    auto venues = q.venues;
    std::sort(venues.begin(), venues.end());
    const auto cand = detail::in_reach(rt, d, venues, q.t);
    std::optional<PairChoice> ref;
    for (int v : cand)
      for (int qv : venues) {
        PairChoice c{v, qv, d.dist(v, qv)};
        if (c.score <= q.t && (!ref || pair_before(c, *ref, nullptr))) ref = c;
      }
    if (ref) {
      BranchAndBound::Config cfg;
      cfg.q_ref = ref->venue;
      BranchAndBound bb(q, g, d, rt, cand, venues, opt, cfg);
      bb.run();
      stats = bb.stats();
      out = take_solution(bb, stats);
    }
  }
  if (opt.stats_out) *opt.stats_out = stats;
  if (out) out->stats = stats;
  return out;
}

// Globally closest (member, venue) pair by co-traversal; nullopt when every pair
// is farther than t.
inline std::optional<PairChoice> srdo_seed(const RTree& rt, const BallTree& bt, const SpatialDataset& d,
                                           std::span<const int> S_R, double t,
                                           const std::vector<int>* degree = nullptr) {
  std::vector<char> mok(d.member_count(), 0), vok(d.venue_count(), 0);
  for (int v : S_R) mok.at(v) = 1;
  for (int qv : bt.venues_in(bt.root())) vok.at(qv) = 1;
  return best_pair(rt, bt, d, {}, mok, vok, t, [](int) { return 0.0; }, degree);
}

// Next (member, venue) under the all-pair score: d(v,q) + sum over S_I of d(s,q).
inline std::optional<PairChoice> apdo_next(std::span<const int> S_I, std::span<const int> S_R,
                                           std::span<const int> Q_I, double t, const RTree& rt, const BallTree& bt,
                                           const SpatialDataset& d, const std::vector<int>* degree = nullptr) {
  std::vector<char> mok(d.member_count(), 0), vok(d.venue_count(), 0);
  for (int v : S_R) mok.at(v) = 1;
  for (int qv : Q_I) vok.at(qv) = 1;
  std::vector<double> sums(d.venue_count(), 0.0);
  for (int qv : Q_I)
    for (int s : S_I) sums[qv] += d.dist(s, qv);
  return best_pair(rt, bt, d, S_I, mok, vok, t, [&](int qv) { return sums[qv]; }, degree);
}

enum class MagsOrdering { Srdo, Apdo };

inline std::optional<Solution> mags_solve(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                          MagsOrdering ordering, const SearchOptions& opt = {}) {
  SearchStats stats;
  std::optional<Solution> out;
  {
    ScopedTimer timer(stats.elapsed_ms);
    std::optional<RTree> own;
    const RTree& rt = member_tree(d, opt, own);
    auto venues = q.venues;
    std::sort(venues.begin(), venues.end());

    BranchAndBound::Config cfg;
    cfg.degree_ties = true;
    cfg.ball_pruning = true;
    cfg.degree.resize(d.member_count());
    std::vector<int> cand;
    if (q.mode == FamiliarityMode::PerVertex) {
      auto core = core_decompose(g, q.p, q.k);
      std::vector<char> keep(d.member_count(), 0);
      for (int v : core.vertices) keep[v] = 1;
      for (int v = 0; v < static_cast<int>(d.member_count()); ++v) cfg.degree[v] = core.graph.degree(v);
      cand = detail::in_reach(rt, d, venues, q.t, &keep);
    } else {
      for (int v = 0; v < static_cast<int>(d.member_count()); ++v) cfg.degree[v] = g.degree(v);
      cand = detail::in_reach(rt, d, venues, q.t);
    }

    bool feasible_seed = true;
    if (ordering == MagsOrdering::Srdo) {
      BallTree bt(venues, d.venues());
      auto seed = srdo_seed(rt, bt, d, cand, q.t, &cfg.degree);
      if (seed) cfg.q_ref = seed->venue;
      else feasible_seed = false;
    } else {
      cfg.ordering = Ordering::AllPair;
    }
    if (feasible_seed) {
      BranchAndBound bb(q, g, d, rt, cand, venues, opt, cfg);
      bb.run();
      stats = bb.stats();
      out = take_solution(bb, stats);
    }
  }
  if (opt.stats_out) *opt.stats_out = stats;
  if (out) out->stats = stats;
  return out;
}

}  // namespace geosoc
