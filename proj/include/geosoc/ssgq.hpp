#pragma once

#include <map>
#include <optional>
#include <vector>

#include "geosoc/bounds.hpp"
#include "geosoc/search.hpp"

namespace geosoc {

inline std::optional<Solution> ssgs_solve(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                          const SearchOptions& opt = {}) {
  if (q.venues.size() != 1) throw std::invalid_argument("ssgs expects exactly one venue");
  SearchStats stats;
  std::optional<Solution> out;
  {
    ScopedTimer timer(stats.elapsed_ms);
    std::optional<RTree> own;
    const RTree& rt = member_tree(d, opt, own);
    const int venue = q.venues.front();
    BranchAndBound::Config cfg;
    cfg.q_ref = venue;
    BranchAndBound bb(q, g, d, rt, rt.range_query(d.venue(venue), q.t), {venue}, opt, cfg);
    bb.run();
    stats = bb.stats();
    out = take_solution(bb, stats);
  }
  if (opt.stats_out) *opt.stats_out = stats;
  if (out) out->stats = stats;
  return out;
}

struct MergeParams {
  std::uint64_t w = 20000;    // generated-state budget for the expansion phase
  std::size_t lambda = 200;   // per-queue capacity
};

struct MergeEntry {
  std::vector<int> group;  // sorted ids
  double total = 0.0;
  int theta_bar = 0;
  double rank = 0.0;
};

struct MergeTrace {
  std::vector<std::vector<MergeEntry>> queues;  // queues[j] = U_j after the merge phase, by rank
  std::uint64_t generated = 0;
  bool expansion_complete = false;
  std::size_t merged = 0;  // unions admitted during merging
};

namespace detail {

class MergeQueues {
 public:
  MergeQueues(const Query& q, const SocialGraph& g, const SpatialDataset& d, std::size_t lambda)
      : q_(q), g_(g), d_(d), venue_(q.venues.front()), lambda_(lambda), u_(q.p + 1) {}

  bool add(std::vector<int> grp) {
    std::sort(grp.begin(), grp.end());
    const int size = static_cast<int>(grp.size());
    if (size < 1 || size > q_.p || u_[size].count(grp)) return false;
    MergeEntry e;
    e.total = total_distance(grp, venue_, d_);
    auto order = grp;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double da = d_.dist(a, venue_), db = d_.dist(b, venue_);
      return da != db ? da < db : a < b;
    });
    e.theta_bar = theta_bar(order, q_.k, q_.p, g_);
    e.rank = rank_value(q_.p, q_.t, e.theta_bar, e.total);
    if (size == q_.p && familiarity_ok(grp, q_.k, q_.mode, g_) &&
        (!best_ || precedes(e.total, grp, venue_, best_->total, best_->group, venue_)))
      best_ = MergeEntry{grp, e.total, e.theta_bar, e.rank};
    e.group = grp;
    u_[size].emplace(std::move(grp), std::move(e));
    return true;
  }

  double incumbent() const { return best_ ? best_->total : kInf; }
  const std::optional<MergeEntry>& best() const { return best_; }

  // Keep the lambda smallest ranks of U_j (ties by group).
  std::vector<MergeEntry> trim(int j) {
    std::vector<MergeEntry> all;
    for (auto& [k, e] : u_[j]) all.push_back(e);
    std::sort(all.begin(), all.end(), [](const MergeEntry& a, const MergeEntry& b) {
      return a.rank != b.rank ? a.rank < b.rank : a.group < b.group;
    });
    if (all.size() > lambda_) all.resize(lambda_);
    u_[j].clear();
    for (auto& e : all) u_[j].emplace(e.group, e);
    return all;
  }

  std::vector<double> mu() const {
    std::vector<double> m(q_.p, kInf);
    for (int j = 1; j < q_.p; ++j)
      for (auto& [grp, e] : u_[j])
        for (int v : grp) m[j] = std::min(m[j], d_.dist(v, venue_));
    return m;
  }

  bool contains(const std::vector<int>& grp) const { return u_[grp.size()].count(grp) != 0; }

 private:
  const Query& q_;
  const SocialGraph& g_;
  const SpatialDataset& d_;
  int venue_;
  std::size_t lambda_;
  std::vector<std::map<std::vector<int>, MergeEntry>> u_;
  std::optional<MergeEntry> best_;
};

}  // namespace detail

inline std::optional<Solution> ssgmerge_solve(const Query& q, const SocialGraph& g, const SpatialDataset& d,
                                              const MergeParams& mp = {}, const SearchOptions& opt = {},
                                              MergeTrace* trace = nullptr) {
  if (q.venues.size() != 1) throw std::invalid_argument("ssgmerge expects exactly one venue");
  if (mp.w < 1 || mp.lambda < 1) throw std::invalid_argument("w and lambda must be positive");
  SearchStats stats;
  detail::MergeQueues queues(q, g, d, mp.lambda);
  std::size_t merged = 0;
  bool complete = false;
  {
    ScopedTimer timer(stats.elapsed_ms);
    std::optional<RTree> own;
    const RTree& rt = member_tree(d, opt, own);
    const int venue = q.venues.front();
    BranchAndBound::Config cfg;
    cfg.q_ref = venue;
    cfg.state_budget = mp.w;
    cfg.on_state = [&](std::span<const int> state, std::span<const int> rest, bool) {
      if (!familiarity_prune_ssgq(state, rest, q.p, q.k, g)) queues.add({state.begin(), state.end()});
    };
    BranchAndBound bb(q, g, d, rt, rt.range_query(d.venue(venue), q.t), {venue}, opt, cfg);
    bb.run();
    stats = bb.stats();
    complete = !bb.exhausted();

    for (int i = 1; i < q.p; ++i) {
      const auto level = queues.trim(i);
      const auto mu = queues.mu();
      for (std::size_t a = 0; a < level.size(); ++a)
        for (std::size_t b = a + 1; b < level.size(); ++b) {
          std::vector<int> un;
          std::set_union(level[a].group.begin(), level[a].group.end(), level[b].group.begin(),
                         level[b].group.end(), std::back_inserter(un));
          if (static_cast<int>(un.size()) > q.p || queues.contains(un)) continue;
          if (merge_prune(total_distance(un, venue, d), static_cast<int>(un.size()), q.p, mu, queues.incumbent()))
            continue;
          if (queues.add(std::move(un))) ++merged;
        }
    }
    queues.trim(q.p);
  }
  if (trace) {
    trace->queues.assign(q.p + 1, {});
    for (int j = 1; j <= q.p; ++j) trace->queues[j] = queues.trim(j);
    trace->generated = stats.generated;
    trace->expansion_complete = complete;
    trace->merged = merged;
  }
  if (opt.stats_out) *opt.stats_out = stats;
  const auto& best = queues.best();
  if (!best) return std::nullopt;
  return Solution{best->group, q.venues.front(), best->total, stats};
}

}  // namespace geosoc
