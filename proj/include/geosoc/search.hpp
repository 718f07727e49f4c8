#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "geosoc/balltree.hpp"
#include "geosoc/bounds.hpp"
#include "geosoc/core.hpp"
#include "geosoc/rtree.hpp"

namespace geosoc {

// Slack applied to every comparison against the incumbent.
inline constexpr double kTol = 1e-10;

struct BoundEvent {
  Rule rule;
  std::vector<int> S_I;
  std::vector<int> S_R;
  std::vector<int> venues;  // venue ids covered by the examined ball
  double bound;
};

struct SearchOptions {
  PruneConfig prune = PruneConfig::all();
  std::size_t rtree_fanout = 16;
  std::function<void(const BoundEvent&)> on_bound;
  std::function<void(Rule, std::span<const int> S_I, int venue)> on_venue_pruned;
  bool check_apdo = false;  // compare every all-pair choice with a full scan
  const RTree* member_index = nullptr;  // prebuilt tree over all member locations
  SearchStats* stats_out = nullptr;     // filled on every run, answer or not
};

enum class Ordering { Distance, AllPair };

struct PairChoice {
  int member;
  int venue;
  double score;
};

inline bool pair_before(const PairChoice& a, const PairChoice& b, const std::vector<int>* degree) {
  if (a.score != b.score) return a.score < b.score;
  if (degree && (*degree)[a.member] != (*degree)[b.member]) return (*degree)[a.member] > (*degree)[b.member];
  if (a.member != b.member) return a.member < b.member;
  return a.venue < b.venue;
}

// Best-first co-traversal of member R-Tree and venue BallTree pairs keyed by
// sum_{s in S_I} MINDIST(s,B) + MINDIST(M,B). Returns the allowed (member, venue)
// pair with d(member, venue) <= t minimizing sum_at(venue) + d(member, venue);
// ties go to higher degree (when given), then lower member id, then lower venue id.
template <class SumAt>
std::optional<PairChoice> best_pair(const RTree& rt, const BallTree& bt, const SpatialDataset& d,
                                    std::span<const int> S_I, const std::vector<char>& member_ok,
                                    const std::vector<char>& venue_ok, double t, SumAt sum_at,
                                    const std::vector<int>* degree) {
  if (rt.empty()) return std::nullopt;
  std::vector<char> bact(bt.nodes().size(), 0);
  for (std::size_t b = 0; b < bt.nodes().size(); ++b) {
    const auto& nd = bt.node(static_cast<int>(b));
    bact[b] = nd.leaf() ? venue_ok[nd.venue] : static_cast<char>(bact[nd.left] | bact[nd.right]);
  }
  std::vector<char> ract(rt.nodes().size(), 0);
  for (std::size_t r = 0; r < rt.nodes().size(); ++r) {
    const auto& nd = rt.node(static_cast<int>(r));
    for (int c : nd.children)
      if (nd.leaf ? member_ok[rt.entry(c).id] : ract[c]) {
        ract[r] = 1;
        break;
      }
  }
  if (!ract[rt.root()] || !bact[bt.root()]) return std::nullopt;
  std::vector<double> ball_sum(bt.nodes().size(), -1.0);
  auto bsum = [&](int b) {
    if (ball_sum[b] < 0.0) {
      const auto& nd = bt.node(b);
      if (nd.leaf()) {
        ball_sum[b] = sum_at(nd.venue);
      } else {
        double s = 0.0;
        for (int m : S_I) s += mindist_point_ball(d.member(m), nd.ball);
        ball_sum[b] = s;
      }
    }
    return ball_sum[b];
  };
  struct Item {
    double key;
    int m;  // r-tree node index, or entry index when entry is set
    bool entry;
    int b;
    bool operator>(const Item& o) const { return key > o.key; }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  auto push_pair = [&](int m, bool entry, int b) {
    const Ball& ball = bt.node(b).ball;
    const double md = entry ? mindist_point_ball(rt.entry(m).loc, ball) : mindist_mbr_ball(rt.node(m).mbr, ball);
    if (md > t) return;
    heap.push({bsum(b) + md, m, entry, b});
  };
  push_pair(rt.root(), false, bt.root());
  std::optional<PairChoice> best;
  while (!heap.empty()) {
    const Item it = heap.top();
    if (best && it.key > best->score + 1e-9) break;
    heap.pop();
    const auto& bn = bt.node(it.b);
    if (it.entry && bn.leaf()) {
      const int v = rt.entry(it.m).id;
      PairChoice c{v, bn.venue, sum_at(bn.venue) + d.dist(v, bn.venue)};
      if (!best || pair_before(c, *best, degree)) best = c;
      continue;
    }
    if (!it.entry) {
      const auto& nd = rt.node(it.m);
      for (int c : nd.children) {
        if (nd.leaf) {
          if (member_ok[rt.entry(c).id]) push_pair(c, true, it.b);
        } else if (ract[c]) {
          push_pair(c, false, it.b);
        }
      }
    } else {
      for (int c : {bn.left, bn.right})
        if (bact[c]) push_pair(it.m, true, c);
    }
  }
  return best;
}


// One depth-first branch-and-bound over (S_I, S_R, Q_I) frames.
class BranchAndBound {
 public:
  struct Config {
    Ordering ordering = Ordering::Distance;
    int q_ref = -1;  // reference venue for distance ordering
    bool degree_ties = false;
    std::vector<int> degree;  // indexed by member id when degree_ties is set
    bool ball_pruning = false;
    std::uint64_t state_budget = std::numeric_limits<std::uint64_t>::max();
    std::function<void(std::span<const int> state, std::span<const int> rest, bool admitted)> on_state;
  };

  BranchAndBound(const Query& q, const SocialGraph& g, const SpatialDataset& d, const RTree& members,
                 std::vector<int> candidates, std::vector<int> venues, const SearchOptions& opt, Config cfg)
      : q_(q), g_(g), d_(d), rt_(members), opt_(opt), cfg_(std::move(cfg)), cand_(std::move(candidates)),
        qv_(std::move(venues)) {
    p_ = q.p;
    n_ = static_cast<int>(g.vertex_count());
    if (static_cast<int>(d.member_count()) != n_) throw std::invalid_argument("graph and dataset disagree on size");
    local_.assign(d.venue_count(), -1);
    for (std::size_t i = 0; i < qv_.size(); ++i) local_.at(qv_[i]) = static_cast<int>(i);
    in_r_.assign(n_, 0);
    elig_.assign(n_, 0);
    sums_.assign(p_ + 1, std::vector<double>(qv_.size(), 0.0));
    if (!qv_.empty() && (cfg_.ball_pruning || cfg_.ordering == Ordering::AllPair)) balls_.emplace(qv_, d.venues());
    if (cfg_.ordering == Ordering::Distance) {
      const Location ref = d.venue(cfg_.q_ref);
      auto order = cand_;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double da = distance(d.member(a), ref), db = distance(d.member(b), ref);
        if (da != db) return da < db;
        if (cfg_.degree_ties && cfg_.degree[a] != cfg_.degree[b]) return cfg_.degree[a] > cfg_.degree[b];
        return a < b;
      });
      cand_ = std::move(order);
    } else {
      std::sort(cand_.begin(), cand_.end());
    }
  }

  void set_incumbent(double D, std::vector<int> group, int venue) {
    D_ = D;
    best_ = std::move(group);
    best_venue_ = venue;
  }

  void run() {
    if (qv_.empty() || static_cast<int>(cand_.size()) < p_) return;
    std::vector<int> all(qv_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    frame(cand_, std::vector<char>(cand_.size(), 0), q_.k, all, all);
  }

  double incumbent() const { return D_; }
  const std::vector<int>& best_group() const { return best_; }
  int best_venue() const { return best_venue_; }
  bool exhausted() const { return stop_; }
  SearchStats& stats() { return stats_; }
  const SearchStats& stats() const { return stats_; }

 private:
  bool per_vertex() const { return q_.mode == FamiliarityMode::PerVertex; }
  bool on(Rule r) const { return opt_.prune.enabled(r); }
  int depth() const { return static_cast<int>(si_.size()); }
  double vd(int member, int local) const { return d_.dist(member, qv_[local]); }

  void push(int u) {
    si_.push_back(u);
    const int dp = depth();
    for (std::size_t i = 0; i < qv_.size(); ++i) sums_[dp][i] = sums_[dp - 1][i] + vd(u, static_cast<int>(i));
    double add = 0.0;
    for (int s = 0; s + 1 < dp; ++s) add += distance(d_.member(si_[s]), d_.member(u));
    pair_sums_.push_back((pair_sums_.empty() ? 0.0 : pair_sums_.back()) + add);
  }
  void pop() {
    si_.pop_back();
    pair_sums_.pop_back();
  }

  struct Marked {
    std::vector<char>& m;
    std::span<const int> ids;
    Marked(std::vector<char>& mm, std::span<const int> s) : m(mm), ids(s) {
      for (int v : ids) m[v] = 1;
    }
    ~Marked() {
      for (int v : ids) m[v] = 0;
    }
  };

  // Nearest member currently flagged in in_r_.
  double nearest_in_r(const Location& c) const {
    auto hit = rt_.nearest_if(c, [&](int id) { return in_r_[id] != 0; });
    return hit ? hit->second : kInf;
  }

  bool eq2_prunes(std::span<const int> SR) const {
    long long intra = 0, cross = 0, max_rr = 0;
    for (int v : si_)
      for (int u : g_.neighbors(v)) {
        if (in_r_[u]) ++cross;
        else if (std::find(si_.begin(), si_.end(), u) != si_.end()) ++intra;
      }
    for (int v : SR) {
      long long c = 0;
      for (int u : g_.neighbors(v)) c += in_r_[u];
      max_rr = std::max(max_rr, c);
    }
    return familiarity_prune_ssgq_counts(intra, depth(), static_cast<int>(SR.size()), max_rr, cross, p_, q_.k);
  }

  bool eq5_prunes(std::span<const int> SR) const {
    long long s = 0;
    for (int v : SR)
      for (int u : g_.neighbors(v)) s += in_r_[u];
    return familiarity_prune_2_counts(s, depth(), p_, q_.k);
  }

  bool eq4_prunes() const {
    int mn = depth();
    for (int v : si_) {
      int c = 0;
      for (int u : si_)
        if (u != v && g_.adjacent(v, u)) ++c;
      mn = std::min(mn, c);
    }
    return familiarity_prune_1_counts(depth(), mn, q_.k);
  }

  // Per-venue distance pruning against the current incumbent; in_r_ must flag S_R.
  void venue_eq3(std::vector<int>& Q) {
    if (D_ == kInf || !on(Rule::Eq3)) return;
    const int dp = depth();
    std::erase_if(Q, [&](int i) {
      const double dmin = dp >= p_ ? 0.0 : nearest_in_r(d_.venue(qv_[i]));
      if (distance_prune_bound(sums_[dp][i], dp, p_, dmin) >= D_ - kTol) {
        ++stats_.pruned_by(Rule::Eq3);
        if (opt_.on_venue_pruned) opt_.on_venue_pruned(Rule::Eq3, si_, qv_[i]);
        return true;
      }
      return false;
    });
  }

  void emit(Rule r, std::span<const int> SR, std::span<const int> venues, double bound) {
    if (!opt_.on_bound) return;
    BoundEvent ev{r, si_, std::vector<int>(SR.begin(), SR.end()), {}, bound};
    for (int v : venues) ev.venues.push_back(v);
    opt_.on_bound(ev);
  }

  // Ball-level distance pruning followed by per-venue checks; in_r_ must flag S_R.
  std::vector<int> ball_filter(const std::vector<int>& Q, std::span<const int> SR, int ref_venue) {
    std::vector<char> active(qv_.size(), 0);
    for (int i : Q) active[i] = 1;
    std::vector<int> keep;
    const int dp = depth();
    std::vector<Location> sloc;
    for (int s : si_) sloc.push_back(d_.member(s));
    std::vector<double> d_ref;
    if (ref_venue >= 0)
      for (int s : si_) d_ref.push_back(distance(d_.member(s), d_.venue(ref_venue)));
    const BallTree& bt = *balls_;
    std::function<void(int)> visit = [&](int nidx) {
      const auto& nd = bt.node(nidx);
      auto vs = bt.venues_in(nidx);
      if (std::none_of(vs.begin(), vs.end(), [&](int v) { return active[local_[v]] != 0; })) return;
      auto drop_ball = [&](Rule r) {
        ++stats_.pruned_by(r);
        if (opt_.on_venue_pruned)
          for (int v : vs)
            if (active[local_[v]]) opt_.on_venue_pruned(r, si_, v);
      };
      if (D_ != kInf) {
        double frontier = -1.0;
        auto front = [&] {
          if (frontier < 0.0)
            frontier = dp >= p_ ? 0.0 : std::max(0.0, nearest_in_r(nd.ball.center) - nd.ball.radius);
          return frontier;
        };
        if (on(Rule::Otdp) && ref_venue >= 0) {
          double b = otdp_ball_bound(d_ref, distance(d_.venue(ref_venue), nd.ball.center), nd.ball.radius, p_,
                                     front());
          emit(Rule::Otdp, SR, vs, b);
          if (b >= D_ - kTol) {
            drop_ball(Rule::Otdp);
            return;
          }
        }
        if (on(Rule::Itdp)) {
          if (auto b = itdp_bound(pair_sums_.back(), dp, p_, nd.ball.radius, front())) {
            emit(Rule::Itdp, SR, vs, *b);
            if (*b >= D_ - kTol) {
              drop_ball(Rule::Itdp);
              return;
            }
          }
        }
        if (on(Rule::Aldp)) {
          double b = aldp_bound(sloc, nd.ball, p_, front());
          emit(Rule::Aldp, SR, vs, b);
          if (b >= D_ - kTol) {
            drop_ball(Rule::Aldp);
            return;
          }
        }
      }
      if (nd.leaf()) {
        keep.push_back(local_[nd.venue]);
        return;
      }
      visit(nd.left);
      visit(nd.right);
    };
    visit(bt.root());
    std::sort(keep.begin(), keep.end());
    venue_eq3(keep);
    return keep;
  }

  std::optional<std::pair<int, int>> all_pair_pick(std::span<const int> eligible, std::span<const int> qrad) {
    if (eligible.empty() || qrad.empty()) return std::nullopt;
    const int dp = depth();
    Marked em(elig_, eligible);
    std::vector<char> vok(d_.venue_count(), 0);
    for (int i : qrad) vok[qv_[i]] = 1;
    auto sum_at = [&](int venue) { return sums_[dp][local_[venue]]; };
    auto best = best_pair(rt_, *balls_, d_, si_, elig_, vok, q_.t, sum_at, cfg_.degree_ties ? &cfg_.degree : nullptr);
    if (opt_.check_apdo) {
      std::optional<PairChoice> scan;
      for (int v : eligible)
        for (int li : qrad) {
          if (vd(v, li) > q_.t) continue;
          PairChoice c{v, qv_[li], sums_[dp][li] + vd(v, li)};
          if (!scan || pair_before(c, *scan, cfg_.degree_ties ? &cfg_.degree : nullptr)) scan = c;
        }
      bool same = scan.has_value() == best.has_value() &&
                  (!scan || (scan->member == best->member && scan->venue == best->venue));
      if (!same) throw std::logic_error("all-pair ordering disagrees with exhaustive scan");
    }
    if (!best) return std::nullopt;
    return std::make_pair(best->member, best->venue);
  }

  void consider_leaf(const std::vector<int>& Q) {
    if (Q.empty()) return;
    std::vector<int> grp = si_;
    std::sort(grp.begin(), grp.end());
    if (!familiarity_ok(grp, q_.k, q_.mode, g_)) return;
    int bi = -1;
    for (int i : Q)
      if (bi < 0 || sums_[p_][i] < sums_[p_][bi] || (sums_[p_][i] == sums_[p_][bi] && qv_[i] < qv_[bi])) bi = i;
    if (sums_[p_][bi] < D_ - kTol) {
      D_ = sums_[p_][bi];
      best_ = std::move(grp);
      best_venue_ = qv_[bi];
    }
  }

  void frame(std::vector<int> SR, std::vector<char> vis, int theta, std::vector<int> QI, std::vector<int> Qrad) {
    int ref = cfg_.q_ref;
    while (!stop_) {
      if (depth() + static_cast<int>(SR.size()) < p_) break;
      {
        Marked mr(in_r_, SR);
        venue_eq3(QI);
        if (QI.empty()) break;
        if (on(Rule::Eq2) && eq2_prunes(SR)) {
          ++stats_.pruned_by(Rule::Eq2);
          break;
        }
        if (per_vertex() && on(Rule::Eq5) && eq5_prunes(SR)) {
          ++stats_.pruned_by(Rule::Eq5);
          break;
        }
      }
      int pos = -1;
      if (cfg_.ordering == Ordering::Distance) {
        for (std::size_t i = 0; i < SR.size(); ++i)
          if (!vis[i]) {
            pos = static_cast<int>(i);
            break;
          }
      } else {
        std::vector<int> elig;
        for (std::size_t i = 0; i < SR.size(); ++i)
          if (!vis[i]) elig.push_back(SR[i]);
        if (auto pick = all_pair_pick(elig, Qrad)) {
          pos = static_cast<int>(std::lower_bound(SR.begin(), SR.end(), pick->first) - SR.begin());
          ref = pick->second;
        }
      }
      if (pos < 0) {
        if (theta < p_ - 1) {
          ++theta;
          std::fill(vis.begin(), vis.end(), 0);
          continue;
        }
        break;
      }
      vis[pos] = 1;
      const int u = SR[pos];
      if (stats_.generated >= cfg_.state_budget) {
        stop_ = true;
        break;
      }
      ++stats_.generated;
      const bool admitted = sso_admits(si_, u, theta, p_, g_);
      if (cfg_.on_state) {
        std::vector<int> state = si_;
        state.push_back(u);
        std::vector<int> rest;
        for (int v : SR)
          if (v != u) rest.push_back(v);
        cfg_.on_state(state, rest, admitted);
      }
      if (!admitted) continue;
      ++stats_.explored;
      SR.erase(SR.begin() + pos);
      vis.erase(vis.begin() + pos);
      push(u);
      expand_child(SR, vis, theta, QI, Qrad, ref);
      pop();
    }
  }

  void expand_child(const std::vector<int>& SR, const std::vector<char>& vis, int theta, const std::vector<int>& QI,
                    const std::vector<int>& Qrad, int ref) {
    const int u = si_.back();
    std::vector<int> qrad;
    for (int i : Qrad)
      if (vd(u, i) <= q_.t) qrad.push_back(i);
    std::vector<int> qi = child_venues(SR, QI, qrad, ref);
    if (qi.empty()) return;
    if (depth() == p_) consider_leaf(qi);
    else frame(SR, vis, theta, std::move(qi), std::move(qrad));
  }

  // Surviving venues for the child frame; empty when the child is pruned.
  std::vector<int> child_venues(const std::vector<int>& SR, const std::vector<int>& QI, const std::vector<int>& qrad,
                                int ref) {
    Marked mr(in_r_, SR);
    if (per_vertex() && on(Rule::Eq4) && eq4_prunes()) {
      ++stats_.pruned_by(Rule::Eq4);
      return {};
    }
    if (depth() < p_) {
      if (per_vertex() && on(Rule::Eq5) && eq5_prunes(SR)) {
        ++stats_.pruned_by(Rule::Eq5);
        return {};
      }
      if (on(Rule::Eq2) && eq2_prunes(SR)) {
        ++stats_.pruned_by(Rule::Eq2);
        return {};
      }
    }
    std::vector<int> qi;
    std::set_intersection(QI.begin(), QI.end(), qrad.begin(), qrad.end(), std::back_inserter(qi));
    if (cfg_.ball_pruning && !qi.empty()) qi = ball_filter(qi, SR, ref);
    else venue_eq3(qi);
    return qi;
  }

  const Query& q_;
  const SocialGraph& g_;
  const SpatialDataset& d_;
  const RTree& rt_;
  const SearchOptions& opt_;
  Config cfg_;
  std::vector<int> cand_;
  std::vector<int> qv_;
  std::vector<int> local_;
  std::optional<BallTree> balls_;
  int p_ = 1, n_ = 0;

  std::vector<int> si_;
  std::vector<std::vector<double>> sums_;
  std::vector<double> pair_sums_;
  std::vector<char> in_r_, elig_;

  double D_ = kInf;
  std::vector<int> best_;
  int best_venue_ = -1;
  bool stop_ = false;
  SearchStats stats_;
};

class ScopedTimer {
 public:
  explicit ScopedTimer(double& out) : out_(out), t0_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    out_ = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  double& out_;
  std::chrono::steady_clock::time_point t0_;
};

// Member R-Tree from the options, or a freshly built one held in `own`.
inline const RTree& member_tree(const SpatialDataset& d, const SearchOptions& opt, std::optional<RTree>& own) {
  if (opt.member_index) {
    if (opt.member_index->size() != d.member_count()) throw std::invalid_argument("member index does not match dataset");
    return *opt.member_index;
  }
  own.emplace(d.members(), opt.rtree_fanout);
  return *own;
}

inline std::optional<Solution> take_solution(const BranchAndBound& bb, const SearchStats& stats) {
  if (bb.best_venue() < 0) return std::nullopt;
  return Solution{bb.best_group(), bb.best_venue(), bb.incumbent(), stats};
}

inline void accumulate(SearchStats& into, const SearchStats& s) {
  into.explored += s.explored;
  into.generated += s.generated;
  for (std::size_t i = 0; i < kRuleCount; ++i) into.pruned[i] += s.pruned[i];
}

}  // namespace geosoc
