#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geosoc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Location {
  double x = 0.0;
  double y = 0.0;
};

inline double planar_norm(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

inline double distance(const Location& a, const Location& b) {
  return planar_norm(a.x - b.x, a.y - b.y);
}

// Undirected simple graph over vertices 0..n-1 with sorted adjacency lists.
class SocialGraph {
 public:
  SocialGraph() = default;
  explicit SocialGraph(std::size_t n) : adj_(n) {}

  SocialGraph(std::size_t n, const std::vector<std::pair<int, int>>& edges) : adj_(n) {
    for (auto [u, v] : edges) {
      check_pair(u, v);
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }

  void add_edge(int u, int v) {
    check_pair(u, v);
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
  }

  std::size_t vertex_count() const { return adj_.size(); }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  bool adjacent(int u, int v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& nb : adj_) s += nb.size();
    return s / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < static_cast<int>(adj_.size()); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  void check_pair(int u, int v) const {
    const int n = static_cast<int>(adj_.size());
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
  }
  static void insert_sorted(std::vector<int>& nb, int v) {
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) nb.insert(it, v);
  }

  std::vector<std::vector<int>> adj_;
};

// Members and venues are addressed by dense indices; external labels are kept
// for reporting and must be distinct across both tables.
class SpatialDataset {
 public:
  SpatialDataset() = default;
  SpatialDataset(std::vector<Location> members, std::vector<Location> venues)
      : members_(std::move(members)), venues_(std::move(venues)) {
    for (std::size_t i = 0; i < members_.size(); ++i) member_labels_.push_back(static_cast<long long>(i));
    for (std::size_t j = 0; j < venues_.size(); ++j)
      venue_labels_.push_back(static_cast<long long>(members_.size() + j));
    validate();
  }
  SpatialDataset(std::vector<Location> members, std::vector<Location> venues,
                 std::vector<long long> member_labels, std::vector<long long> venue_labels)
      : members_(std::move(members)),
        venues_(std::move(venues)),
        member_labels_(std::move(member_labels)),
        venue_labels_(std::move(venue_labels)) {
    validate();
  }

  std::size_t member_count() const { return members_.size(); }
  std::size_t venue_count() const { return venues_.size(); }
  const Location& member(int v) const { return members_.at(v); }
  const Location& venue(int q) const { return venues_.at(q); }
  const std::vector<Location>& members() const { return members_; }
  const std::vector<Location>& venues() const { return venues_; }
  long long member_label(int v) const { return member_labels_.at(v); }
  long long venue_label(int q) const { return venue_labels_.at(q); }

  double dist(int member, int venue) const { return distance(members_.at(member), venues_.at(venue)); }

 private:
  void validate() const {
    if (member_labels_.size() != members_.size() || venue_labels_.size() != venues_.size())
      throw std::invalid_argument("label table size mismatch");
    for (const auto* tab : {&members_, &venues_})
      for (const auto& l : *tab)
        if (!std::isfinite(l.x) || !std::isfinite(l.y)) throw std::invalid_argument("non-finite coordinate");
    std::vector<long long> all(member_labels_);
    all.insert(all.end(), venue_labels_.begin(), venue_labels_.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
      throw std::invalid_argument("member and venue ids must be distinct");
  }

  std::vector<Location> members_;
  std::vector<Location> venues_;
  std::vector<long long> member_labels_;
  std::vector<long long> venue_labels_;
};

enum class FamiliarityMode { PerVertex, Average };

struct Query {
  int p = 1;
  int k = 0;
  double t = 1.0;
  std::vector<int> venues;
  FamiliarityMode mode = FamiliarityMode::PerVertex;

  Query(int p_, int k_, double t_, std::vector<int> venues_, FamiliarityMode mode_)
      : p(p_), k(k_), t(t_), venues(std::move(venues_)), mode(mode_) {
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    if (k < 0 || k > p - 1) throw std::invalid_argument("k must lie in [0, p-1]");
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
    if (venues.empty()) throw std::invalid_argument("venue list is empty");
    auto sorted = venues;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate venue in query");
  }

  static Query ssgq(int p, int k, double t, int venue, FamiliarityMode m = FamiliarityMode::Average) {
    return Query(p, k, t, {venue}, m);
  }
  static Query mrgq(int p, int k, double t, std::vector<int> venues,
                    FamiliarityMode m = FamiliarityMode::PerVertex) {
    return Query(p, k, t, std::move(venues), m);
  }
};

enum class Rule : std::size_t { Eq2, Eq3, Eq4, Eq5, Otdp, Itdp, Aldp };
inline constexpr std::size_t kRuleCount = 7;
inline constexpr std::array<Rule, kRuleCount> kAllRules = {Rule::Eq2,  Rule::Eq3,  Rule::Eq4, Rule::Eq5,
                                                          Rule::Otdp, Rule::Itdp, Rule::Aldp};

inline std::string_view rule_name(Rule r) {
  constexpr std::array<std::string_view, kRuleCount> names = {"eq2", "eq3", "eq4", "eq5", "otdp", "itdp", "aldp"};
  return names[static_cast<std::size_t>(r)];
}

inline std::optional<Rule> parse_rule(std::string_view s) {
  for (Rule r : kAllRules)
    if (rule_name(r) == s) return r;
  return std::nullopt;
}

struct PruneConfig {
  std::array<bool, kRuleCount> on{true, true, true, true, true, true, true};

  bool enabled(Rule r) const { return on[static_cast<std::size_t>(r)]; }
  PruneConfig& set(Rule r, bool v) {
    on[static_cast<std::size_t>(r)] = v;
    return *this;
  }
  PruneConfig without(Rule r) const { return PruneConfig(*this).set(r, false); }
  static PruneConfig all() { return {}; }
  static PruneConfig none() {
    PruneConfig c;
    c.on.fill(false);
    return c;
  }
};

struct SearchStats {
  std::uint64_t explored = 0;   // branch-and-bound nodes (insertions into S_I)
  std::uint64_t generated = 0;  // candidate states examined, admitted or not
  std::array<std::uint64_t, kRuleCount> pruned{};
  double elapsed_ms = 0.0;

  std::uint64_t& pruned_by(Rule r) { return pruned[static_cast<std::size_t>(r)]; }
  std::uint64_t pruned_by(Rule r) const { return pruned[static_cast<std::size_t>(r)]; }
};

struct Solution {
  std::vector<int> group;  // sorted member indices
  int venue = -1;
  double total_distance = kInf;
  SearchStats stats;
};

// Strict total order used to pick between equally good answers.
inline bool precedes(double total_a, const std::vector<int>& group_a, int venue_a, double total_b,
                     const std::vector<int>& group_b, int venue_b) {
  if (total_a != total_b) return total_a < total_b;
  if (group_a != group_b) return group_a < group_b;
  return venue_a < venue_b;
}

inline int unfamiliar_count(int v, const std::vector<int>& F, const SocialGraph& g) {
  if (std::find(F.begin(), F.end(), v) == F.end())
    throw std::domain_error("vertex " + std::to_string(v) + " is not in the group");
  int c = 0;
  for (int u : F)
    if (u != v && !g.adjacent(v, u)) ++c;
  return c;
}

// Sum over S of |N_v ∩ S|, i.e. twice the number of edges inside S.
inline int internal_degree_sum(const std::vector<int>& S, const SocialGraph& g) {
  int s = 0;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (g.adjacent(S[i], S[j])) s += 2;
  return s;
}

inline double avg_acquainted(const std::vector<int>& S, const SocialGraph& g) {
  if (S.empty()) return 0.0;
  return static_cast<double>(internal_degree_sum(S, g)) / static_cast<double>(S.size());
}

// Familiarity part of feasibility only.
inline bool familiarity_ok(const std::vector<int>& F, int k, FamiliarityMode mode, const SocialGraph& g) {
  const int n = static_cast<int>(F.size());
  if (mode == FamiliarityMode::PerVertex) {
    for (int v : F) {
      int acquainted = 0;
      for (int u : F)
        if (u != v && g.adjacent(v, u)) ++acquainted;
      if (n - 1 - acquainted > k) return false;
    }
    return true;
  }
  // mean unfamiliar <= k  <=>  n(n-1) - internal_degree_sum <= k n
  return static_cast<long long>(n) * (n - 1) - internal_degree_sum(F, g) <= static_cast<long long>(k) * n;
}

inline bool is_feasible(const std::vector<int>& F, int venue, const Query& q, const SocialGraph& g,
                        const SpatialDataset& d) {
  auto sorted = F;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (static_cast<int>(sorted.size()) != q.p || F.size() != sorted.size())
    throw std::domain_error("group size differs from p");
  for (int v : sorted)
    if (d.dist(v, venue) > q.t) return false;
  return familiarity_ok(sorted, q.k, q.mode, g);
}

inline double total_distance(const std::vector<int>& F, int venue, const SpatialDataset& d) {
  double s = 0.0;
  for (int v : F) s += d.dist(v, venue);
  return s;
}

}  // namespace geosoc
