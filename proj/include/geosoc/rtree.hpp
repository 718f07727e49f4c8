#pragma once

#include <numeric>
#include <queue>
#include <vector>

#include "geosoc/core.hpp"

namespace geosoc {

struct Mbr {
  double minx = kInf, miny = kInf, maxx = -kInf, maxy = -kInf;

  static Mbr of(const Location& p) { return {p.x, p.y, p.x, p.y}; }
  void expand(const Location& p) {
    minx = std::min(minx, p.x);
    miny = std::min(miny, p.y);
    maxx = std::max(maxx, p.x);
    maxy = std::max(maxy, p.y);
  }
  void expand(const Mbr& o) {
    minx = std::min(minx, o.minx);
    miny = std::min(miny, o.miny);
    maxx = std::max(maxx, o.maxx);
    maxy = std::max(maxy, o.maxy);
  }
  bool contains(const Location& p) const { return p.x >= minx && p.x <= maxx && p.y >= miny && p.y <= maxy; }
  bool contains(const Mbr& o) const {
    return o.minx >= minx && o.maxx <= maxx && o.miny >= miny && o.maxy <= maxy;
  }
  Location center() const { return {0.5 * (minx + maxx), 0.5 * (miny + maxy)}; }
};

inline double mindist_point_mbr(const Location& a, const Mbr& m) {
  const double dx = std::max({m.minx - a.x, 0.0, a.x - m.maxx});
  const double dy = std::max({m.miny - a.y, 0.0, a.y - m.maxy});
  return planar_norm(dx, dy);
}

// Static R-Tree built by sort-tile-recursive packing.
class RTree {
 public:
  struct Entry {
    int id;
    Location loc;
  };
  struct Node {
    Mbr mbr;
    bool leaf = true;
    std::vector<int> children;  // entry indices for leaves, node indices otherwise
  };

  RTree() = default;

  explicit RTree(const std::vector<Location>& points, std::size_t max_fanout = 16)
      : RTree(make_entries(points), max_fanout) {}

  RTree(std::vector<Entry> entries, std::size_t max_fanout) : entries_(std::move(entries)), fanout_(max_fanout) {
    if (fanout_ < 2) throw std::invalid_argument("fanout must be at least 2");
    if (entries_.empty()) return;
    std::vector<int> items(entries_.size());
    std::iota(items.begin(), items.end(), 0);
    auto groups = pack(items, [&](int e) { return entries_[e].loc; });
    std::vector<int> level;
    for (auto& grp : groups) {
      Node nd;
      nd.leaf = true;
      for (int e : grp) nd.mbr.expand(entries_[e].loc);
      nd.children = std::move(grp);
      level.push_back(static_cast<int>(nodes_.size()));
      nodes_.push_back(std::move(nd));
    }
    while (level.size() > 1) {
      auto upper = pack(level, [&](int n) { return nodes_[n].mbr.center(); });
      std::vector<int> next;
      for (auto& grp : upper) {
        Node nd;
        nd.leaf = false;
        for (int c : grp) nd.mbr.expand(nodes_[c].mbr);
        nd.children = std::move(grp);
        next.push_back(static_cast<int>(nodes_.size()));
        nodes_.push_back(std::move(nd));
      }
      level = std::move(next);
    }
    root_ = level.front();
  }

  bool empty() const { return root_ < 0; }
  int root() const { return root_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t fanout() const { return fanout_; }
  const Node& node(int i) const { return nodes_.at(i); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Entry& entry(int i) const { return entries_.at(i); }

  std::vector<int> range_query(const Location& c, double radius) const {
    std::vector<int> out;
    if (empty()) return out;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const Node& nd = nodes_[stack.back()];
      stack.pop_back();
      if (mindist_point_mbr(c, nd.mbr) > radius) continue;
      if (nd.leaf) {
        for (int e : nd.children)
          if (distance(c, entries_[e].loc) <= radius) out.push_back(entries_[e].id);
      } else {
        stack.insert(stack.end(), nd.children.begin(), nd.children.end());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Incremental best-first browsing; equal distances come out by ascending id.
  class Browser {
   public:
    Browser(const RTree& t, Location c) : t_(&t), c_(c) {
      if (!t.empty()) heap_.push({mindist_point_mbr(c, t.node(t.root()).mbr), 0, t.root(), -1});
    }
    std::optional<std::pair<int, double>> next() {
      while (!heap_.empty()) {
        Item it = heap_.top();
        heap_.pop();
        if (it.kind == 1) return std::make_pair(it.id, it.key);
        const Node& nd = t_->node(it.index);
        for (int ch : nd.children) {
          if (nd.leaf) {
            const Entry& e = t_->entry(ch);
            heap_.push({distance(c_, e.loc), 1, ch, e.id});
          } else {
            heap_.push({mindist_point_mbr(c_, t_->node(ch).mbr), 0, ch, -1});
          }
        }
      }
      return std::nullopt;
    }

   private:
    struct Item {
      double key;
      int kind;  // 0 node, 1 entry
      int index;
      int id;
      bool operator>(const Item& o) const {
        if (key != o.key) return key > o.key;
        if (kind != o.kind) return kind > o.kind;
        return id > o.id;
      }
    };
    const RTree* t_;
    Location c_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
  };

  Browser browse(const Location& c) const { return Browser(*this, c); }

  // Nearest indexed id accepted by pred, with its distance.
  template <class Pred>
  std::optional<std::pair<int, double>> nearest_if(const Location& c, Pred&& pred) const {
    Browser b(*this, c);
    while (auto nx = b.next())
      if (pred(nx->first)) return nx;
    return std::nullopt;
  }

 private:
  static std::vector<Entry> make_entries(const std::vector<Location>& pts) {
    std::vector<Entry> es;
    es.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) es.push_back({static_cast<int>(i), pts[i]});
    return es;
  }

  static std::vector<std::pair<std::size_t, std::size_t>> even_split(std::size_t n, std::size_t parts) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < parts; ++i) {
      std::size_t len = n / parts + (i < n % parts ? 1 : 0);
      out.emplace_back(begin, begin + len);
      begin += len;
    }
    return out;
  }

  template <class Key>
  std::vector<std::vector<int>> pack(std::vector<int> items, Key key) const {
    const std::size_t n = items.size();
    const std::size_t chunks = (n + fanout_ - 1) / fanout_;
    const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(chunks))));
    auto by = [&](bool xfirst) {
      return [&, xfirst](int a, int b) {
        Location la = key(a), lb = key(b);
        double a0 = xfirst ? la.x : la.y, b0 = xfirst ? lb.x : lb.y;
        double a1 = xfirst ? la.y : la.x, b1 = xfirst ? lb.y : lb.x;
        if (a0 != b0) return a0 < b0;
        if (a1 != b1) return a1 < b1;
        return a < b;
      };
    };
    std::sort(items.begin(), items.end(), by(true));
    std::vector<std::vector<int>> groups;
    for (auto [sb, se] : even_split(n, slices)) {
      std::sort(items.begin() + sb, items.begin() + se, by(false));
      const std::size_t len = se - sb;
      for (auto [cb, ce] : even_split(len, (len + fanout_ - 1) / fanout_))
        groups.emplace_back(items.begin() + sb + cb, items.begin() + sb + ce);
    }
    return groups;
  }

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
  std::size_t fanout_ = 16;
  int root_ = -1;
};

}  // namespace geosoc
