#pragma once

#include <span>
#include <vector>

#include "geosoc/core.hpp"
#include "geosoc/rtree.hpp"

namespace geosoc {

struct Ball {
  Location center;
  double radius = 0.0;
};

inline double mindist_point_ball(const Location& u, const Ball& b) {
  return std::max(0.0, distance(u, b.center) - b.radius);
}

inline double mindist_mbr_ball(const Mbr& m, const Ball& b) {
  return std::max(0.0, mindist_point_mbr(b.center, m) - b.radius);
}

// Binary ball tree over venues with one venue per leaf.
class BallTree {
 public:
  struct Node {
    Ball ball;
    int left = -1;
    int right = -1;
    int venue = -1;  // leaf payload
    std::size_t begin = 0, end = 0;  // range into venue order
    bool leaf() const { return venue >= 0; }
  };

  explicit BallTree(const std::vector<Location>& venues) {
    std::vector<int> ids(venues.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    init(std::move(ids), venues);
  }

  // Index only the given venue ids; locations are looked up in `all`.
  BallTree(std::vector<int> ids, const std::vector<Location>& all) { init(std::move(ids), all); }

  int root() const { return root_; }
  const Node& node(int i) const { return nodes_.at(i); }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return order_.size(); }

  std::span<const int> venues_in(int n) const {
    const Node& nd = nodes_.at(n);
    return {order_.data() + nd.begin, nd.end - nd.begin};
  }

 private:
  void init(std::vector<int> ids, const std::vector<Location>& all) {
    if (ids.empty()) throw std::domain_error("ball tree needs at least one venue");
    order_ = std::move(ids);
    loc_ = &all;
    root_ = build(0, order_.size());
    loc_ = nullptr;
  }

  int build(std::size_t b, std::size_t e) {
    const auto& L = *loc_;
    Node nd;
    nd.begin = b;
    nd.end = e;
    if (e - b == 1) {
      nd.venue = order_[b];
      nd.ball = {L.at(nd.venue), 0.0};
      nodes_.push_back(nd);
      return static_cast<int>(nodes_.size()) - 1;
    }
    Mbr box;
    for (std::size_t i = b; i < e; ++i) box.expand(L.at(order_[i]));
    const bool by_x = (box.maxx - box.minx) >= (box.maxy - box.miny);
    std::sort(order_.begin() + b, order_.begin() + e, [&](int u, int v) {
      const Location &lu = L[u], &lv = L[v];
      double a0 = by_x ? lu.x : lu.y, b0 = by_x ? lv.x : lv.y;
      double a1 = by_x ? lu.y : lu.x, b1 = by_x ? lv.y : lv.x;
      if (a0 != b0) return a0 < b0;
      if (a1 != b1) return a1 < b1;
      return u < v;
    });
    const std::size_t mid = b + (e - b) / 2;
    int l = build(b, mid);
    int r = build(mid, e);
    nd.left = l;
    nd.right = r;
    nd.ball.center = box.center();
    for (int c : {l, r})
      nd.ball.radius =
          std::max(nd.ball.radius, distance(nd.ball.center, nodes_[c].ball.center) + nodes_[c].ball.radius);
    for (std::size_t i = b; i < e; ++i)
      nd.ball.radius = std::max(nd.ball.radius, distance(nd.ball.center, L[order_[i]]));
    nodes_.push_back(nd);
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  std::vector<int> order_;
  const std::vector<Location>* loc_ = nullptr;
  int root_ = -1;
};

}  // namespace geosoc
