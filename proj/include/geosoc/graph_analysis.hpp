#pragma once

#include <map>
#include <vector>

#include "geosoc/core.hpp"

namespace geosoc {

struct InducedSubgraph {
  std::vector<int> vertices;  // surviving original ids, ascending
  SocialGraph graph;          // same vertex ids; removed vertices are isolated
  bool contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

// (p-k-1)-core by repeated peeling of vertices whose remaining degree is too small.
inline InducedSubgraph core_decompose(const SocialGraph& g, int p, int k) {
  if (k < 0 || k > p - 1) throw std::invalid_argument("k must lie in [0, p-1]");
  const int n = static_cast<int>(g.vertex_count());
  const int need = p - k - 1;
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<int> stack;
  for (int v = n - 1; v >= 0; --v) {
    deg[v] = g.degree(v);
    if (deg[v] < need) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (removed[u]) continue;
      if (--deg[u] < need) {
        removed[u] = 1;
        stack.push_back(u);
      }
    }
  }
  InducedSubgraph out;
  out.graph = SocialGraph(g.vertex_count());
  for (int v = 0; v < n; ++v) {
    if (removed[v]) continue;
    out.vertices.push_back(v);
    for (int u : g.neighbors(v))
      if (u > v && !removed[u]) out.graph.add_edge(v, u);
  }
  return out;
}

struct DegreePartition {
  std::vector<std::vector<int>> classes;  // ascending degree
  std::vector<int> class_degree;

  std::size_t m() const { return classes.empty() ? 0 : classes.size() - 1; }
};

inline DegreePartition degree_partition(const SocialGraph& g) {
  std::map<int, std::vector<int>> by_degree;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) by_degree[g.degree(v)].push_back(v);
  DegreePartition dp;
  for (auto& [deg, vs] : by_degree) {
    dp.class_degree.push_back(deg);
    dp.classes.push_back(std::move(vs));
  }
  return dp;
}

// Classes are indexed so that index 0 is reserved for isolated vertices (an
// empty class when there are none); u in D_i and v in D_j must be adjacent
// exactly when i + j > m.
inline bool is_threshold_graph(const SocialGraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  if (n == 0) return true;
  auto dp = degree_partition(g);
  const int offset = dp.class_degree.front() == 0 ? 0 : 1;
  const int m = static_cast<int>(dp.classes.size()) - 1 + offset;
  std::vector<int> idx(n);
  for (std::size_t c = 0; c < dp.classes.size(); ++c)
    for (int v : dp.classes[c]) idx[v] = static_cast<int>(c) + offset;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != (idx[u] + idx[v] > m)) return false;
  return true;
}

}  // namespace geosoc
