#pragma once

// Test-only helpers. The oracles here deliberately avoid the library's BFS
// and adjacency code: they work from plain edge lists.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "decreach/graph.hpp"

namespace testing {

using decreach::Edge;
using decreach::NodeId;

inline std::vector<Edge> random_edges(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  m = std::min(m, n * (n - 1));
  std::set<std::pair<NodeId, NodeId>> chosen;
  std::vector<Edge> out;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  while (out.size() < m) {
    const NodeId u = pick(rng), v = pick(rng);
    if (u == v || !chosen.insert({u, v}).second) continue;
    out.push_back({u, v});
  }
  return out;
}

inline std::vector<Edge> shuffled(std::vector<Edge> edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  return edges;
}

inline constexpr int kInf = std::numeric_limits<int>::max();

/// Unit-weight Dijkstra over an edge list, restricted to `allowed` (empty =
/// all). reverse = distances to src.
inline std::vector<int> dijkstra(std::size_t n, const std::vector<Edge>& edges, NodeId src,
                                 bool reverse = false,
                                 const std::vector<std::uint8_t>& allowed = {}) {
  auto ok = [&](NodeId v) { return allowed.empty() || allowed[v]; };
  std::vector<int> dist(n, kInf);
  if (!ok(src)) return dist;
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : edges) {
    if (!ok(e.tail) || !ok(e.head)) continue;
    if (reverse) {
      adj[e.head].push_back(e.tail);
    } else {
      adj[e.tail].push_back(e.head);
    }
  }
  using Item = std::pair<int, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (NodeId v : adj[u]) {
      if (d + 1 < dist[v]) {
        dist[v] = d + 1;
        pq.push({d + 1, v});
      }
    }
  }
  return dist;
}

/// {v : dist(x,v) + dist(v,y) <= h} from two Dijkstra runs.
inline std::vector<NodeId> path_union_oracle(std::size_t n, const std::vector<Edge>& edges,
                                             NodeId x, NodeId y, long long h) {
  const auto dx = dijkstra(n, edges, x);
  const auto dy = dijkstra(n, edges, y, true);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (dx[v] != kInf && dy[v] != kInf && static_cast<long long>(dx[v]) + dy[v] <= h) {
      out.push_back(v);
    }
  }
  return out;
}

/// Reflexive transitive closure by Floyd-Warshall over an adjacency matrix.
inline std::vector<std::vector<bool>> closure(std::size_t n,
                                              const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (auto [a, b] : arcs) r[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

inline std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const Edge& e : edges) arcs.emplace_back(e.tail, e.head);
  return closure(n, arcs);
}

/// Removes (u,v) from a plain edge list.
inline void erase_edge(std::vector<Edge>& edges, Edge e) {
  edges.erase(std::remove(edges.begin(), edges.end(), e), edges.end());
}

inline bool subset(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace testing
