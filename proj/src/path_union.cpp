#include "decreach/path_union.hpp"

#include <stdexcept>

namespace decreach {

std::vector<NodeId> path_union(const Digraph& g, NodeId x, NodeId y, int h) {
  if (h < 0) throw std::invalid_argument("path_union: negative depth");
  const BfsResult from_x = bounded_bfs(g, x, h, Direction::forward);
  if (!from_x.contains(y)) return {};
  const BfsResult to_y = bounded_bfs(g, y, h, Direction::reverse);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (from_x.contains(v) && to_y.contains(v) && from_x.dist[v] + to_y.dist[v] <= h) {
      out.push_back(v);
    }
  }
  return out;
}

namespace {

// Walks, not simple paths: x -> a -> v -> a -> y puts v in the union even
// though no simple path of that length passes through v.
struct WalkEnumerator {
  const Digraph& g;
  NodeId target;
  std::vector<std::vector<char>> can_finish;  // [left][v]: some walk v -> target of <= left edges
  std::vector<NodeId> stack;
  std::vector<char> in_union;

  void extend(NodeId v, int left) {
    if (v == target) {
      for (NodeId w : stack) in_union[w] = 1;
    }
    if (left == 0) return;
    for (EdgeId e : g.out_edges(v)) {
      const NodeId w = g.head(e);
      if (!can_finish[static_cast<std::size_t>(left - 1)][w]) continue;
      stack.push_back(w);
      extend(w, left - 1);
      stack.pop_back();
    }
  }
};

}  // namespace

std::vector<NodeId> brute_force_path_union(const Digraph& g, NodeId x, NodeId y, int h) {
  if (g.node_count() > kBruteForceMaxNodes || h > kBruteForceMaxDepth) {
    throw std::invalid_argument("brute_force_path_union: input above size guard");
  }
  if (h < 0) throw std::invalid_argument("brute_force_path_union: negative depth");
  const std::size_t n = g.node_count();
  // Prune prefixes that cannot end at y in time; the table is filled edge by
  // edge, one extra step per row.
  std::vector<std::vector<char>> finish(static_cast<std::size_t>(h) + 1, std::vector<char>(n, 0));
  finish[0][y] = 1;
  for (std::size_t l = 1; l < finish.size(); ++l) {
    finish[l] = finish[l - 1];
    for (NodeId v = 0; v < n; ++v) {
      for (EdgeId e : g.out_edges(v)) {
        if (finish[l - 1][g.head(e)]) finish[l][v] = 1;
      }
    }
  }
  WalkEnumerator we{g, y, std::move(finish), {x}, std::vector<char>(n, 0)};
  if (we.can_finish[static_cast<std::size_t>(h)][x]) we.extend(x, h);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (we.in_union[v]) out.push_back(v);
  }
  return out;
}

}  // namespace decreach
