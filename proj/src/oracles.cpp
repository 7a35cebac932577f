#include "decreach/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace decreach {

namespace {
constexpr std::uint32_t kNoSlot = 0xffffffffu;

int baseline_depth(const Digraph& g) {
  return std::max(1, static_cast<int>(g.node_count()) - 1);
}
}  // namespace

bool static_reachable(const Digraph& g, NodeId u, NodeId v) {
  if (u == v) return true;
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::vector<NodeId> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    const NodeId w = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(w)) {
      const NodeId z = g.head(e);
      if (z == v) return true;
      if (!seen[z]) {
        seen[z] = 1;
        stack.push_back(z);
      }
    }
  }
  return false;
}

EsBaseline::EsBaseline(const Digraph& g, NodeId source)
    : tree_(g, source, baseline_depth(g), Direction::forward) {}

std::vector<std::uint8_t> full_closure(const Digraph& g) {
  const std::size_t n = g.node_count();
  if (n > kClosureMaxNodes) throw std::invalid_argument("full_closure: graph above size guard");
  // Warshall on a boolean matrix, independent of the BFS code paths.
  std::vector<std::uint8_t> r(n * n, 0);
  for (std::size_t v = 0; v < n; ++v) r[v * n + v] = 1;
  for (const Edge& e : g.edges()) r[e.tail * n + e.head] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) r[i * n + j] |= r[k * n + j];
    }
  }
  return r;
}

ClosureOracle::ClosureOracle(const Digraph& g, std::vector<NodeId> sources)
    : g_(&g), sources_(std::move(sources)), slot_(g.node_count(), kNoSlot) {
  tree_edge_.resize(sources_.size());
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (sources_[i] >= g.node_count()) throw std::out_of_range("ClosureOracle: bad source");
    slot_[sources_[i]] = static_cast<std::uint32_t>(i);
    search(i);
  }
}

void ClosureOracle::search(std::size_t i) {
  auto& parent = tree_edge_[i];
  parent.assign(g_->node_count(), kNoEdge);
  std::vector<std::uint8_t> seen(g_->node_count(), 0);
  std::vector<NodeId> queue{sources_[i]};
  seen[sources_[i]] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (EdgeId e : g_->out_edges(queue[q])) {
      ++work_;
      const NodeId z = g_->head(e);
      if (seen[z]) continue;
      seen[z] = 1;
      parent[z] = e;
      queue.push_back(z);
    }
  }
  // The source marks itself with a sentinel distinct from kNoEdge.
  parent[sources_[i]] = kNoEdge - 1;
}

void ClosureOracle::notify_deletion(EdgeId e) {
  const NodeId v = g_->head(e);
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    if (tree_edge_[i][v] == e) search(i);
  }
}

bool ClosureOracle::reachable(NodeId source, NodeId v) const {
  if (source >= slot_.size() || slot_[source] == kNoSlot) {
    throw std::invalid_argument("ClosureOracle: not a tracked source");
  }
  return tree_edge_[slot_[source]][v] != kNoEdge;
}

}  // namespace decreach
