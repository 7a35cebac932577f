#pragma once

// Ground truth and the O(mn) baseline.

#include <cstdint>
#include <vector>

#include "decreach/es_tree.hpp"
#include "decreach/graph.hpp"

namespace decreach {

/// Plain BFS on the current graph; u reaches itself.
bool static_reachable(const Digraph& g, NodeId u, NodeId v);

/// Single-source reachability via one unbounded ES-tree (depth n - 1).
class EsBaseline {
 public:
  EsBaseline(const Digraph& g, NodeId source);
  /// Call after `e` has been removed from the graph.
  void notify_deletion(EdgeId e) { tree_.notify_deletion(e); }
  bool reachable(NodeId v) const { return tree_.contains(v); }
  std::size_t reachable_count() const { return tree_.size(); }
  std::uint64_t work() const { return tree_.work(); }

 private:
  EsTree tree_;
};

inline constexpr std::size_t kClosureMaxNodes = 300;

/// Row-major n x n reachability matrix (reflexive). Throws
/// std::invalid_argument when n > kClosureMaxNodes.
std::vector<std::uint8_t> full_closure(const Digraph& g);

/// Exact reachability between a fixed set of sources and all nodes, kept
/// under deletions by re-running BFS only for sources whose BFS tree used the
/// deleted edge. Used to cross-check engines on larger traces.
class ClosureOracle {
 public:
  ClosureOracle(const Digraph& g, std::vector<NodeId> sources);
  void notify_deletion(EdgeId e);
  /// `source` must be one of the constructor's sources.
  bool reachable(NodeId source, NodeId v) const;
  std::uint64_t work() const { return work_; }

 private:
  void search(std::size_t i);

  const Digraph* g_;
  std::vector<NodeId> sources_;
  std::vector<std::uint32_t> slot_;            // node -> source slot
  std::vector<std::vector<EdgeId>> tree_edge_;  // per source, indexed by node
  std::uint64_t work_ = 0;
};

}  // namespace decreach
