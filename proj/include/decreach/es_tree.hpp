#pragma once

// Even-Shiloach tree: exact distances from (or to) a root up to a depth bound,
// maintained under edge deletions in O(m h) total time.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "decreach/graph.hpp"

namespace decreach {

class EsTree {
 public:
  /// Builds the tree over G[restrict] (all of G when restrict is null). The
  /// restrict set is copied; it is fixed for the lifetime of the tree. If the
  /// root is outside restrict the tree is empty.
  EsTree(const Digraph& g, NodeId root, int depth, Direction dir,
         const NodeSet* restrict = nullptr);

  EsTree(const EsTree&) = delete;
  EsTree& operator=(const EsTree&) = delete;
  EsTree(EsTree&&) noexcept = default;
  EsTree& operator=(EsTree&&) noexcept = default;

  /// Call after `e` has been removed from the graph, once per deletion and in
  /// deletion order. Returns the nodes whose distance rose above the depth bound.
  std::vector<NodeId> notify_deletion(EdgeId e);

  bool contains(NodeId v) const;
  std::optional<int> distance(NodeId v) const;
  /// Parent in the tree (tail of the tree edge for forward trees). kNoNode for
  /// the root and for nodes outside the tree.
  NodeId parent(NodeId v) const;

  NodeId root() const { return root_; }
  int depth() const { return depth_; }
  Direction direction() const { return dir_; }
  bool restricted() const { return restricted_; }
  std::size_t size() const { return in_tree_; }
  std::vector<NodeId> members() const;

  /// Nodes and edges of the (restricted) graph at build time.
  std::size_t universe_nodes() const { return nodes_.size(); }
  std::size_t universe_edges() const { return parents_.size(); }

  /// Scans of arcs inside the universe; this is what the O(mh) bound covers.
  std::uint64_t work() const { return work_; }
  /// Restricted trees only: G-edges looked at while building and dropped
  /// because they leave the universe.
  std::uint64_t extraction_work() const { return extraction_work_; }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct Arc {
    std::uint32_t other;  // local id
    EdgeId edge;
  };

  std::uint32_t local(NodeId v) const;
  void enqueue(std::uint32_t w);
  std::uint32_t child_of(EdgeId e) const;

  const Digraph* g_ = nullptr;
  NodeId root_ = kNoNode;
  int depth_ = 0;
  Direction dir_ = Direction::forward;
  bool restricted_ = false;

  std::vector<NodeId> nodes_;  // local -> global
  std::unordered_map<NodeId, std::uint32_t> local_of_;
  std::uint32_t root_local_ = kNone;

  // CSR copies of the build-time adjacency: candidate parents and children.
  std::vector<std::uint32_t> parent_start_, child_start_;
  std::vector<Arc> parents_, children_;

  std::vector<int> level_;            // depth_ + 1 means absent
  std::vector<EdgeId> parent_edge_;   // kNoEdge for root/absent
  std::vector<std::uint32_t> cursor_; // next candidate-parent slot to try
  std::vector<std::uint8_t> queued_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::size_t in_tree_ = 0;
  std::uint64_t work_ = 0;
  std::uint64_t extraction_work_ = 0;
};

}  // namespace decreach
