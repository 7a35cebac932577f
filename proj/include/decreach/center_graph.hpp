#pragma once

// The graph on 1-centers whose edges are links, with its transitive closure
// maintained under edge removals.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "decreach/graph.hpp"

namespace decreach {

using CenterPair = std::pair<std::uint32_t, std::uint32_t>;  // center indices

/// Closure maintenance keeps, per source, a BFS tree of its reachable set.
/// Removing an edge that is not a tree edge of a source cannot change what
/// that source reaches; sources whose tree loses an edge are re-searched.
class CenterGraph {
 public:
  CenterGraph() = default;
  /// `edges` holds the initial link pairs as center indices.
  CenterGraph(std::vector<NodeId> centers, std::span<const CenterPair> edges);

  std::size_t size() const { return centers_.size(); }
  const std::vector<NodeId>& centers() const { return centers_; }
  std::optional<std::uint32_t> index_of(NodeId v) const;

  bool has_edge(std::uint32_t a, std::uint32_t b) const { return test(adj_, a, b); }
  std::size_t edge_count() const { return edges_; }

  /// Throws std::logic_error if some pair is not currently an edge.
  void remove_edges(std::span<const CenterPair> pairs);

  bool reachable(std::uint32_t a, std::uint32_t b) const { return a == b || test(reach_, a, b); }
  /// Node-id form; throws std::invalid_argument for non-centers.
  bool reachable_nodes(NodeId x, NodeId y) const;

  std::uint64_t work() const { return work_; }
  std::uint64_t recomputations() const { return recomputations_; }

 private:
  bool test(const std::vector<std::uint64_t>& rows, std::uint32_t a, std::uint32_t b) const {
    return (rows[a * words_ + (b >> 6)] >> (b & 63)) & 1u;
  }
  void research(std::uint32_t source);

  std::vector<NodeId> centers_;
  std::vector<std::uint32_t> index_;  // node -> center index, or kNoIndex
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_, reach_;
  std::vector<std::uint32_t> tree_parent_;  // [source * size + v]
  std::size_t edges_ = 0;
  std::uint64_t work_ = 0;
  std::uint64_t recomputations_ = 0;
};

}  // namespace decreach
