#pragma once

// Output-sensitive approximate path unions for a fixed source x and depth h.
//
// The structure keeps a shrinking set R of candidate nodes that always
// contains every node within distance h of x. A query for y returns F with
//
//     P(x, y, h) ⊆ F ⊆ P(x, y, (log2 m + 3) h)
//
// and removes from R nodes it has proven to be farther than h from x. Work
// per query is proportional to the edges induced by F plus the edges incident
// to removed nodes; the O(m) remainder is paid once per structure.

#include <cstdint>
#include <vector>

#include "decreach/graph.hpp"

namespace decreach {

struct ApuOptions {
  /// Recompute |E(F)|, |E(X,R)|+|E(R,X)| and the distance of every removed
  /// node on each call. Costs extra BFS work that is not counted in scans.
  bool audit = false;
};

struct ApuCallRecord {
  NodeId target = kNoNode;
  int exit_index = 0;                      // i*, the first i passing the doubling test
  std::vector<std::size_t> ball_nodes;     // |B_i|, i = 1..i*
  std::vector<std::uint64_t> ball_edges;   // edges traversed while growing B_1..B_i
  std::size_t result_size = 0;             // |F|
  std::size_t removed = 0;                 // |X|
  std::uint64_t scans = 0;                 // everything, incl. lazy adjacency upkeep
  std::uint64_t search_scans = 0;          // backward and forward search edges only
  std::size_t result_edges = 0;            // |E(F)|
  std::size_t removed_edges = 0;           // |E(X,R)| + |E(R,X)|, R before removal
  std::size_t unsafe_removals = 0;         // removed nodes within distance h of x; audit only
};

class ApproxPathUnion {
 public:
  ApproxPathUnion(const Digraph& g, NodeId x, int h, ApuOptions options = {});

  /// Returns F sorted ascending; empty when x cannot reach y within the
  /// approximation horizon.
  std::vector<NodeId> query(NodeId y);

  /// R needs no repair under deletions; this only counts them.
  void on_deletion(EdgeId) { ++deletions_seen_; }

  NodeId source() const { return x_; }
  int depth() const { return h_; }
  const NodeSet& remaining() const { return remaining_; }

  /// ceil(log2 m) + 1 for the initial m, but at least 2.
  int exit_bound() const { return exit_bound_; }
  double log_m() const { return log_m_; }

  std::size_t calls() const { return calls_; }
  int max_exit_index() const { return max_exit_index_; }
  std::uint64_t total_scans() const { return total_scans_; }
  std::uint64_t total_result_edges() const { return total_result_edges_; }
  std::uint64_t deletions_seen() const { return deletions_seen_; }
  const ApuCallRecord& last_call() const { return last_; }
  /// Every node ever removed, in removal order.
  const std::vector<NodeId>& removal_log() const { return removal_log_; }
  std::size_t unsafe_removals() const { return unsafe_removals_; }
  /// Calls whose search scans exceeded kChargeFactor times the charged budget.
  std::size_t charge_violations() const { return charge_violations_; }

  /// Lifetime budget 8 (m + sum |E(F_i)| + n).
  std::uint64_t lifetime_budget() const;

  /// Throws std::logic_error unless R contains every node within distance h
  /// of x in the current graph and no removal so far was unsafe.
  void assert_safety() const;

  static constexpr std::uint64_t kChargeFactor = 8;

 private:
  void ensure_copied(NodeId w);
  void grow(int limit);
  void reset_scratch();

  const Digraph* g_;
  NodeId x_;
  int h_;
  ApuOptions options_;
  int exit_bound_ = 2;
  double log_m_ = 0.0;

  NodeSet remaining_;
  // Lazily copied in-adjacency of G[R]; entries leaving G[R] are purged on sight.
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::uint8_t> copied_;

  // Per-call scratch, reset through the touched list.
  std::vector<int> to_target_;         // dist to y in G[R]
  std::vector<std::uint32_t> slot_;    // position in order_
  std::vector<NodeId> order_;
  std::size_t frontier_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> traversed_;  // (tail slot, head slot)
  std::uint64_t call_scans_ = 0;
  std::uint64_t call_search_scans_ = 0;

  ApuCallRecord last_;
  std::size_t calls_ = 0;
  int max_exit_index_ = 0;
  std::uint64_t total_scans_ = 0;
  std::uint64_t total_result_edges_ = 0;
  std::uint64_t deletions_seen_ = 0;
  std::vector<NodeId> removal_log_;
  std::size_t unsafe_removals_ = 0;
  std::size_t charge_violations_ = 0;
};

}  // namespace decreach
