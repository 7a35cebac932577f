#pragma once

// Decremental reachability between sampled centers (s and t always among
// them), answered in O(1) from the closure of the center graph.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "decreach/center_graph.hpp"
#include "decreach/center_hierarchy.hpp"
#include "decreach/es_tree.hpp"
#include "decreach/graph.hpp"
#include "decreach/links.hpp"

namespace decreach {

struct EngineConfig {
  NodeId s = 0;
  NodeId t = 0;
  // Tuning pair; when unset the defaults n^{5/3}/m^{2/3} and n^{4/3}/m^{1/3}
  // are used, clamped into 1 <= b <= c <= n.
  std::optional<double> b;
  std::optional<double> c_target;
  double a = 2.0;
  std::uint64_t seed = 1;
  // Explicit level structure. A non-empty c-sequence wins; otherwise k > 0
  // interpolates k values geometrically from c_target down to b.
  std::vector<double> levels;
  int k = 0;
  std::vector<NodeId> extra_centers;
  // Per-call verification of every instrumented invariant. Slow.
  bool audit = false;
};

struct EngineMetrics {
  std::uint64_t global_tree_work = 0;
  std::uint64_t q_tree_work = 0;
  std::uint64_t apu_work = 0;
  std::uint64_t link_work = 0;
  std::uint64_t closure_work = 0;
  std::uint64_t total_work() const {
    return global_tree_work + q_tree_work + apu_work + link_work + closure_work;
  }

  std::size_t deletions = 0;
  std::size_t centers = 0;
  std::size_t top_centers = 0;
  std::size_t center_edges = 0;
  std::size_t link_flips = 0;
  std::size_t q_computations = 0;
  std::size_t q_bound_violations = 0;
  std::size_t apu_states = 0;
  std::size_t apu_calls = 0;
  int max_exit_index = 0;
  int exit_bound = 0;

  // Invariant checks; the audit-only ones stay zero otherwise.
  std::size_t exit_bound_violations = 0;
  std::size_t es_budget_violations = 0;
  std::size_t level_order_violations = 0;
  std::size_t unsafe_removals = 0;          // audit
  std::size_t sandwich_violations = 0;      // audit
  std::size_t apu_charge_violations = 0;
  std::size_t apu_lifetime_violations = 0;
  std::size_t link_monotonicity_violations = 0;  // full snapshot in audit mode
};

/// Resolves config defaults into concrete level parameters for a graph.
HierarchyParams resolve_parameters(std::size_t n, std::size_t m, const EngineConfig& config);

class Engine {
 public:
  /// Takes ownership of the graph. Throws std::invalid_argument on bad config.
  Engine(Digraph graph, const EngineConfig& config);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Deletes (u, v) and brings every structure up to date. Throws GraphError
  /// if the edge is absent.
  void delete_edge(NodeId u, NodeId v);

  /// Whether x reaches y; both must be 1-centers (std::invalid_argument otherwise).
  bool query(NodeId x, NodeId y) const { return closure_.reachable_nodes(x, y); }
  bool query_st() const { return query(config_.s, config_.t); }

  bool is_center(NodeId v) const { return v < centers_.level_of.size() && centers_.is_center(v); }
  const std::vector<NodeId>& centers() const { return closure_.centers(); }
  int center_level(NodeId v) const { return centers_.level_of.at(v); }

  const Digraph& graph() const { return graph_; }
  const HierarchyParams& params() const { return params_; }
  const CenterSets& center_sets() const { return centers_; }
  const LinkTable& links() const { return *links_; }
  const CenterGraph& center_graph() const { return closure_; }
  const EngineConfig& config() const { return config_; }

  EngineMetrics metrics() const;
  const std::vector<QRecord>& q_records() const { return links_->q_records(); }

 private:
  Digraph graph_;
  EngineConfig config_;
  HierarchyParams params_;
  CenterSets centers_;
  std::vector<NodeId> top_centers_;
  std::vector<std::uint32_t> center_index_;  // node -> index in C_1
  std::vector<EsTree> out_trees_, in_trees_;
  std::unique_ptr<LinkTable> links_;
  CenterGraph closure_;
  std::size_t deletions_ = 0;
  std::size_t flips_ = 0;
  std::size_t monotonicity_violations_ = 0;
};

}  // namespace decreach
