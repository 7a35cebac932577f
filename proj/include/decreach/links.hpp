#pragma once

// Links between centers.
//
// For centers x, y let l = max(level(x), level(y)). Pairs with l = k are
// linked by the global depth-h_k trees, which the engine drives through
// unlink(). For l < k, x is linked to y while some (l+1)-center z has x linked
// to z and z linked to y. Once no such z is left, Q(x, y, l) is computed a
// single time from x's approximate path union for depth h_l, and from then on
// the pair is linked exactly while y stays in an ES-tree of depth h_l rooted
// at x inside G[Q].
//
// Links only ever go from linked to unlinked. A certifier z of (x, y) is
// tracked implicitly as "link(x,z) and link(z,y) both still hold", so each
// pair keeps a counter that drops once, at the first of the two flips.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "decreach/approx_path_union.hpp"
#include "decreach/center_graph.hpp"
#include "decreach/center_hierarchy.hpp"
#include "decreach/es_tree.hpp"

namespace decreach {

struct QRecord {
  NodeId x = kNoNode;
  NodeId y = kNoNode;
  int level = 0;
  std::size_t size = 0;
  double bound = 0.0;  // n / c_{l+1}
  bool linked = false;
};

struct EsBudgetCheck {
  std::uint64_t work = 0;
  std::uint64_t budget = 0;  // kEsBudgetFactor * (|E| + |V|) * h of the tree's universe
};

inline constexpr std::uint64_t kEsBudgetFactor = 10;
EsBudgetCheck es_budget(const EsTree& t);

class LinkTable {
 public:
  /// top_linked(a, b) supplies the initial state of every level-k pair.
  template <class TopLinked>
  LinkTable(const Digraph& g, const HierarchyParams& params, const CenterSets& centers,
            bool audit, TopLinked&& top_linked);

  LinkTable(const LinkTable&) = delete;
  LinkTable& operator=(const LinkTable&) = delete;

  std::size_t center_count() const { return nodes_.size(); }
  const std::vector<NodeId>& center_nodes() const { return nodes_; }
  int center_level(std::uint32_t a) const { return level_[a]; }
  int pair_level(std::uint32_t a, std::uint32_t b) const {
    return std::max(level_[a], level_[b]);
  }
  bool linked(std::uint32_t a, std::uint32_t b) const { return pairs_[index(a, b)].linked; }
  bool q_computed(std::uint32_t a, std::uint32_t b) const {
    return pairs_[index(a, b)].q_state != QState::none;
  }
  std::uint32_t certifier_count(std::uint32_t a, std::uint32_t b) const {
    return pairs_[index(a, b)].certifiers;
  }
  /// Current linked pairs, for seeding the center graph.
  std::vector<CenterPair> linked_pairs() const;

  // Deletion-event pipeline. The caller removes the edge from the graph,
  // reports top-level evictions through unlink(), then calls
  // notify_q_trees() and recompute_level(l) for l = k-1 down to 1, and finally
  // collects the event's flips with take_flips().
  void begin_event();
  /// Unlinks (a, b) if currently linked. Returns whether it flipped.
  bool unlink(std::uint32_t a, std::uint32_t b);
  void notify_q_trees(EdgeId e);
  /// Resolves level-l pairs that lost their last certifier; returns the
  /// level-l pairs that became unlinked during this call.
  std::vector<CenterPair> recompute_level(int level);
  std::vector<CenterPair> take_flips();

  // Instrumentation.
  const std::vector<QRecord>& q_records() const { return q_records_; }
  std::uint64_t q_tree_work() const;
  std::uint64_t apu_work() const;
  std::uint64_t link_work() const { return link_work_; }
  std::size_t apu_states() const { return apu_.size(); }
  std::size_t apu_calls() const;
  int max_exit_index() const;
  int exit_bound() const;
  std::size_t exit_bound_violations() const;
  std::size_t unsafe_removals() const;
  std::size_t apu_charge_violations() const;
  std::size_t apu_lifetime_violations() const;
  std::size_t es_budget_violations() const;
  std::size_t level_order_violations() const { return level_order_violations_; }
  /// Sum of sandwich-bound violations; only counted in audit mode.
  std::size_t sandwich_violations() const { return sandwich_violations_; }
  /// Pairs that went from unlinked to linked after construction.
  std::size_t relinks() const { return relinks_; }
  void for_each_apu(const std::function<void(const ApproxPathUnion&)>& fn) const;

 private:
  enum class QState : std::uint8_t { none, active, done };
  struct PairState {
    std::uint32_t certifiers = 0;
    std::uint32_t tree = 0xffffffffu;
    bool linked = false;
    QState q_state = QState::none;
  };
  struct QTree {
    std::optional<EsTree> tree;
    std::uint32_t a = 0, b = 0;
    std::uint64_t retired_work = 0;
    bool budget_ok = true;
  };

  std::size_t index(std::uint32_t a, std::uint32_t b) const { return std::size_t{a} * nodes_.size() + b; }
  void init(const std::function<bool(std::uint32_t, std::uint32_t)>& top_linked);
  void flip(std::uint32_t a, std::uint32_t b);
  void lose_certifier(std::uint32_t a, std::uint32_t b);
  void compute_q(std::uint32_t a, std::uint32_t b, int level);
  void retire(QTree& qt);
  ApproxPathUnion& apu_for(std::uint32_t a, int level);

  const Digraph* g_;
  const HierarchyParams* params_;
  bool audit_;
  int k_;
  std::vector<NodeId> nodes_;
  std::vector<int> level_;
  std::vector<PairState> pairs_;
  std::vector<std::vector<std::uint32_t>> pending_;  // per level, pair indices
  std::vector<QTree> q_trees_;
  std::vector<std::vector<std::uint32_t>> trees_at_node_;
  std::unordered_map<std::uint64_t, std::unique_ptr<ApproxPathUnion>> apu_;
  std::vector<std::uint64_t> apu_order_;  // creation order, for deterministic iteration
  std::vector<QRecord> q_records_;
  std::vector<CenterPair> flips_;
  std::uint64_t link_work_ = 0;
  int last_level_ = 0;
  std::size_t level_order_violations_ = 0;
  std::size_t sandwich_violations_ = 0;
  std::size_t relinks_ = 0;
  bool built_ = false;
};

template <class TopLinked>
LinkTable::LinkTable(const Digraph& g, const HierarchyParams& params, const CenterSets& centers,
                     bool audit, TopLinked&& top_linked)
    : g_(&g), params_(&params), audit_(audit), k_(params.k) {
  nodes_ = centers.levels.front();
  level_.reserve(nodes_.size());
  for (NodeId v : nodes_) level_.push_back(centers.level_of[v]);
  init(std::function<bool(std::uint32_t, std::uint32_t)>(std::forward<TopLinked>(top_linked)));
}

}  // namespace decreach
