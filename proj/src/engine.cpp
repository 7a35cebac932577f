#include "decreach/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace decreach {

namespace {
constexpr std::uint32_t kNoIndex = 0xffffffffu;
}

HierarchyParams resolve_parameters(std::size_t n, std::size_t m, const EngineConfig& config) {
  if (!config.levels.empty()) return explicit_parameters(n, m, config.levels, config.a);
  if (n < 4) {
    const double whole[] = {static_cast<double>(std::max<std::size_t>(n, 1))};
    return explicit_parameters(n, m, whole, config.a);
  }
  const double nd = static_cast<double>(n);
  auto [b, c] = default_tuning(n, m);
  // Sparse graphs (m < n) push the defaults outside [1, n].
  c = std::clamp(c, 1.0, nd);
  b = std::clamp(b, 1.0, c);
  if (config.c_target) c = *config.c_target;
  if (config.b) b = *config.b;
  if (config.b && !config.c_target) c = std::max(c, b);
  if (config.c_target && !config.b) b = std::min(b, c);

  if (config.k <= 0) return derive_parameters(n, m, b, c, config.a);

  if (!(b >= 1.0) || b > c || c > nd) {
    throw std::invalid_argument("need 1 <= b <= c <= n");
  }
  std::vector<double> seq(static_cast<std::size_t>(config.k));
  for (int i = 0; i < config.k; ++i) {
    const double frac = config.k == 1 ? 1.0 : static_cast<double>(i) / (config.k - 1);
    seq[static_cast<std::size_t>(i)] = c * std::pow(b / c, frac);
  }
  seq.back() = b;
  HierarchyParams p = explicit_parameters(n, m, seq, config.a);
  p.b = b;
  p.c_target = c;
  return p;
}

Engine::Engine(Digraph graph, const EngineConfig& config)
    : graph_(std::move(graph)), config_(config) {
  const std::size_t n = graph_.node_count();
  if (n == 0) throw std::invalid_argument("engine needs at least one node");
  if (config_.s >= n || config_.t >= n) throw std::invalid_argument("s or t out of range");
  params_ = resolve_parameters(n, graph_.initial_edge_count(), config_);

  const auto extra_cap = static_cast<std::size_t>(std::max(
      2.0, std::ceil(params_.a * params_.c_at(1) * std::log(static_cast<double>(std::max<std::size_t>(n, 2))))));
  if (config_.extra_centers.size() > extra_cap) {
    throw std::invalid_argument("too many extra centers (limit " + std::to_string(extra_cap) + ")");
  }
  std::vector<NodeId> forced{config_.s, config_.t};
  for (NodeId v : config_.extra_centers) {
    if (v >= n) throw std::invalid_argument("extra center out of range");
    forced.push_back(v);
  }
  centers_ = sample_centers(n, params_, forced, config_.seed);

  const std::vector<NodeId>& c1 = centers_.levels.front();
  center_index_.assign(n, kNoIndex);
  for (std::uint32_t i = 0; i < c1.size(); ++i) center_index_[c1[i]] = i;

  const int k = params_.k;
  const int hk = params_.depth_at(k);
  top_centers_ = centers_.levels.back();
  out_trees_.reserve(top_centers_.size());
  in_trees_.reserve(top_centers_.size());
  for (NodeId x : top_centers_) {
    out_trees_.emplace_back(graph_, x, hk, Direction::forward);
    in_trees_.emplace_back(graph_, x, hk, Direction::reverse);
  }
  std::vector<std::uint32_t> tree_of(c1.size(), kNoIndex);
  for (std::uint32_t i = 0; i < top_centers_.size(); ++i) tree_of[center_index_[top_centers_[i]]] = i;

  links_ = std::make_unique<LinkTable>(
      graph_, params_, centers_, config_.audit, [&](std::uint32_t a, std::uint32_t b) {
        if (tree_of[a] != kNoIndex) return out_trees_[tree_of[a]].contains(c1[b]);
        return in_trees_[tree_of[b]].contains(c1[a]);
      });
  const auto pairs = links_->linked_pairs();
  closure_ = CenterGraph(c1, pairs);
}

void Engine::delete_edge(NodeId u, NodeId v) {
  const EdgeId e = graph_.delete_edge(u, v);
  ++deletions_;

  std::vector<std::uint8_t> before;
  const std::size_t c = closure_.size();
  if (config_.audit) {
    before.resize(c * c);
    for (std::uint32_t a = 0; a < c; ++a) {
      for (std::uint32_t b = 0; b < c; ++b) before[a * c + b] = a != b && links_->linked(a, b);
    }
  }

  LinkTable& links = *links_;
  links.begin_event();
  const int k = params_.k;
  for (std::size_t i = 0; i < top_centers_.size(); ++i) {
    const std::uint32_t root = center_index_[top_centers_[i]];
    for (NodeId w : out_trees_[i].notify_deletion(e)) {
      const std::uint32_t b = center_index_[w];
      if (b != kNoIndex && b != root) links.unlink(root, b);
    }
    for (NodeId w : in_trees_[i].notify_deletion(e)) {
      const std::uint32_t a = center_index_[w];
      // Pairs led by a k-center are governed by that center's out-tree.
      if (a != kNoIndex && a != root && links.center_level(a) < k) links.unlink(a, root);
    }
  }
  links.notify_q_trees(e);
  for (int l = k - 1; l >= 1; --l) links.recompute_level(l);
  const auto flips = links.take_flips();
  flips_ += flips.size();
  closure_.remove_edges(flips);

  if (config_.audit) {
    for (std::uint32_t a = 0; a < c; ++a) {
      for (std::uint32_t b = 0; b < c; ++b) {
        if (a != b && !before[a * c + b] && links.linked(a, b)) ++monotonicity_violations_;
      }
    }
  }
}

EngineMetrics Engine::metrics() const {
  EngineMetrics m;
  for (const EsTree& t : out_trees_) m.global_tree_work += t.work();
  for (const EsTree& t : in_trees_) m.global_tree_work += t.work();
  m.q_tree_work = links_->q_tree_work();
  m.apu_work = links_->apu_work();
  m.link_work = links_->link_work();
  m.closure_work = closure_.work();

  m.deletions = deletions_;
  m.centers = closure_.size();
  m.top_centers = top_centers_.size();
  m.center_edges = closure_.edge_count();
  m.link_flips = flips_;
  const auto& records = links_->q_records();
  m.q_computations = records.size();
  for (const QRecord& r : records) m.q_bound_violations += static_cast<double>(r.size) > r.bound;
  m.apu_states = links_->apu_states();
  m.apu_calls = links_->apu_calls();
  m.max_exit_index = links_->max_exit_index();
  m.exit_bound = links_->exit_bound();

  m.exit_bound_violations = links_->exit_bound_violations();
  for (const EsTree& t : out_trees_) {
    const auto check = es_budget(t);
    m.es_budget_violations += check.work > check.budget;
  }
  for (const EsTree& t : in_trees_) {
    const auto check = es_budget(t);
    m.es_budget_violations += check.work > check.budget;
  }
  m.es_budget_violations += links_->es_budget_violations();
  m.level_order_violations = links_->level_order_violations();
  m.unsafe_removals = links_->unsafe_removals();
  m.sandwich_violations = links_->sandwich_violations();
  m.apu_charge_violations = links_->apu_charge_violations();
  m.apu_lifetime_violations = links_->apu_lifetime_violations();
  m.link_monotonicity_violations = monotonicity_violations_ + links_->relinks();
  return m;
}

}  // namespace decreach
