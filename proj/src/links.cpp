#include "decreach/links.hpp"

#include <cmath>
#include <stdexcept>

#include "decreach/path_union.hpp"

namespace decreach {

EsBudgetCheck es_budget(const EsTree& t) {
  return {t.work(), kEsBudgetFactor * (t.universe_edges() + t.universe_nodes()) *
                        static_cast<std::uint64_t>(t.depth())};
}

void LinkTable::init(const std::function<bool(std::uint32_t, std::uint32_t)>& top_linked) {
  const auto c = static_cast<std::uint32_t>(nodes_.size());
  pairs_.assign(std::size_t{c} * c, PairState{});
  pending_.assign(static_cast<std::size_t>(k_) + 1, {});
  trees_at_node_.assign(g_->node_count(), {});

  std::vector<std::vector<std::uint32_t>> at_or_above(static_cast<std::size_t>(k_) + 2);
  for (std::uint32_t z = 0; z < c; ++z) {
    for (int l = 1; l <= level_[z]; ++l) at_or_above[static_cast<std::size_t>(l)].push_back(z);
  }

  for (std::uint32_t a = 0; a < c; ++a) {
    for (std::uint32_t b = 0; b < c; ++b) {
      if (a != b && pair_level(a, b) == k_) pairs_[index(a, b)].linked = top_linked(a, b);
    }
  }
  for (int l = k_ - 1; l >= 1; --l) {
    const auto& hubs = at_or_above[static_cast<std::size_t>(l + 1)];
    for (std::uint32_t a = 0; a < c; ++a) {
      if (level_[a] > l) continue;
      for (std::uint32_t b = 0; b < c; ++b) {
        if (a == b || pair_level(a, b) != l) continue;
        PairState& p = pairs_[index(a, b)];
        for (std::uint32_t z : hubs) {
          ++link_work_;
          if (linked(a, z) && linked(z, b)) ++p.certifiers;
        }
        if (p.certifiers > 0) {
          p.linked = true;
        } else {
          compute_q(a, b, l);
        }
      }
    }
  }
  built_ = true;
}

std::vector<CenterPair> LinkTable::linked_pairs() const {
  std::vector<CenterPair> out;
  const auto c = static_cast<std::uint32_t>(nodes_.size());
  for (std::uint32_t a = 0; a < c; ++a) {
    for (std::uint32_t b = 0; b < c; ++b) {
      if (a != b && linked(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

ApproxPathUnion& LinkTable::apu_for(std::uint32_t a, int level) {
  const std::uint64_t key = std::uint64_t{a} * static_cast<std::uint64_t>(k_ + 1) +
                            static_cast<std::uint64_t>(level);
  auto it = apu_.find(key);
  if (it == apu_.end()) {
    auto state = std::make_unique<ApproxPathUnion>(*g_, nodes_[a], params_->depth_at(level),
                                                   ApuOptions{audit_});
    it = apu_.emplace(key, std::move(state)).first;
    apu_order_.push_back(key);
  }
  return *it->second;
}

void LinkTable::compute_q(std::uint32_t a, std::uint32_t b, int level) {
  PairState& p = pairs_[index(a, b)];
  const NodeId x = nodes_[a];
  const NodeId y = nodes_[b];
  const int depth = params_->depth_at(level);
  ApproxPathUnion& apu = apu_for(a, level);
  const std::vector<NodeId> q = apu.query(y);

  if (audit_) {
    const auto inner = path_union(*g_, x, y, depth);
    const int outer_depth =
        static_cast<int>(std::floor((apu.log_m() + 3.0) * depth + 1e-9));
    const auto outer = path_union(*g_, x, y, outer_depth);
    const bool ok = std::includes(q.begin(), q.end(), inner.begin(), inner.end()) &&
                    std::includes(outer.begin(), outer.end(), q.begin(), q.end());
    if (!ok) ++sandwich_violations_;
  }

  QRecord rec;
  rec.x = x;
  rec.y = y;
  rec.level = level;
  rec.size = q.size();
  rec.bound = static_cast<double>(g_->node_count()) / params_->c_at(level + 1);

  const bool was_linked = p.linked;
  p.q_state = QState::done;
  p.linked = false;
  if (!q.empty()) {
    NodeSet members = NodeSet::of(g_->node_count(), q);
    QTree qt;
    qt.a = a;
    qt.b = b;
    qt.tree.emplace(*g_, x, depth, Direction::forward, &members);
    if (qt.tree->contains(y)) {
      p.linked = true;
      p.q_state = QState::active;
      p.tree = static_cast<std::uint32_t>(q_trees_.size());
      for (NodeId v : q) trees_at_node_[v].push_back(p.tree);
      q_trees_.push_back(std::move(qt));
    } else {
      retire(qt);
      q_trees_.push_back(std::move(qt));
    }
  }
  if (built_ && !was_linked && p.linked) ++relinks_;
  rec.linked = p.linked;
  q_records_.push_back(rec);
}

void LinkTable::retire(QTree& qt) {
  if (!qt.tree) return;
  const EsBudgetCheck check = es_budget(*qt.tree);
  qt.budget_ok = check.work <= check.budget;
  qt.retired_work = check.work + qt.tree->extraction_work();
  qt.tree.reset();
}

void LinkTable::begin_event() {
  flips_.clear();
  last_level_ = k_;
}

bool LinkTable::unlink(std::uint32_t a, std::uint32_t b) {
  if (!linked(a, b)) return false;
  flip(a, b);
  return true;
}

// Marks (a, b) unlinked and withdraws it as half of a certificate from every
// lower-level pair it served.
void LinkTable::flip(std::uint32_t a, std::uint32_t b) {
  PairState& p = pairs_[index(a, b)];
  p.linked = false;
  flips_.emplace_back(a, b);
  const auto c = static_cast<std::uint32_t>(nodes_.size());
  const int la = level_[a];
  const int lb = level_[b];
  if (la < lb) {
    // (a, b) = (x, z): pairs (a, y) with max(level a, level y) < level b.
    for (std::uint32_t y = 0; y < c; ++y) {
      ++link_work_;
      if (y == a || y == b || pair_level(a, y) >= lb) continue;
      if (linked(b, y)) lose_certifier(a, y);
    }
  } else if (lb < la) {
    // (a, b) = (z, y): pairs (x, b) with max(level x, level b) < level a.
    for (std::uint32_t x = 0; x < c; ++x) {
      ++link_work_;
      if (x == a || x == b || pair_level(x, b) >= la) continue;
      if (linked(x, a)) lose_certifier(x, b);
    }
  }
}

void LinkTable::lose_certifier(std::uint32_t a, std::uint32_t b) {
  PairState& p = pairs_[index(a, b)];
  if (p.q_state != QState::none) return;
  if (p.certifiers == 0) throw std::logic_error("LinkTable: certifier count underflow");
  if (--p.certifiers == 0) {
    const int l = pair_level(a, b);
    if (l >= last_level_) ++level_order_violations_;
    pending_[static_cast<std::size_t>(l)].push_back(static_cast<std::uint32_t>(index(a, b)));
  }
}

void LinkTable::notify_q_trees(EdgeId e) {
  const NodeId u = g_->tail(e);
  const NodeId v = g_->head(e);
  auto& list = trees_at_node_[u];
  for (std::size_t i = 0; i < list.size();) {
    QTree& qt = q_trees_[list[i]];
    if (!qt.tree) {
      list[i] = list.back();
      list.pop_back();
      continue;
    }
    ++i;
    if (!qt.tree->contains(v)) continue;
    qt.tree->notify_deletion(e);
    if (!qt.tree->contains(nodes_[qt.b])) {
      pairs_[index(qt.a, qt.b)].q_state = QState::done;
      retire(qt);
      flip(qt.a, qt.b);
    }
  }
}

std::vector<CenterPair> LinkTable::recompute_level(int level) {
  if (level >= last_level_ || level < 1) ++level_order_violations_;
  last_level_ = level;
  std::vector<CenterPair> flipped;
  auto& pending = pending_[static_cast<std::size_t>(level)];
  const auto c = static_cast<std::uint32_t>(nodes_.size());
  // compute_q never appends to this level's list.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const std::uint32_t pi = pending[i];
    const std::uint32_t a = pi / c;
    const std::uint32_t b = pi % c;
    PairState& p = pairs_[pi];
    if (p.q_state != QState::none || p.certifiers != 0) continue;
    const bool before = p.linked;
    compute_q(a, b, level);
    if (before && !p.linked) {
      p.linked = true;  // flip() performs the transition and its bookkeeping
      flip(a, b);
      flipped.emplace_back(a, b);
    }
  }
  pending.clear();
  return flipped;
}

std::vector<CenterPair> LinkTable::take_flips() {
  std::vector<CenterPair> out;
  out.swap(flips_);
  return out;
}

std::uint64_t LinkTable::q_tree_work() const {
  std::uint64_t total = 0;
  for (const QTree& qt : q_trees_) {
    total += qt.tree ? qt.tree->work() + qt.tree->extraction_work() : qt.retired_work;
  }
  return total;
}

std::uint64_t LinkTable::apu_work() const {
  std::uint64_t total = 0;
  for (const auto& [key, apu] : apu_) total += apu->total_scans();
  return total;
}

std::size_t LinkTable::apu_calls() const {
  std::size_t total = 0;
  for (const auto& [key, apu] : apu_) total += apu->calls();
  return total;
}

int LinkTable::max_exit_index() const {
  int best = 0;
  for (const auto& [key, apu] : apu_) best = std::max(best, apu->max_exit_index());
  return best;
}

int LinkTable::exit_bound() const {
  std::size_t m = std::max<std::size_t>(g_->initial_edge_count(), 1);
  int ceil_log = 0;
  while ((std::size_t{1} << ceil_log) < m) ++ceil_log;
  return std::max(2, ceil_log + 1);
}

std::size_t LinkTable::exit_bound_violations() const {
  std::size_t total = 0;
  for (const auto& [key, apu] : apu_) total += apu->max_exit_index() > apu->exit_bound() ? 1 : 0;
  return total;
}

std::size_t LinkTable::unsafe_removals() const {
  std::size_t total = 0;
  for (const auto& [key, apu] : apu_) total += apu->unsafe_removals();
  return total;
}

std::size_t LinkTable::apu_charge_violations() const {
  std::size_t total = 0;
  for (const auto& [key, apu] : apu_) total += apu->charge_violations();
  return total;
}

std::size_t LinkTable::apu_lifetime_violations() const {
  std::size_t total = 0;
  for (const auto& [key, apu] : apu_) {
    total += apu->total_scans() > apu->lifetime_budget() ? 1 : 0;
  }
  return total;
}

std::size_t LinkTable::es_budget_violations() const {
  std::size_t total = 0;
  for (const QTree& qt : q_trees_) {
    if (qt.tree) {
      const EsBudgetCheck check = es_budget(*qt.tree);
      total += check.work > check.budget ? 1 : 0;
    } else {
      total += qt.budget_ok ? 0 : 1;
    }
  }
  return total;
}

void LinkTable::for_each_apu(const std::function<void(const ApproxPathUnion&)>& fn) const {
  for (std::uint64_t key : apu_order_) fn(*apu_.at(key));
}

}  // namespace decreach
