#include "decreach/approx_path_union.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace decreach {

namespace {
constexpr std::uint32_t kNoSlot = 0xffffffffu;
}

ApproxPathUnion::ApproxPathUnion(const Digraph& g, NodeId x, int h, ApuOptions options)
    : g_(&g), x_(x), h_(h), options_(options) {
  if (x >= g.node_count()) throw std::out_of_range("ApproxPathUnion: source out of range");
  if (h < 1) throw std::invalid_argument("ApproxPathUnion: depth must be at least 1");
  const std::size_t m = std::max<std::size_t>(g.initial_edge_count(), 1);
  log_m_ = std::log2(static_cast<double>(m));
  int ceil_log = 0;
  while ((std::size_t{1} << ceil_log) < m) ++ceil_log;
  exit_bound_ = std::max(2, ceil_log + 1);

  const std::size_t n = g.node_count();
  remaining_ = NodeSet::full(n);
  in_.resize(n);
  copied_.assign(n, 0);
  to_target_.assign(n, kUnreached);
  slot_.assign(n, kNoSlot);
}

void ApproxPathUnion::ensure_copied(NodeId w) {
  if (copied_[w]) return;
  copied_[w] = 1;
  auto src = g_->in_edges(w);
  in_[w].assign(src.begin(), src.end());
  call_scans_ += src.size();
}

// Extends the backward search to every node at distance <= limit from y in
// G[R]. Nodes at distance == limit are discovered but not expanded.
void ApproxPathUnion::grow(int limit) {
  while (frontier_ < order_.size() && to_target_[order_[frontier_]] < limit) {
    const NodeId w = order_[frontier_++];
    ensure_copied(w);
    auto& list = in_[w];
    const int d = to_target_[w];
    for (std::size_t k = 0; k < list.size();) {
      const EdgeId e = list[k];
      ++call_scans_;
      const NodeId u = g_->tail(e);
      if (!g_->alive(e) || !remaining_.contains(u)) {
        list[k] = list.back();
        list.pop_back();
        continue;
      }
      ++call_search_scans_;
      if (to_target_[u] == kUnreached) {
        to_target_[u] = d + 1;
        slot_[u] = static_cast<std::uint32_t>(order_.size());
        order_.push_back(u);
      }
      traversed_.emplace_back(slot_[u], slot_[w]);
      ++k;
    }
  }
}

void ApproxPathUnion::reset_scratch() {
  for (NodeId v : order_) {
    to_target_[v] = kUnreached;
    slot_[v] = kNoSlot;
  }
  order_.clear();
  traversed_.clear();
  frontier_ = 0;
  call_scans_ = 0;
  call_search_scans_ = 0;
}

std::vector<NodeId> ApproxPathUnion::query(NodeId y) {
  if (y >= g_->node_count()) throw std::out_of_range("ApproxPathUnion::query: node out of range");
  reset_scratch();
  last_ = ApuCallRecord{};
  last_.target = y;
  ++calls_;

  if (remaining_.contains(y)) {
    to_target_[y] = 0;
    slot_[y] = 0;
    order_.push_back(y);
  }

  // B_1, then B_i for growing i until the traversed edge count stops doubling.
  grow(h_);
  last_.ball_nodes.push_back(order_.size());
  last_.ball_edges.push_back(traversed_.size());
  int exit = 0;
  std::size_t prev_nodes = order_.size();
  for (int i = 2; i <= exit_bound_; ++i) {
    prev_nodes = order_.size();
    const std::uint64_t prev_edges = traversed_.size();
    grow(i * h_);
    last_.ball_nodes.push_back(order_.size());
    last_.ball_edges.push_back(traversed_.size());
    if (traversed_.size() <= 2 * prev_edges) {
      exit = i;
      break;
    }
  }
  if (exit == 0) {
    throw std::logic_error("ApproxPathUnion: doubling test never passed within the loop bound");
  }
  last_.exit_index = exit;
  max_exit_index_ = std::max(max_exit_index_, exit);

  // Forward search from x to depth h over the edges of G[B_i*] traversed by
  // the backward search. This covers every edge whose head is closer than
  // i*·h to y, which includes every x-path that can reach B_{i*-1}.
  const auto nodes = static_cast<std::uint32_t>(order_.size());
  std::vector<NodeId> result;
  std::vector<int> from_x(nodes, kUnreached);
  if (slot_[x_] != kNoSlot) {
    std::vector<std::uint32_t> start(nodes + 1, 0);
    for (const auto& [t, hd] : traversed_) ++start[t + 1];
    for (std::uint32_t i = 0; i < nodes; ++i) start[i + 1] += start[i];
    std::vector<std::uint32_t> heads(traversed_.size());
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (const auto& [t, hd] : traversed_) heads[fill[t]++] = hd;

    std::vector<std::uint32_t> queue{slot_[x_]};
    from_x[slot_[x_]] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::uint32_t w = queue[q];
      if (from_x[w] == h_) continue;
      for (std::uint32_t a = start[w]; a < start[w + 1]; ++a) {
        ++call_scans_;
        ++call_search_scans_;
        const std::uint32_t v = heads[a];
        if (from_x[v] != kUnreached) continue;
        from_x[v] = from_x[w] + 1;
        queue.push_back(v);
      }
    }
    result.reserve(queue.size());
    for (std::uint32_t s : queue) result.push_back(order_[s]);
  }

  // X = B_{i*-1} \ F.
  std::vector<NodeId> removed;
  for (std::uint32_t s = 0; s < prev_nodes; ++s) {
    if (from_x[s] == kUnreached) removed.push_back(order_[s]);
  }

  // Charge accounting; not counted as work.
  {
    NodeSet f = NodeSet::of(g_->node_count(), result);
    last_.result_edges = induced_edge_count(*g_, f, f);
    NodeSet x_set = NodeSet::of(g_->node_count(), removed);
    last_.removed_edges = induced_edge_count(*g_, x_set, remaining_) +
                          induced_edge_count(*g_, remaining_, x_set);
    total_result_edges_ += last_.result_edges;
    const std::uint64_t budget =
        kChargeFactor * (last_.result_edges + last_.removed_edges + 1);
    if (call_search_scans_ > budget) ++charge_violations_;
  }
  if (options_.audit) {
    const BfsResult near = bounded_bfs(*g_, x_, h_, Direction::forward);
    for (NodeId v : removed) last_.unsafe_removals += near.contains(v) ? 1 : 0;
    unsafe_removals_ += last_.unsafe_removals;
  }

  for (NodeId v : removed) remaining_.erase(v);
  removal_log_.insert(removal_log_.end(), removed.begin(), removed.end());

  last_.result_size = result.size();
  last_.removed = removed.size();
  last_.scans = call_scans_;
  last_.search_scans = call_search_scans_;
  total_scans_ += call_scans_;

  std::sort(result.begin(), result.end());
  return result;
}

std::uint64_t ApproxPathUnion::lifetime_budget() const {
  return kChargeFactor *
         (g_->initial_edge_count() + total_result_edges_ + g_->node_count());
}

void ApproxPathUnion::assert_safety() const {
  if (unsafe_removals_ != 0) {
    throw std::logic_error("ApproxPathUnion: " + std::to_string(unsafe_removals_) +
                           " node(s) removed while within distance h of the source");
  }
  const BfsResult near = bounded_bfs(*g_, x_, h_, Direction::forward);
  for (NodeId v : near.visited) {
    if (!remaining_.contains(v)) {
      throw std::logic_error("ApproxPathUnion: node " + std::to_string(v) +
                             " is within distance h of the source but not in R");
    }
  }
}

}  // namespace decreach
