#include "decreach/es_tree.hpp"

#include <cassert>
#include <stdexcept>

namespace decreach {

EsTree::EsTree(const Digraph& g, NodeId root, int depth, Direction dir, const NodeSet* restrict)
    : g_(&g), root_(root), depth_(depth), dir_(dir), restricted_(restrict != nullptr) {
  if (depth < 1) throw std::invalid_argument("EsTree: depth must be at least 1");
  if (root >= g.node_count()) throw std::out_of_range("EsTree: root out of range");

  if (restricted_) {
    nodes_.assign(restrict->items().begin(), restrict->items().end());
    local_of_.reserve(nodes_.size());
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) local_of_.emplace(nodes_[i], i);
  } else {
    nodes_.resize(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) nodes_[v] = v;
  }
  const auto count = static_cast<std::uint32_t>(nodes_.size());

  // Candidate parents of w are the sources of edges into w in tree
  // orientation; children are the targets of edges out of w.
  const Direction back = dir == Direction::forward ? Direction::reverse : Direction::forward;
  parent_start_.assign(count + 1, 0);
  child_start_.assign(count + 1, 0);
  for (std::uint32_t w = 0; w < count; ++w) {
    const NodeId gw = nodes_[w];
    for (EdgeId e : g.edges_from(gw, back)) {
      const std::uint32_t p = local(g.far_end(e, back));
      if (p != kNone) {
        ++work_;
        parents_.push_back({p, e});
      } else {
        ++extraction_work_;
      }
    }
    parent_start_[w + 1] = static_cast<std::uint32_t>(parents_.size());
    for (EdgeId e : g.edges_from(gw, dir)) {
      const std::uint32_t c = local(g.far_end(e, dir));
      if (c != kNone) {
        ++work_;
        children_.push_back({c, e});
      } else {
        ++extraction_work_;
      }
    }
    child_start_[w + 1] = static_cast<std::uint32_t>(children_.size());
  }

  level_.assign(count, depth_ + 1);
  parent_edge_.assign(count, kNoEdge);
  cursor_.assign(count, 0);
  queued_.assign(count, 0);
  buckets_.resize(static_cast<std::size_t>(depth_) + 2);

  root_local_ = local(root);
  if (root_local_ == kNone) return;

  std::vector<std::uint32_t> order{root_local_};
  level_[root_local_] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t w = order[i];
    if (level_[w] == depth_) continue;
    for (std::uint32_t a = child_start_[w]; a < child_start_[w + 1]; ++a) {
      ++work_;
      const std::uint32_t c = children_[a].other;
      if (level_[c] <= depth_) continue;
      level_[c] = level_[w] + 1;
      order.push_back(c);
    }
  }
  in_tree_ = order.size();
  // Position each cursor on the first valid parent.
  for (std::uint32_t w : order) {
    if (w == root_local_) continue;
    std::uint32_t a = parent_start_[w];
    for (; a < parent_start_[w + 1]; ++a) {
      ++work_;
      if (level_[parents_[a].other] == level_[w] - 1) break;
    }
    assert(a < parent_start_[w + 1]);
    cursor_[w] = a - parent_start_[w];
    parent_edge_[w] = parents_[a].edge;
  }
}

std::uint32_t EsTree::local(NodeId v) const {
  if (!restricted_) return v < nodes_.size() ? v : kNone;
  auto it = local_of_.find(v);
  return it == local_of_.end() ? kNone : it->second;
}

std::uint32_t EsTree::child_of(EdgeId e) const {
  return local(dir_ == Direction::forward ? g_->head(e) : g_->tail(e));
}

void EsTree::enqueue(std::uint32_t w) {
  if (queued_[w]) return;
  queued_[w] = 1;
  buckets_[static_cast<std::size_t>(level_[w])].push_back(w);
}

std::vector<NodeId> EsTree::notify_deletion(EdgeId e) {
  std::vector<NodeId> evicted;
  const std::uint32_t c = child_of(e);
  if (c == kNone || level_[c] > depth_ || parent_edge_[c] != e) return evicted;

  int lowest = level_[c];
  enqueue(c);
  for (int lvl = lowest; lvl <= depth_; ++lvl) {
    auto& bucket = buckets_[static_cast<std::size_t>(lvl)];
    // Nodes only get queued at levels above the one being processed.
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const std::uint32_t w = bucket[i];
      queued_[w] = 0;
      if (level_[w] != lvl) continue;

      const std::uint32_t begin = parent_start_[w];
      const std::uint32_t end = parent_start_[w + 1];
      bool found = false;
      for (std::uint32_t a = begin + cursor_[w]; a < end; ++a) {
        ++work_;
        const Arc& arc = parents_[a];
        if (g_->alive(arc.edge) && level_[arc.other] == lvl - 1) {
          cursor_[w] = a - begin;
          parent_edge_[w] = arc.edge;
          found = true;
          break;
        }
      }
      if (found) continue;

      // No parent one level up: w drops a level and its children must recheck.
      const int next = lvl + 1;
      level_[w] = next;
      cursor_[w] = 0;
      for (std::uint32_t a = child_start_[w]; a < child_start_[w + 1]; ++a) {
        ++work_;
        const Arc& arc = children_[a];
        if (parent_edge_[arc.other] == arc.edge && level_[arc.other] <= depth_) {
          enqueue(arc.other);
        }
      }
      if (next > depth_) {
        parent_edge_[w] = kNoEdge;
        --in_tree_;
        evicted.push_back(nodes_[w]);
      } else {
        enqueue(w);
      }
    }
    bucket.clear();
  }
  return evicted;
}

bool EsTree::contains(NodeId v) const {
  const std::uint32_t w = local(v);
  return w != kNone && level_[w] <= depth_;
}

std::optional<int> EsTree::distance(NodeId v) const {
  const std::uint32_t w = local(v);
  if (w == kNone || level_[w] > depth_) return std::nullopt;
  return level_[w];
}

NodeId EsTree::parent(NodeId v) const {
  const std::uint32_t w = local(v);
  if (w == kNone || parent_edge_[w] == kNoEdge) return kNoNode;
  return dir_ == Direction::forward ? g_->tail(parent_edge_[w]) : g_->head(parent_edge_[w]);
}

std::vector<NodeId> EsTree::members() const {
  std::vector<NodeId> out;
  for (std::uint32_t w = 0; w < nodes_.size(); ++w) {
    if (level_[w] <= depth_) out.push_back(nodes_[w]);
  }
  return out;
}

}  // namespace decreach
