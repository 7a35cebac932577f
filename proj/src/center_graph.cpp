#include "decreach/center_graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace decreach {

namespace {
constexpr std::uint32_t kNoIndex = 0xffffffffu;
}

CenterGraph::CenterGraph(std::vector<NodeId> centers, std::span<const CenterPair> edges)
    : centers_(std::move(centers)) {
  const std::size_t c = centers_.size();
  NodeId max_node = 0;
  for (NodeId v : centers_) max_node = std::max(max_node, v);
  index_.assign(c == 0 ? 0 : std::size_t{max_node} + 1, kNoIndex);
  for (std::uint32_t i = 0; i < c; ++i) {
    if (index_[centers_[i]] != kNoIndex) throw std::invalid_argument("CenterGraph: duplicate center");
    index_[centers_[i]] = i;
  }
  words_ = (c + 63) / 64;
  adj_.assign(c * words_, 0);
  reach_.assign(c * words_, 0);
  tree_parent_.assign(c * c, kNoIndex);
  for (const auto& [a, b] : edges) {
    if (a >= c || b >= c || a == b) throw std::invalid_argument("CenterGraph: bad edge");
    auto& word = adj_[a * words_ + (b >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (b & 63);
    if (!(word & bit)) {
      word |= bit;
      ++edges_;
    }
  }
  for (std::uint32_t s = 0; s < c; ++s) research(s);
  recomputations_ = 0;
}

std::optional<std::uint32_t> CenterGraph::index_of(NodeId v) const {
  if (v >= index_.size() || index_[v] == kNoIndex) return std::nullopt;
  return index_[v];
}

void CenterGraph::research(std::uint32_t source) {
  ++recomputations_;
  const std::size_t c = centers_.size();
  std::uint64_t* seen = &reach_[source * words_];
  std::fill(seen, seen + words_, 0);
  std::uint32_t* parent = &tree_parent_[source * c];
  std::fill(parent, parent + c, kNoIndex);
  seen[source >> 6] |= std::uint64_t{1} << (source & 63);
  parent[source] = source;
  std::vector<std::uint32_t> queue{source};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::uint32_t u = queue[q];
    const std::uint64_t* row = &adj_[u * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      ++work_;
      std::uint64_t fresh = row[w] & ~seen[w];
      seen[w] |= fresh;
      while (fresh) {
        const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(fresh));
        fresh &= fresh - 1;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
}

void CenterGraph::remove_edges(std::span<const CenterPair> pairs) {
  if (pairs.empty()) return;
  const std::size_t c = centers_.size();
  for (const auto& [a, b] : pairs) {
    if (a >= c || b >= c || !has_edge(a, b)) {
      throw std::logic_error("CenterGraph: removing absent edge (" + std::to_string(a) + "," +
                             std::to_string(b) + ")");
    }
    adj_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63));
    --edges_;
  }
  for (std::uint32_t s = 0; s < c; ++s) {
    const std::uint32_t* parent = &tree_parent_[s * c];
    const bool hit = std::any_of(pairs.begin(), pairs.end(), [&](const CenterPair& p) {
      ++work_;
      return parent[p.second] == p.first && p.second != s;
    });
    if (hit) research(s);
  }
}

bool CenterGraph::reachable_nodes(NodeId x, NodeId y) const {
  const auto a = index_of(x);
  const auto b = index_of(y);
  if (!a || !b) {
    throw std::invalid_argument("reachability query on a non-center node");
  }
  return reachable(*a, *b);
}

}  // namespace decreach
