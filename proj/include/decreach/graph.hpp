#pragma once

// Mutable directed graph under edge deletions, node sets, and bounded BFS.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace decreach {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr int kUnreached = -1;

enum class Direction { forward, reverse };

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subset of [0, n) with O(1) insert, erase and membership, and enumeration
/// in insertion order (modulo swap-removal).
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : pos_(universe, kAbsent) {}

  static NodeSet full(std::size_t universe);
  static NodeSet of(std::size_t universe, std::span<const NodeId> nodes);

  std::size_t universe() const { return pos_.size(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool contains(NodeId v) const { return v < pos_.size() && pos_[v] != kAbsent; }
  bool insert(NodeId v);
  bool erase(NodeId v);
  void clear();

  std::span<const NodeId> items() const { return items_; }
  std::vector<NodeId> sorted() const;

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> pos_;
  std::vector<NodeId> items_;
};

struct Edge {
  NodeId tail;
  NodeId head;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed graph on dense node ids [0, n) that only loses edges.
///
/// Every edge gets a stable id at construction. Adjacency lists hold ids of
/// alive edges only; deletion swap-removes from both lists in O(1).
class Digraph {
 public:
  Digraph() = default;
  /// Throws GraphError on out-of-range endpoints, self-loops and parallel edges.
  Digraph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return alive_count_; }
  std::size_t initial_edge_count() const { return tails_.size(); }

  NodeId tail(EdgeId e) const { return tails_[e]; }
  NodeId head(EdgeId e) const { return heads_[e]; }
  bool alive(EdgeId e) const { return in_pos_[e] != kDead; }

  std::span<const EdgeId> out_edges(NodeId u) const { return out_[u]; }
  std::span<const EdgeId> in_edges(NodeId v) const { return in_[v]; }
  /// out_edges for forward, in_edges for reverse.
  std::span<const EdgeId> edges_from(NodeId v, Direction dir) const {
    return dir == Direction::forward ? out_edges(v) : in_edges(v);
  }
  /// The endpoint of e opposite to the one edges_from(., dir) was called on.
  NodeId far_end(EdgeId e, Direction dir) const {
    return dir == Direction::forward ? heads_[e] : tails_[e];
  }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

  /// Removes (u, v). Throws GraphError if the edge is not currently present.
  EdgeId delete_edge(NodeId u, NodeId v);

  /// Alive edges in ascending id order.
  std::vector<Edge> edges() const;

 private:
  static constexpr std::uint32_t kDead = std::numeric_limits<std::uint32_t>::max();
  static std::uint64_t key(NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; }

  std::vector<NodeId> tails_, heads_;
  std::vector<std::uint32_t> out_pos_, in_pos_;
  std::vector<std::vector<EdgeId>> out_, in_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  std::size_t alive_count_ = 0;
};

struct BfsResult {
  std::vector<int> dist;           // kUnreached when absent, indexed by node
  std::vector<NodeId> visited;     // BFS order
  std::uint64_t edge_scans = 0;

  bool contains(NodeId v) const { return dist[v] != kUnreached; }
};

/// Nodes within `depth` of `source` in G[restrict] (all of G when restrict is
/// null). Reverse direction measures dist(v, source). Unit edge lengths.
BfsResult bounded_bfs(const Digraph& g, NodeId source, int depth, Direction dir,
                      const NodeSet* restrict = nullptr);

/// E(a, b): alive edges with tail in a and head in b.
std::vector<EdgeId> induced_edges(const Digraph& g, const NodeSet& a, const NodeSet& b);
std::size_t induced_edge_count(const Digraph& g, const NodeSet& a, const NodeSet& b);

// Text format: "n m" then m lines "u v". Parsing is strict.
Digraph read_graph(std::istream& in);
Digraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, std::size_t node_count, std::span<const Edge> edges);

}  // namespace decreach
