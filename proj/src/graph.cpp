#include "decreach/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace decreach {

NodeSet NodeSet::full(std::size_t universe) {
  NodeSet s(universe);
  s.items_.reserve(universe);
  for (NodeId v = 0; v < universe; ++v) s.insert(v);
  return s;
}

NodeSet NodeSet::of(std::size_t universe, std::span<const NodeId> nodes) {
  NodeSet s(universe);
  for (NodeId v : nodes) s.insert(v);
  return s;
}

bool NodeSet::insert(NodeId v) {
  if (v >= pos_.size()) throw std::out_of_range("NodeSet::insert: node out of range");
  if (pos_[v] != kAbsent) return false;
  pos_[v] = static_cast<std::uint32_t>(items_.size());
  items_.push_back(v);
  return true;
}

bool NodeSet::erase(NodeId v) {
  if (!contains(v)) return false;
  const std::uint32_t p = pos_[v];
  const NodeId last = items_.back();
  items_[p] = last;
  pos_[last] = p;
  items_.pop_back();
  pos_[v] = kAbsent;
  return true;
}

void NodeSet::clear() {
  for (NodeId v : items_) pos_[v] = kAbsent;
  items_.clear();
}

std::vector<NodeId> NodeSet::sorted() const {
  std::vector<NodeId> out(items_.begin(), items_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Digraph::Digraph(std::size_t node_count, std::span<const Edge> edges)
    : out_(node_count), in_(node_count) {
  if (node_count >= kNoNode) throw GraphError("node count too large");
  if (edges.size() >= kNoEdge) throw GraphError("edge count too large");
  tails_.reserve(edges.size());
  heads_.reserve(edges.size());
  out_pos_.reserve(edges.size());
  in_pos_.reserve(edges.size());
  index_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.tail >= node_count || e.head >= node_count) {
      throw GraphError("edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) +
                       ") has an endpoint outside [0," + std::to_string(node_count) + ")");
    }
    if (e.tail == e.head) throw GraphError("self-loop at node " + std::to_string(e.tail));
    const auto id = static_cast<EdgeId>(tails_.size());
    if (!index_.emplace(key(e.tail, e.head), id).second) {
      throw GraphError("parallel edge (" + std::to_string(e.tail) + "," +
                       std::to_string(e.head) + ")");
    }
    tails_.push_back(e.tail);
    heads_.push_back(e.head);
    out_pos_.push_back(static_cast<std::uint32_t>(out_[e.tail].size()));
    in_pos_.push_back(static_cast<std::uint32_t>(in_[e.head].size()));
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
  }
  alive_count_ = tails_.size();
}

std::optional<EdgeId> Digraph::find_edge(NodeId u, NodeId v) const {
  auto it = index_.find(key(u, v));
  if (it == index_.end() || !alive(it->second)) return std::nullopt;
  return it->second;
}

EdgeId Digraph::delete_edge(NodeId u, NodeId v) {
  auto found = find_edge(u, v);
  if (!found) {
    throw GraphError("delete of absent edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ")");
  }
  const EdgeId e = *found;

  auto& outs = out_[u];
  const std::uint32_t op = out_pos_[e];
  outs[op] = outs.back();
  out_pos_[outs[op]] = op;
  outs.pop_back();

  auto& ins = in_[v];
  const std::uint32_t ip = in_pos_[e];
  ins[ip] = ins.back();
  in_pos_[ins[ip]] = ip;
  ins.pop_back();

  out_pos_[e] = kDead;
  in_pos_[e] = kDead;
  --alive_count_;
  return e;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(alive_count_);
  for (EdgeId e = 0; e < tails_.size(); ++e) {
    if (alive(e)) out.push_back({tails_[e], heads_[e]});
  }
  return out;
}

BfsResult bounded_bfs(const Digraph& g, NodeId source, int depth, Direction dir,
                      const NodeSet* restrict) {
  if (depth < 0) throw std::invalid_argument("bounded_bfs: negative depth");
  if (source >= g.node_count()) throw std::out_of_range("bounded_bfs: source out of range");
  BfsResult r;
  r.dist.assign(g.node_count(), kUnreached);
  if (restrict != nullptr && !restrict->contains(source)) {
    throw std::invalid_argument("bounded_bfs: source outside restrict set");
  }
  r.dist[source] = 0;
  r.visited.push_back(source);
  for (std::size_t i = 0; i < r.visited.size(); ++i) {
    const NodeId w = r.visited[i];
    const int d = r.dist[w];
    if (d == depth) continue;
    for (EdgeId e : g.edges_from(w, dir)) {
      ++r.edge_scans;
      const NodeId x = g.far_end(e, dir);
      if (r.dist[x] != kUnreached) continue;
      if (restrict != nullptr && !restrict->contains(x)) continue;
      r.dist[x] = d + 1;
      r.visited.push_back(x);
    }
  }
  return r;
}

std::vector<EdgeId> induced_edges(const Digraph& g, const NodeSet& a, const NodeSet& b) {
  std::vector<EdgeId> out;
  for (NodeId u : a.items()) {
    for (EdgeId e : g.out_edges(u)) {
      if (b.contains(g.head(e))) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t induced_edge_count(const Digraph& g, const NodeSet& a, const NodeSet& b) {
  std::size_t count = 0;
  for (NodeId u : a.items()) {
    for (EdgeId e : g.out_edges(u)) count += b.contains(g.head(e)) ? 1 : 0;
  }
  return count;
}

namespace {

// Parses exactly `want` unsigned integers from one line; anything else throws.
std::vector<std::uint64_t> parse_line(const std::string& line, std::size_t want,
                                      std::size_t lineno) {
  std::vector<std::uint64_t> vals;
  const char* p = line.data();
  const char* end = p + line.size();
  while (true) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next != end && *next != ' ' && *next != '\t' && *next != '\r')) {
      throw ParseError("line " + std::to_string(lineno) + ": malformed token in '" + line + "'");
    }
    vals.push_back(v);
    p = next;
  }
  if (vals.size() != want) {
    throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(want) +
                     " integers, got '" + line + "'");
  }
  return vals;
}

}  // namespace

Digraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing header 'n m'");
  const auto header = parse_line(line, 2, 1);
  const std::uint64_t n = header[0], m = header[1];
  if (n >= kNoNode || m >= kNoEdge) throw ParseError("line 1: graph too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("line " + std::to_string(i + 2) + ": expected " + std::to_string(m) +
                       " edges, found " + std::to_string(i));
    }
    const auto uv = parse_line(line, 2, i + 2);
    if (uv[0] >= n || uv[1] >= n) {
      throw ParseError("line " + std::to_string(i + 2) + ": node id out of range");
    }
    edges.push_back({static_cast<NodeId>(uv[0]), static_cast<NodeId>(uv[1])});
  }
  try {
    return Digraph(n, edges);
  } catch (const GraphError& e) {
    throw ParseError(e.what());
  }
}

Digraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, std::size_t node_count, std::span<const Edge> edges) {
  out << node_count << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.tail << ' ' << e.head << '\n';
}

}  // namespace decreach
