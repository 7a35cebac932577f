#include "doctest.h"

#include "decreach/es_tree.hpp"
#include "decreach/links.hpp"
#include "support.hpp"

using namespace decreach;

namespace {

// Compares every level with a fresh Dijkstra and checks parent consistency.
void check_against_oracle(const EsTree& t, const Digraph& g, const std::vector<Edge>& edges,
                          const std::vector<std::uint8_t>& allowed) {
  const bool rev = t.direction() == Direction::reverse;
  const auto d = testing::dijkstra(g.node_count(), edges, t.root(), rev, allowed);
  std::size_t members = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const bool in = d[v] <= t.depth();
    REQUIRE(t.contains(v) == in);
    if (!in) {
      CHECK_FALSE(t.distance(v).has_value());
      continue;
    }
    ++members;
    CHECK(*t.distance(v) == d[v]);
    if (v == t.root()) {
      CHECK(t.parent(v) == kNoNode);
      continue;
    }
    const NodeId p = t.parent(v);
    REQUIRE(p != kNoNode);
    CHECK(*t.distance(p) == d[v] - 1);
    CHECK((rev ? g.has_edge(v, p) : g.has_edge(p, v)));
  }
  CHECK(t.size() == members);
}

}  // namespace

TEST_CASE("star, depth 1") {
  const Edge es[] = {{0, 1}, {0, 2}, {0, 3}};
  Digraph g(4, es);
  EsTree t(g, 0, 1, Direction::forward);
  CHECK(*t.distance(0) == 0);
  for (NodeId v : {1u, 2u, 3u}) CHECK(*t.distance(v) == 1);
}

TEST_CASE("depth cutoff") {
  const Edge es[] = {{0, 1}, {1, 2}, {2, 3}};
  Digraph g(4, es);
  EsTree t(g, 0, 2, Direction::forward);
  CHECK(t.contains(2));
  CHECK_FALSE(t.contains(3));
  CHECK_THROWS_AS(EsTree(g, 0, 0, Direction::forward), std::invalid_argument);
}

TEST_CASE("deleting the last edge of a path evicts its end") {
  const Edge es[] = {{0, 1}, {1, 2}};
  Digraph g(3, es);
  EsTree t(g, 0, 2, Direction::forward);
  const EdgeId e = g.delete_edge(1, 2);
  CHECK(t.notify_deletion(e) == std::vector<NodeId>{2});
  CHECK_FALSE(t.distance(2).has_value());
  CHECK(*t.distance(0) == 0);
}

TEST_CASE("diamond keeps level 2 through the other branch") {
  const Edge es[] = {{0, 1}, {1, 3}, {0, 2}, {2, 3}};
  Digraph g(4, es);
  EsTree t(g, 0, 2, Direction::forward);
  const EdgeId e = g.delete_edge(1, 3);
  CHECK(t.notify_deletion(e).empty());
  CHECK(*t.distance(3) == 2);
  CHECK(t.parent(3) == 2);
}

TEST_CASE("reverse orientation and restriction") {
  const Edge es[] = {{0, 1}, {1, 2}, {0, 2}, {3, 2}};
  Digraph g(4, es);
  EsTree rev(g, 2, 2, Direction::reverse);
  CHECK(*rev.distance(0) == 1);
  CHECK(*rev.distance(3) == 1);
  const NodeId keep[] = {0, 1, 2};
  const NodeSet r = NodeSet::of(4, keep);
  EsTree part(g, 2, 2, Direction::reverse, &r);
  CHECK_FALSE(part.contains(3));
  // 3 is outside: (3,2) is seen once while building and never again.
  CHECK(part.universe_edges() == 3);
  CHECK(part.extraction_work() == 1);
  CHECK(rev.extraction_work() == 0);
  const EdgeId e = g.delete_edge(0, 2);
  part.notify_deletion(e);
  CHECK(*part.distance(0) == 2);
  // Edges outside the universe are ignored.
  const EdgeId f = g.delete_edge(3, 2);
  CHECK(part.notify_deletion(f).empty());

  const NodeId without_root[] = {0, 1};
  const NodeSet r2 = NodeSet::of(4, without_root);
  EsTree empty(g, 2, 3, Direction::forward, &r2);
  CHECK(empty.size() == 0);
  CHECK_FALSE(empty.contains(2));
}

TEST_CASE("full deletion sweeps replayed against Dijkstra after every step") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 40 + 13 * seed;  // up to 196
    auto edges = testing::random_edges(n, 3 * n, seed);
    Digraph g(n, edges);
    const bool rev = seed % 2 == 0;
    const bool restricted = seed % 3 == 0;
    std::vector<std::uint8_t> allowed;
    NodeSet r;
    if (restricted) {
      allowed.assign(n, 0);
      std::vector<NodeId> keep;
      for (NodeId v = 0; v < n; ++v) {
        if (v % 4 != 1) {
          allowed[v] = 1;
          keep.push_back(v);
        }
      }
      r = NodeSet::of(n, keep);
    }
    const int depth = 1 + static_cast<int>(seed % 6);
    EsTree t(g, 0, depth, rev ? Direction::reverse : Direction::forward, restricted ? &r : nullptr);
    check_against_oracle(t, g, edges, allowed);

    std::vector<int> prev(n);
    for (NodeId v = 0; v < n; ++v) prev[v] = t.distance(v).value_or(depth + 1);
    for (const Edge& del : testing::shuffled(edges, seed * 7)) {
      const EdgeId e = g.delete_edge(del.tail, del.head);
      testing::erase_edge(edges, del);
      const auto evicted = t.notify_deletion(e);
      for (NodeId v : evicted) CHECK(prev[v] <= depth);
      check_against_oracle(t, g, edges, allowed);
      for (NodeId v = 0; v < n; ++v) {
        const int now = t.distance(v).value_or(depth + 1);
        CHECK(now >= prev[v]);
        const bool was_in = prev[v] <= depth;
        const bool ev = std::find(evicted.begin(), evicted.end(), v) != evicted.end();
        CHECK(ev == (was_in && now > depth));
        prev[v] = now;
      }
    }
    const auto check = es_budget(t);
    CHECK(t.work() <= check.budget);
  }
}
