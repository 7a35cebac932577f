#include "doctest.h"

#include "decreach/engine.hpp"
#include "decreach/oracles.hpp"
#include "support.hpp"

using namespace decreach;

namespace {

// Every 1-center pair against a from-scratch closure of the edge list.
void check_all_pairs(const Engine& eng, std::size_t n, const std::vector<Edge>& edges) {
  const auto want = testing::closure(n, edges);
  for (NodeId x : eng.centers())
    for (NodeId y : eng.centers()) REQUIRE(eng.query(x, y) == want[x][y]);
}

}  // namespace

TEST_CASE("single edge s -> t") {
  EngineConfig cfg;
  cfg.s = 0;
  cfg.t = 1;
  cfg.k = 1;
  Engine eng(Digraph(2, std::vector<Edge>{{0, 1}}), cfg);
  CHECK(eng.params().k == 1);
  const auto s = *eng.center_graph().index_of(0);
  const auto t = *eng.center_graph().index_of(1);
  CHECK(eng.center_graph().has_edge(s, t));
  CHECK(eng.query_st());
  eng.delete_edge(0, 1);
  CHECK_FALSE(eng.query_st());
  CHECK_THROWS_AS(eng.delete_edge(0, 1), GraphError);
}

TEST_CASE("s and t in different components") {
  EngineConfig cfg;
  cfg.s = 0;
  cfg.t = 3;
  Engine eng(Digraph(6, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}, {4, 5}}), cfg);
  CHECK_FALSE(eng.query_st());
  CHECK(eng.query(0, 0));
}

TEST_CASE("two disjoint s-t paths survive losing one edge") {
  EngineConfig cfg;
  cfg.s = 0;
  cfg.t = 5;
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}};
  Engine eng(Digraph(6, edges), cfg);
  CHECK(eng.query_st());
  eng.delete_edge(1, 2);
  CHECK(eng.query_st());
  eng.delete_edge(3, 4);
  CHECK_FALSE(eng.query_st());
}

TEST_CASE("initial answers on 50 random instances") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 20 + rng() % 100;
    const auto edges = testing::random_edges(n, n + rng() % (4 * n), seed);
    EngineConfig cfg;
    cfg.s = static_cast<NodeId>(rng() % n);
    cfg.t = static_cast<NodeId>(rng() % n);
    cfg.seed = seed;
    if (seed % 3 == 0) cfg.levels = {n / 2.0, n / 5.0, n / 10.0};
    Engine eng(Digraph(n, edges), cfg);
    CHECK(eng.is_center(cfg.s));
    CHECK(eng.is_center(cfg.t));
    check_all_pairs(eng, n, edges);
  }
}

TEST_CASE("full deletion sweeps agree with the oracle after every deletion") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::mt19937_64 rng(seed * 101);
    const std::size_t n = 20 + rng() % 60;
    auto edges = testing::random_edges(n, n + rng() % (3 * n), seed);
    EngineConfig cfg;
    cfg.s = 0;
    cfg.t = static_cast<NodeId>(n - 1);
    cfg.seed = seed;
    cfg.audit = true;
    if (seed % 2) cfg.levels = {n / 2.0, n / 6.0, n / 15.0};
    Engine eng(Digraph(n, edges), cfg);
    for (const Edge& e : testing::shuffled(edges, seed)) {
      eng.delete_edge(e.tail, e.head);
      testing::erase_edge(edges, e);
      check_all_pairs(eng, n, edges);
    }
    const auto m = eng.metrics();
    CHECK(m.sandwich_violations == 0);
    CHECK(m.unsafe_removals == 0);
    CHECK(m.link_monotonicity_violations == 0);
    CHECK(m.level_order_violations == 0);
    CHECK(m.exit_bound_violations == 0);
    CHECK(m.es_budget_violations == 0);
    CHECK(m.apu_charge_violations == 0);
    CHECK(m.apu_lifetime_violations == 0);
    CHECK(m.center_edges == 0);
  }
}

TEST_CASE("queries on non-centers are rejected") {
  const std::size_t n = 400;
  const auto edges = testing::random_edges(n, 1200, 3);
  EngineConfig cfg;
  cfg.s = 0;
  cfg.t = 1;
  cfg.levels = {2.0};
  Engine eng(Digraph(n, edges), cfg);
  NodeId outside = kNoNode;
  for (NodeId v = 0; v < n && outside == kNoNode; ++v) {
    if (!eng.is_center(v)) outside = v;
  }
  REQUIRE(outside != kNoNode);
  CHECK_THROWS_AS(eng.query(0, outside), std::invalid_argument);
  CHECK_THROWS_AS(eng.query(outside, 1), std::invalid_argument);
}

TEST_CASE("configuration") {
  const auto edges = testing::random_edges(100, 400, 1);
  EngineConfig cfg;
  cfg.t = 99;
  cfg.k = 3;
  cfg.b = 4.0;
  cfg.c_target = 60.0;
  Engine eng(Digraph(100, edges), cfg);
  CHECK(eng.params().k == 3);
  CHECK(eng.params().c_at(1) == doctest::Approx(60.0));
  CHECK(eng.params().c_at(3) == doctest::Approx(4.0));
  CHECK(eng.params().c_at(2) == doctest::Approx(std::sqrt(240.0)));

  EngineConfig bad = cfg;
  bad.b = 70.0;
  CHECK_THROWS_AS(Engine(Digraph(100, edges), bad), std::invalid_argument);
  EngineConfig out_of_range;
  out_of_range.t = 100;
  CHECK_THROWS_AS(Engine(Digraph(100, edges), out_of_range), std::invalid_argument);

  EngineConfig extra;
  extra.t = 99;
  extra.levels = {1.0};
  extra.extra_centers = {10, 20};
  Engine with_extra(Digraph(100, edges), extra);
  CHECK(with_extra.is_center(10));
  CHECK(with_extra.is_center(20));
  extra.extra_centers.assign(50, 5);
  CHECK_THROWS_AS(Engine(Digraph(100, edges), extra), std::invalid_argument);
}

TEST_CASE("identical inputs give identical answers and counters") {
  const auto edges = testing::random_edges(120, 900, 9);
  const auto order = testing::shuffled(edges, 10);
  auto replay = [&] {
    EngineConfig cfg;
    cfg.t = 119;
    cfg.seed = 77;
    Engine eng(Digraph(120, edges), cfg);
    std::vector<bool> answers;
    for (const Edge& e : order) {
      eng.delete_edge(e.tail, e.head);
      answers.push_back(eng.query_st());
    }
    return std::make_pair(answers, eng.metrics());
  };
  const auto [a1, m1] = replay();
  const auto [a2, m2] = replay();
  CHECK(a1 == a2);
  CHECK(m1.total_work() == m2.total_work());
  CHECK(m1.global_tree_work == m2.global_tree_work);
  CHECK(m1.apu_work == m2.apu_work);
  CHECK(m1.q_tree_work == m2.q_tree_work);
  CHECK(m1.link_work == m2.link_work);
  CHECK(m1.closure_work == m2.closure_work);
  CHECK(m1.q_computations == m2.q_computations);
  CHECK(m1.total_work() == m1.global_tree_work + m1.q_tree_work + m1.apu_work + m1.link_work +
                               m1.closure_work);
}
