#include "doctest.h"

#include <cmath>
#include <sstream>
#include <tuple>

#include "decreach/bench.hpp"
#include "decreach/oracles.hpp"
#include "support.hpp"

using namespace decreach;
using namespace decreach::bench;

namespace {

std::string dump_graph(const Instance& inst) {
  std::ostringstream out;
  write_graph(out, inst.n, inst.edges);
  return out.str();
}

std::string dump_trace(const std::vector<Event>& ev) {
  std::ostringstream out;
  write_trace(out, ev);
  return out.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("n = 16, alpha = 1 lands on about 16 edges") {
  GenConfig cfg;
  cfg.n = 16;
  cfg.alpha = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.seed = seed;
    const auto inst = generate_graph(cfg);
    CHECK(inst.edges.size() >= 14);
    CHECK(inst.edges.size() <= 18);
  }
}

TEST_CASE("every generator hits its edge target and has s = 0, t = n - 1") {
  for (Generator gen : {Generator::er, Generator::layered, Generator::path_cluster}) {
    for (std::size_t n : {10u, 50u, 120u}) {
      for (double alpha : {1.0, 1.2, 1.5, 1.8, 2.0}) {
        GenConfig cfg;
        cfg.generator = gen;
        cfg.n = n;
        cfg.alpha = alpha;
        cfg.seed = n;
        const auto inst = generate_graph(cfg);
        const double target = std::pow(static_cast<double>(n), alpha);
        const double cap = static_cast<double>(n * (n - 1));
        const double want = std::min(target, cap);
        CHECK(std::abs(static_cast<double>(inst.edges.size()) - want) <= 0.1 * want);
        CHECK(inst.s == 0);
        CHECK(inst.t == n - 1);
        CHECK_NOTHROW(Digraph(inst.n, inst.edges));
        if (gen == Generator::path_cluster) {
          CHECK(static_reachable(Digraph(inst.n, inst.edges), 0, static_cast<NodeId>(n - 1)));
        }
      }
    }
  }
  GenConfig bad;
  bad.alpha = 2.5;
  CHECK_THROWS_AS(generate_graph(bad), std::invalid_argument);
  bad.alpha = 1.5;
  bad.n = 1;
  CHECK_THROWS_AS(generate_graph(bad), std::invalid_argument);
}

TEST_CASE("traces delete every edge exactly once; line count = m + queries") {
  for (TraceStyle style : {TraceStyle::random, TraceStyle::adversarial}) {
    for (std::size_t every : {0u, 1u, 7u}) {
      GenConfig cfg;
      cfg.n = 60;
      cfg.alpha = 1.4;
      cfg.trace = style;
      cfg.query_every = every;
      const auto inst = generate_graph(cfg);
      const auto trace = generate_trace(inst, cfg);
      std::vector<Edge> deleted;
      std::size_t queries = 0;
      for (const Event& e : trace) {
        if (e.kind == EventKind::del) deleted.push_back({e.u, e.v});
        else ++queries;
      }
      auto sorted = [](std::vector<Edge> v) {
        std::sort(v.begin(), v.end(), [](const Edge& a, const Edge& b) {
          return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
        });
        return v;
      };
      CHECK(sorted(deleted) == sorted(inst.edges));
      CHECK(count_lines(dump_trace(trace)) == inst.edges.size() + queries);
      CHECK(trace.back().kind == EventKind::query_st);
      if (every == 1) CHECK(queries == inst.edges.size());
    }
  }
}

TEST_CASE("adversarial traces cut shortest s-t paths first") {
  GenConfig cfg;
  cfg.generator = Generator::layered;
  cfg.n = 80;
  cfg.alpha = 1.5;
  cfg.trace = TraceStyle::adversarial;
  const auto inst = generate_graph(cfg);
  auto edges = inst.edges;
  for (const Event& ev : generate_trace(inst, cfg)) {
    if (ev.kind != EventKind::del) continue;
    const auto ds = testing::dijkstra(inst.n, edges, inst.s);
    if (ds[inst.t] == testing::kInf) break;
    // The deleted edge lies on some shortest s-t path.
    const auto dt = testing::dijkstra(inst.n, edges, inst.t, true);
    REQUIRE(ds[ev.u] != testing::kInf);
    REQUIRE(dt[ev.v] != testing::kInf);
    CHECK(ds[ev.u] + 1 + dt[ev.v] == ds[inst.t]);
    testing::erase_edge(edges, {ev.u, ev.v});
  }
}

TEST_CASE("same seed gives byte-identical files") {
  for (Generator gen : {Generator::er, Generator::layered, Generator::path_cluster}) {
    GenConfig cfg;
    cfg.generator = gen;
    cfg.n = 90;
    cfg.alpha = 1.6;
    cfg.seed = 11;
    cfg.trace = TraceStyle::adversarial;
    const auto a = generate_graph(cfg);
    const auto b = generate_graph(cfg);
    CHECK(dump_graph(a) == dump_graph(b));
    CHECK(dump_trace(generate_trace(a, cfg)) == dump_trace(generate_trace(b, cfg)));
    cfg.seed = 12;
    CHECK(dump_graph(generate_graph(cfg)) != dump_graph(a));
  }
}

TEST_CASE("trace text round-trips and rejects junk") {
  const std::vector<Event> ev = {{EventKind::del, 1, 2}, {EventKind::query, 0, 3},
                                 {EventKind::query_st, 0, 0}};
  std::istringstream in(dump_trace(ev));
  CHECK(read_trace(in) == ev);
  for (const char* bad : {"D 1\n", "X 1 2\n", "Q 1 2 3\n", "D a b\n", "QST 4\n"}) {
    std::istringstream junk(bad);
    CHECK_THROWS_AS(read_trace(junk), ParseError);
  }
}

TEST_CASE("static and hier produce the same answer stream") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenConfig cfg;
    cfg.generator = seed % 2 ? Generator::er : Generator::layered;
    cfg.n = 70;
    cfg.alpha = 1.5;
    cfg.seed = seed;
    cfg.trace = seed % 3 ? TraceStyle::random : TraceStyle::adversarial;
    RunConfig hier;
    RunConfig stat;
    stat.algo = Algo::static_bfs;
    RunConfig es;
    es.algo = Algo::es_baseline;
    const auto a = run_generated(cfg, hier);
    const auto b = run_generated(cfg, stat);
    const auto c = run_generated(cfg, es);
    CHECK(a.oracle_checked);
    CHECK(a.mismatches == 0);
    CHECK(b.mismatches == 0);
    CHECK(c.mismatches == 0);
    CHECK(a.answers == b.answers);
    CHECK(a.answers == c.answers);
    CHECK(a.queries == a.deletions);
    CHECK(a.invariant_violations == 0);
  }
}

TEST_CASE("a trace that does not fit the graph is an error") {
  Digraph g(3, std::vector<Edge>{{0, 1}});
  RunConfig cfg;
  cfg.engine.t = 2;
  CHECK_THROWS_AS(run(g, {{EventKind::del, 1, 2}}, cfg), GraphError);
  CHECK_THROWS_AS(run(g, {{EventKind::query_st, 0, 0}, {EventKind::del, 0, 1}, {EventKind::del, 0, 1}}, cfg),
                  GraphError);
  cfg.algo = Algo::static_bfs;
  CHECK_THROWS_AS(run(g, {{EventKind::query, 0, 7}}, cfg), std::invalid_argument);
}

TEST_CASE("empty trace gives zeroed metrics") {
  Digraph g(5, std::vector<Edge>{{0, 1}, {1, 4}});
  for (Algo algo : {Algo::static_bfs, Algo::es_baseline}) {
    RunConfig cfg;
    cfg.algo = algo;
    cfg.engine.t = 4;
    const auto rec = run(g, {}, cfg);
    CHECK(rec.deletions == 0);
    CHECK(rec.queries == 0);
    CHECK(rec.total_work == 0);
    CHECK(rec.mismatches == 0);
    CHECK(rec.answers.empty());
  }
  RunConfig cfg;
  cfg.engine.t = 4;
  const auto rec = run(g, {}, cfg);
  CHECK(rec.deletions == 0);
  CHECK(rec.queries == 0);
  CHECK(rec.q_computations == 0);
  CHECK(rec.link_flips == 0);
}

TEST_CASE("identical inputs give identical CSV rows") {
  GenConfig cfg;
  cfg.n = 100;
  cfg.alpha = 1.5;
  cfg.seed = 3;
  RunConfig rc;
  const auto a = run_generated(cfg, rc);
  const auto b = run_generated(cfg, rc);
  CHECK(csv_row(a, false) == csv_row(b, false));
  CHECK(a.answers == b.answers);
}

TEST_CASE("CSV round-trip, single-record report") {
  GenConfig cfg;
  cfg.n = 40;
  cfg.alpha = 1.3;
  RunConfig rc;
  rc.algo = Algo::es_baseline;
  auto rec = run_generated(cfg, rc);
  rec.q_hist = {1, 2, 3, 4, 5, 6};
  std::stringstream buf;
  buf << csv_header() << '\n' << csv_row(rec) << '\n' << csv_header() << '\n' << csv_row(rec) << '\n';
  const auto back = read_csv(buf);
  REQUIRE(back.size() == 2);
  CHECK(csv_row(back[0], false) == csv_row(rec, false));
  CHECK(back[0].q_hist == rec.q_hist);

  const auto rows = summarize({rec});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 40);
  CHECK(rows[0].runs == 1);
  CHECK_FALSE(rows[0].exponent.has_value());
  std::ostringstream text, csv;
  write_report_text(text, rows);
  write_report_csv(csv, rows);
  CHECK(count_lines(csv.str()) == 2);

  std::istringstream broken("generator,n\nfoo,bar\n");
  CHECK_THROWS(read_csv(broken));
}

TEST_CASE("log-log slope") {
  CHECK(*loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
  CHECK_FALSE(loglog_slope({5, 5}, {1, 2}).has_value());
}

TEST_CASE("ES baseline work grows like m n; rows monotone in n") {
  std::vector<SweepJob> jobs;
  for (std::size_t n : {64u, 128u, 256u}) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      SweepJob job;
      job.gen.n = n;
      job.gen.alpha = 1.5;
      job.gen.seed = seed;
      job.gen.trace = TraceStyle::adversarial;
      job.gen.query_every = 0;
      job.run.algo = Algo::es_baseline;
      job.run.oracle = false;
      job.run.keep_answers = false;
      jobs.push_back(job);
    }
  }
  const auto recs = run_parallel(jobs, 2);
  REQUIRE(recs.size() == jobs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].n == jobs[i].gen.n);
  const auto rows = summarize(recs);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].n > rows[i - 1].n);
    CHECK(rows[i].mean_work > rows[i - 1].mean_work);
  }
  REQUIRE(rows[0].exponent.has_value());
  // m n = n^2.5; the adversarial order makes the s-tree actually shrink.
  CHECK(*rows[0].exponent > 1.5);
  CHECK(*rows[0].exponent < 2.8);
  for (const auto& r : recs) CHECK(r.total_work <= 10 * r.m * r.n);
}
