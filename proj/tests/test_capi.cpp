// Links only the shared library; nothing from the C++ core is visible here.
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "decreach/decreach.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("decreach_capi_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

dr_graph* make_graph(std::size_t n, const std::vector<std::pair<uint32_t, uint32_t>>& arcs) {
  std::vector<uint32_t> tails, heads;
  for (auto [u, v] : arcs) {
    tails.push_back(u);
    heads.push_back(v);
  }
  dr_graph* g = nullptr;
  REQUIRE(dr_graph_create(n, tails.data(), heads.data(), arcs.size(), &g) == DR_OK);
  return g;
}

}  // namespace

TEST_CASE("graph handles") {
  dr_graph* g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(dr_graph_node_count(g) == 4);
  CHECK(dr_graph_edge_count(g) == 3);
  int r = 0;
  CHECK(dr_graph_reachable(g, 0, 3, &r) == DR_OK);
  CHECK(r == 1);
  CHECK(dr_graph_delete_edge(g, 1, 2) == DR_OK);
  CHECK(dr_graph_reachable(g, 0, 3, &r) == DR_OK);
  CHECK(r == 0);
  CHECK(dr_graph_delete_edge(g, 1, 2) == DR_EDGE_ERROR);
  CHECK(std::string(dr_last_error()).size() > 0);
  CHECK(dr_graph_reachable(g, 0, 9, &r) == DR_INVALID_ARGUMENT);
  dr_graph_destroy(g);
  dr_graph_destroy(nullptr);

  const uint32_t t[] = {0}, h[] = {0};
  dr_graph* bad = nullptr;
  CHECK(dr_graph_create(2, t, h, 1, &bad) != DR_OK);
  CHECK(bad == nullptr);
  CHECK(dr_graph_read_file("/nonexistent/graph.txt", &bad) == DR_IO_ERROR);
  CHECK(std::string(dr_status_name(DR_ORACLE_MISMATCH)).size() > 0);
}

TEST_CASE("engine handles") {
  dr_graph* g = make_graph(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}});
  dr_engine_config cfg;
  dr_engine_config_init(&cfg);
  dr_engine* e = nullptr;
  REQUIRE(dr_engine_create(g, &cfg, &e) == DR_OK);
  // The engine holds its own copy.
  CHECK(dr_graph_delete_edge(g, 0, 1) == DR_OK);
  int r = 0;
  CHECK(dr_engine_query_st(e, &r) == DR_OK);
  CHECK(r == 1);
  CHECK(dr_engine_delete_edge(e, 1, 2) == DR_OK);
  CHECK(dr_engine_query_st(e, &r) == DR_OK);
  CHECK(r == 1);
  CHECK(dr_engine_delete_edge(e, 3, 4) == DR_OK);
  CHECK(dr_engine_query_st(e, &r) == DR_OK);
  CHECK(r == 0);
  CHECK(dr_engine_delete_edge(e, 3, 4) == DR_EDGE_ERROR);
  CHECK(dr_engine_is_center(e, 0));
  CHECK(dr_engine_is_center(e, 5));

  size_t count = 0;
  CHECK(dr_engine_centers(e, nullptr, 0, &count) == DR_OK);
  std::vector<uint32_t> buf(count);
  CHECK(dr_engine_centers(e, buf.data(), buf.size(), &count) == DR_OK);
  CHECK(std::is_sorted(buf.begin(), buf.end()));
  const int k = dr_engine_level_count(e);
  CHECK(k >= 1);
  double c = 0;
  int depth = 0;
  size_t size = 0;
  CHECK(dr_engine_level_info(e, 1, &c, &depth, &size) == DR_OK);
  CHECK(size == count);
  CHECK(depth >= 1);
  CHECK(dr_engine_level_info(e, k + 1, &c, &depth, &size) == DR_INVALID_ARGUMENT);

  dr_engine_metrics m;
  CHECK(dr_engine_get_metrics(e, &m) == DR_OK);
  CHECK(m.deletions == 2);
  CHECK(m.invariant_violations == 0);
  CHECK(m.total_work == m.global_tree_work + m.q_tree_work + m.apu_work + m.link_work + m.closure_work);
  dr_engine_destroy(e);
  dr_graph_destroy(g);
}

TEST_CASE("non-center queries and bad configs") {
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  for (uint32_t v = 0; v + 1 < 400; ++v) arcs.push_back({v, v + 1});
  dr_graph* g = make_graph(400, arcs);
  dr_engine_config cfg;
  dr_engine_config_init(&cfg);
  const double levels[] = {1.0};
  cfg.levels = levels;
  cfg.level_count = 1;
  dr_engine* e = nullptr;
  REQUIRE(dr_engine_create(g, &cfg, &e) == DR_OK);
  uint32_t outside = DR_NO_NODE;
  for (uint32_t v = 0; v < 400 && outside == DR_NO_NODE; ++v)
    if (!dr_engine_is_center(e, v)) outside = v;
  REQUIRE(outside != DR_NO_NODE);
  int r = 0;
  CHECK(dr_engine_query(e, 0, outside, &r) == DR_NOT_CENTER);
  dr_engine_destroy(e);

  cfg.levels = nullptr;
  cfg.level_count = 0;
  cfg.b = 50;
  cfg.c_target = 10;
  e = nullptr;
  CHECK(dr_engine_create(g, &cfg, &e) == DR_INVALID_ARGUMENT);
  CHECK(e == nullptr);
  dr_engine_config_init(&cfg);
  cfg.s = 400;
  CHECK(dr_engine_create(g, &cfg, &e) == DR_INVALID_ARGUMENT);
  dr_graph_destroy(g);
}

TEST_CASE("generate, run, report through files") {
  TempDir dir;
  const auto graph = dir.file("g.txt"), trace = dir.file("t.txt");
  dr_gen_config gen;
  dr_gen_config_init(&gen);
  gen.n = 50;
  gen.alpha = 1.4;
  gen.seed = 4;
  REQUIRE(dr_bench_generate(&gen, graph.c_str(), trace.c_str()) == DR_OK);
  const auto g1 = slurp(graph), t1 = slurp(trace);
  REQUIRE(dr_bench_generate(&gen, graph.c_str(), trace.c_str()) == DR_OK);
  CHECK(slurp(graph) == g1);
  CHECK(slurp(trace) == t1);

  dr_graph* g = nullptr;
  REQUIRE(dr_graph_read_file(graph.c_str(), &g) == DR_OK);
  CHECK(dr_graph_node_count(g) == 50);
  dr_graph_destroy(g);

  const auto metrics = dir.file("m.csv"), a1 = dir.file("a1.txt"), a2 = dir.file("a2.txt");
  dr_run_config run;
  dr_run_config_init(&run);
  CHECK(dr_bench_run(graph.c_str(), trace.c_str(), nullptr, &run, metrics.c_str(), a1.c_str()) == DR_OK);
  run.algo = "static";
  CHECK(dr_bench_run(graph.c_str(), trace.c_str(), nullptr, &run, metrics.c_str(), a2.c_str()) == DR_OK);
  CHECK(slurp(a1) == slurp(a2));
  CHECK(!slurp(a1).empty());
  // One header, two rows.
  std::istringstream rows(slurp(metrics));
  std::string line;
  int lines = 0;
  while (std::getline(rows, line)) ++lines;
  CHECK(lines == 3);

  run.algo = "bogus";
  CHECK(dr_bench_run(graph.c_str(), trace.c_str(), nullptr, &run, nullptr, nullptr) == DR_INVALID_ARGUMENT);
  run.algo = "hier";
  CHECK(dr_bench_run(graph.c_str(), dir.file("missing").c_str(), nullptr, &run, nullptr, nullptr) ==
        DR_IO_ERROR);
  {
    std::ofstream bad(dir.file("bad.txt"));
    bad << "D 0\n";
  }
  CHECK(dr_bench_run(graph.c_str(), dir.file("bad.txt").c_str(), nullptr, &run, nullptr, nullptr) ==
        DR_PARSE_ERROR);

  const auto text = dir.file("r.txt"), csv = dir.file("r.csv");
  const char* inputs[] = {metrics.c_str()};
  CHECK(dr_bench_report(inputs, 1, text.c_str(), csv.c_str()) == DR_OK);
  CHECK(!slurp(text).empty());
  CHECK(!slurp(csv).empty());

  const auto swept = dir.file("sweep.csv");
  dr_sweep_config sweep;
  dr_sweep_config_init(&sweep);
  const size_t sizes[] = {30, 60};
  const char* algos[] = {"hier", "es-baseline"};
  sweep.sizes = sizes;
  sweep.size_count = 2;
  sweep.algos = algos;
  sweep.algo_count = 2;
  sweep.seeds = 2;
  sweep.threads = 2;
  CHECK(dr_bench_sweep(&sweep, swept.c_str()) == DR_OK);
  std::istringstream srows(slurp(swept));
  lines = 0;
  while (std::getline(srows, line)) ++lines;
  CHECK(lines == 1 + 2 * 2 * 2);
}
