#include "decreach/decreach.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "decreach/bench.hpp"
#include "decreach/engine.hpp"
#include "decreach/oracles.hpp"

using namespace decreach;

struct dr_graph {
  Digraph g;
};

struct dr_engine {
  std::unique_ptr<Engine> e;
};

namespace {

thread_local std::string last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Status : std::runtime_error {
  Status(dr_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  dr_status status;
};

template <class F>
dr_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return DR_OK;
  } catch (const Status& e) {
    last_error = e.what();
    return e.status;
  } catch (const ParseError& e) {
    last_error = e.what();
    return DR_PARSE_ERROR;
  } catch (const GraphError& e) {
    last_error = e.what();
    return DR_EDGE_ERROR;
  } catch (const IoError& e) {
    last_error = e.what();
    return DR_IO_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return DR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return DR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DR_INTERNAL;
  }
}

template <class T>
void need(const T* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is null");
}

std::ifstream open_in(const char* path) {
  need(path, "path");
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot open '") + path + "' for reading");
  return in;
}

std::ofstream open_out(const char* path, bool append = false) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw IoError(std::string("cannot open '") + path + "' for writing");
  return out;
}

EngineConfig to_engine_config(const dr_engine_config& c, std::size_t n) {
  EngineConfig cfg;
  cfg.s = c.s;
  cfg.t = c.t == DR_NO_NODE && n > 0 ? static_cast<NodeId>(n - 1) : c.t;
  if (c.b > 0) cfg.b = c.b;
  if (c.c_target > 0) cfg.c_target = c.c_target;
  cfg.a = c.a;
  cfg.seed = c.seed;
  cfg.k = c.k;
  if (c.level_count > 0) {
    need(c.levels, "levels");
    cfg.levels.assign(c.levels, c.levels + c.level_count);
  }
  if (c.extra_center_count > 0) {
    need(c.extra_centers, "extra_centers");
    cfg.extra_centers.assign(c.extra_centers, c.extra_centers + c.extra_center_count);
  }
  cfg.audit = c.audit != 0;
  return cfg;
}

bench::GenConfig to_gen_config(const dr_gen_config& c) {
  bench::GenConfig g;
  need(c.generator, "generator");
  need(c.trace_style, "trace_style");
  g.generator = bench::parse_generator(c.generator);
  g.n = c.n;
  g.alpha = c.alpha;
  g.seed = c.seed;
  g.trace = bench::parse_trace_style(c.trace_style);
  g.query_every = c.query_every;
  bench::validate(g);
  return g;
}

std::optional<bool> oracle_mode(int v) {
  if (v < 0) return std::nullopt;
  return v > 0;
}

void append_metrics(const char* path, const std::vector<bench::RunRecord>& recs) {
  bool fresh = true;
  {
    std::ifstream probe(path, std::ios::ate);
    if (probe && probe.tellg() > 0) fresh = false;
  }
  auto out = open_out(path, true);
  if (fresh) out << bench::csv_header() << '\n';
  for (const auto& r : recs) out << bench::csv_row(r) << '\n';
  if (!out) throw IoError(std::string("write failed on '") + path + "'");
}

void check_mismatches(const std::vector<bench::RunRecord>& recs) {
  std::size_t bad = 0;
  for (const auto& r : recs) bad += r.mismatches;
  if (bad > 0) {
    throw Status(DR_ORACLE_MISMATCH, std::to_string(bad) + " answer(s) disagree with the oracle");
  }
}

}  // namespace

extern "C" {

const char* dr_last_error(void) { return last_error.c_str(); }

const char* dr_status_name(dr_status status) {
  switch (status) {
    case DR_OK: return "ok";
    case DR_INVALID_ARGUMENT: return "invalid argument";
    case DR_NOT_CENTER: return "not a center";
    case DR_EDGE_ERROR: return "edge error";
    case DR_PARSE_ERROR: return "parse error";
    case DR_IO_ERROR: return "i/o error";
    case DR_ORACLE_MISMATCH: return "oracle mismatch";
    case DR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dr_status dr_graph_create(size_t node_count, const uint32_t* tails, const uint32_t* heads,
                          size_t edge_count, dr_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    if (edge_count > 0) {
      need(tails, "tails");
      need(heads, "heads");
    }
    std::vector<Edge> edges(edge_count);
    for (size_t i = 0; i < edge_count; ++i) edges[i] = {tails[i], heads[i]};
    *out = new dr_graph{Digraph(node_count, edges)};
  });
}

dr_status dr_graph_read_file(const char* path, dr_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto in = open_in(path);
    *out = new dr_graph{read_graph(in)};
  });
}

dr_status dr_graph_write_file(const dr_graph* g, const char* path) {
  return guard([&] {
    need(g, "graph");
    need(path, "path");
    auto out = open_out(path);
    const auto edges = g->g.edges();
    write_graph(out, g->g.node_count(), edges);
    if (!out) throw IoError(std::string("write failed on '") + path + "'");
  });
}

void dr_graph_destroy(dr_graph* g) { delete g; }

size_t dr_graph_node_count(const dr_graph* g) { return g ? g->g.node_count() : 0; }
size_t dr_graph_edge_count(const dr_graph* g) { return g ? g->g.edge_count() : 0; }

dr_status dr_graph_delete_edge(dr_graph* g, uint32_t u, uint32_t v) {
  return guard([&] {
    need(g, "graph");
    g->g.delete_edge(u, v);
  });
}

dr_status dr_graph_reachable(const dr_graph* g, uint32_t u, uint32_t v, int* out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    if (u >= g->g.node_count() || v >= g->g.node_count()) {
      throw std::out_of_range("node out of range");
    }
    *out = static_reachable(g->g, u, v) ? 1 : 0;
  });
}

void dr_engine_config_init(dr_engine_config* cfg) {
  if (!cfg) return;
  *cfg = dr_engine_config{};
  cfg->s = 0;
  cfg->t = DR_NO_NODE;
  cfg->a = 2.0;
  cfg->seed = 1;
}

dr_status dr_engine_create(const dr_graph* g, const dr_engine_config* cfg, dr_engine** out) {
  return guard([&] {
    need(g, "graph");
    need(cfg, "config");
    need(out, "out");
    *out = nullptr;
    auto engine = std::make_unique<Engine>(g->g, to_engine_config(*cfg, g->g.node_count()));
    *out = new dr_engine{std::move(engine)};
  });
}

void dr_engine_destroy(dr_engine* e) { delete e; }

dr_status dr_engine_delete_edge(dr_engine* e, uint32_t u, uint32_t v) {
  return guard([&] {
    need(e, "engine");
    e->e->delete_edge(u, v);
  });
}

dr_status dr_engine_query(const dr_engine* e, uint32_t x, uint32_t y, int* out) {
  return guard([&] {
    need(e, "engine");
    need(out, "out");
    if (!e->e->is_center(x) || !e->e->is_center(y)) {
      throw Status(DR_NOT_CENTER, "query endpoints must both be 1-centers");
    }
    *out = e->e->query(x, y) ? 1 : 0;
  });
}

dr_status dr_engine_query_st(const dr_engine* e, int* out) {
  return guard([&] {
    need(e, "engine");
    need(out, "out");
    *out = e->e->query_st() ? 1 : 0;
  });
}

int dr_engine_is_center(const dr_engine* e, uint32_t v) {
  return e && e->e->is_center(v) ? 1 : 0;
}

dr_status dr_engine_centers(const dr_engine* e, uint32_t* buf, size_t cap, size_t* count) {
  return guard([&] {
    need(e, "engine");
    need(count, "count");
    const auto& c = e->e->centers();
    *count = c.size();
    if (cap > 0) need(buf, "buf");
    for (size_t i = 0; i < c.size() && i < cap; ++i) buf[i] = c[i];
  });
}

int dr_engine_level_count(const dr_engine* e) { return e ? e->e->params().k : 0; }

dr_status dr_engine_level_info(const dr_engine* e, int level, double* c, int* depth, size_t* size) {
  return guard([&] {
    need(e, "engine");
    const auto& p = e->e->params();
    if (level < 1 || level > p.k) throw std::out_of_range("level out of range");
    if (c) *c = p.c_at(level);
    if (depth) *depth = p.depth_at(level);
    if (size) *size = e->e->center_sets().levels[static_cast<size_t>(level - 1)].size();
  });
}

dr_status dr_engine_get_metrics(const dr_engine* e, dr_engine_metrics* out) {
  return guard([&] {
    need(e, "engine");
    need(out, "out");
    const EngineMetrics m = e->e->metrics();
    dr_engine_metrics r{};
    r.total_work = m.total_work();
    r.global_tree_work = m.global_tree_work;
    r.q_tree_work = m.q_tree_work;
    r.apu_work = m.apu_work;
    r.link_work = m.link_work;
    r.closure_work = m.closure_work;
    r.deletions = m.deletions;
    r.centers = m.centers;
    r.top_centers = m.top_centers;
    r.center_edges = m.center_edges;
    r.link_flips = m.link_flips;
    r.q_computations = m.q_computations;
    r.q_bound_violations = m.q_bound_violations;
    r.apu_calls = m.apu_calls;
    r.max_exit_index = m.max_exit_index;
    r.exit_bound = m.exit_bound;
    r.invariant_violations = m.exit_bound_violations + m.es_budget_violations +
                             m.level_order_violations + m.unsafe_removals +
                             m.sandwich_violations + m.apu_charge_violations +
                             m.apu_lifetime_violations + m.link_monotonicity_violations;
    *out = r;
  });
}

void dr_gen_config_init(dr_gen_config* cfg) {
  if (!cfg) return;
  *cfg = dr_gen_config{};
  cfg->generator = "er";
  cfg->n = 64;
  cfg->alpha = 1.5;
  cfg->seed = 1;
  cfg->trace_style = "random";
  cfg->query_every = 1;
}

dr_status dr_bench_generate(const dr_gen_config* cfg, const char* graph_path,
                            const char* trace_path) {
  return guard([&] {
    need(cfg, "config");
    need(graph_path, "graph_path");
    need(trace_path, "trace_path");
    const auto gen = to_gen_config(*cfg);
    const auto inst = bench::generate_graph(gen);
    const auto trace = bench::generate_trace(inst, gen);
    auto g = open_out(graph_path);
    write_graph(g, inst.n, inst.edges);
    auto t = open_out(trace_path);
    bench::write_trace(t, trace);
    if (!g || !t) throw IoError("write failed");
  });
}

void dr_run_config_init(dr_run_config* cfg) {
  if (!cfg) return;
  *cfg = dr_run_config{};
  cfg->algo = "hier";
  dr_engine_config_init(&cfg->engine);
  cfg->oracle = -1;
}

dr_status dr_bench_run(const char* graph_path, const char* trace_path, const dr_gen_config* gen,
                       const dr_run_config* cfg, const char* metrics_path,
                       const char* answers_path) {
  return guard([&] {
    need(cfg, "config");
    need(cfg->algo, "algo");
    bench::RunConfig run;
    run.algo = bench::parse_algo(cfg->algo);
    run.oracle = oracle_mode(cfg->oracle);
    run.keep_answers = answers_path != nullptr;
    bench::RunRecord rec;
    if (gen) {
      run.engine = to_engine_config(cfg->engine, gen->n);
      rec = bench::run_generated(to_gen_config(*gen), run);
    } else {
      auto gin = open_in(graph_path);
      const Digraph g = read_graph(gin);
      auto tin = open_in(trace_path);
      const auto trace = bench::read_trace(tin);
      run.engine = to_engine_config(cfg->engine, g.node_count());
      rec = bench::run(g, trace, run);
    }
    if (metrics_path) append_metrics(metrics_path, {rec});
    if (answers_path) {
      if (std::string(answers_path) == "-") {
        bench::write_answers(std::cout, rec);
        std::cout.flush();
      } else {
        auto out = open_out(answers_path);
        bench::write_answers(out, rec);
      }
    }
    check_mismatches({rec});
  });
}

void dr_sweep_config_init(dr_sweep_config* cfg) {
  if (!cfg) return;
  *cfg = dr_sweep_config{};
  cfg->generator = "er";
  cfg->alpha = 1.5;
  cfg->seeds = 1;
  cfg->trace_style = "random";
  cfg->query_every = 1;
  dr_engine_config_init(&cfg->engine);
  cfg->oracle = -1;
}

dr_status dr_bench_sweep(const dr_sweep_config* cfg, const char* metrics_path) {
  return guard([&] {
    need(cfg, "config");
    need(metrics_path, "metrics_path");
    if (cfg->size_count > 0) need(cfg->sizes, "sizes");
    if (cfg->algo_count > 0) need(cfg->algos, "algos");
    std::vector<bench::SweepJob> jobs;
    for (size_t i = 0; i < cfg->size_count; ++i) {
      for (uint64_t seed = 1; seed <= cfg->seeds; ++seed) {
        for (size_t a = 0; a < cfg->algo_count; ++a) {
          dr_gen_config gc{cfg->generator, cfg->sizes[i], cfg->alpha, seed, cfg->trace_style,
                           cfg->query_every};
          bench::SweepJob job;
          job.gen = to_gen_config(gc);
          need(cfg->algos[a], "algo");
          job.run.algo = bench::parse_algo(cfg->algos[a]);
          job.run.engine = to_engine_config(cfg->engine, cfg->sizes[i]);
          job.run.engine.seed = seed;
          job.run.oracle = oracle_mode(cfg->oracle);
          job.run.keep_answers = false;
          jobs.push_back(std::move(job));
        }
      }
    }
    const auto recs = bench::run_parallel(jobs, cfg->threads);
    append_metrics(metrics_path, recs);
    check_mismatches(recs);
  });
}

dr_status dr_bench_report(const char* const* inputs, size_t input_count, const char* text_path,
                          const char* csv_path) {
  return guard([&] {
    if (input_count > 0) need(inputs, "inputs");
    std::vector<bench::RunRecord> all;
    for (size_t i = 0; i < input_count; ++i) {
      auto in = open_in(inputs[i]);
      auto recs = bench::read_csv(in);
      all.insert(all.end(), recs.begin(), recs.end());
    }
    const auto rows = bench::summarize(all);
    if (text_path) {
      if (std::string(text_path) == "-") {
        bench::write_report_text(std::cout, rows);
        std::cout.flush();
      } else {
        auto out = open_out(text_path);
        bench::write_report_text(out, rows);
      }
    }
    if (csv_path) {
      auto out = open_out(csv_path);
      bench::write_report_csv(out, rows);
    }
  });
}

}  // extern "C"
