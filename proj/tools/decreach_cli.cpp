// decreach: instance generation, trace replay and reporting.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "decreach/decreach.h"

namespace {

struct EngineFlags {
  std::uint32_t s = 0;
  long long t = -1;
  double b = 0, c = 0, a = 2.0;
  int k = 0;
  std::vector<double> levels;
  std::vector<std::uint32_t> extra;
  std::uint64_t seed = 1;
  bool audit = false;

  void add(CLI::App* app) {
    app->add_option("--s", s, "source node")->capture_default_str();
    app->add_option("--t", t, "target node (default n-1)");
    app->add_option("--b", b, "tuning b (default n^{5/3}/m^{2/3})");
    app->add_option("--c", c, "tuning c (default n^{4/3}/m^{1/3})");
    app->add_option("--a", a, "sampling constant")->capture_default_str();
    app->add_option("--k", k, "explicit level count");
    app->add_option("--levels", levels, "explicit c_1,...,c_k")->delimiter(',');
    app->add_option("--extra-centers", extra, "extra 1-centers")->delimiter(',');
    app->add_option("--engine-seed", seed, "center sampling seed")->capture_default_str();
    app->add_flag("--audit", audit, "check every instrumented invariant (slow)");
  }

  dr_engine_config config() const {
    dr_engine_config cfg;
    dr_engine_config_init(&cfg);
    cfg.s = s;
    cfg.t = t < 0 ? DR_NO_NODE : static_cast<std::uint32_t>(t);
    cfg.b = b;
    cfg.c_target = c;
    cfg.a = a;
    cfg.k = k;
    cfg.levels = levels.empty() ? nullptr : levels.data();
    cfg.level_count = levels.size();
    cfg.extra_centers = extra.empty() ? nullptr : extra.data();
    cfg.extra_center_count = extra.size();
    cfg.seed = seed;
    cfg.audit = audit ? 1 : 0;
    return cfg;
  }
};

struct GenFlags {
  std::string gen = "er";
  std::size_t n = 64;
  double alpha = 1.5;
  std::uint64_t seed = 1;
  std::string trace = "random";
  std::size_t query_every = 1;

  void add(CLI::App* app, bool with_n = true) {
    app->add_option("--gen", gen, "er | layered | path-cluster")->capture_default_str();
    if (with_n) app->add_option("--n", n, "node count")->capture_default_str();
    app->add_option("--alpha", alpha, "density exponent, m = n^alpha")->capture_default_str();
    if (with_n) app->add_option("--seed", seed, "instance seed")->capture_default_str();
    app->add_option("--trace-style", trace, "random | adversarial")->capture_default_str();
    app->add_option("--query-every", query_every, "QST after every this many deletions (0: end only)")
        ->capture_default_str();
  }

  dr_gen_config config() const {
    dr_gen_config cfg;
    dr_gen_config_init(&cfg);
    cfg.generator = gen.c_str();
    cfg.n = n;
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.trace_style = trace.c_str();
    cfg.query_every = query_every;
    return cfg;
  }
};

int finish(dr_status st) {
  if (st == DR_OK) return 0;
  std::fprintf(stderr, "decreach: %s: %s\n", dr_status_name(st), dr_last_error());
  return st == DR_ORACLE_MISMATCH ? 3 : (st == DR_INVALID_ARGUMENT ? 2 : 1);
}

// Values are validated by CLI11.
int oracle_flag(const std::string& s) { return s == "auto" ? -1 : (s == "on" ? 1 : 0); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decremental s-t reachability: generate instances, replay traces, report work"};
  app.require_subcommand(1);

  GenFlags gen_flags;
  std::string graph_out, trace_out;
  auto* generate = app.add_subcommand("generate", "write a graph file and a deletion trace");
  gen_flags.add(generate);
  generate->add_option("--graph-out", graph_out, "graph file")->required();
  generate->add_option("--trace-out", trace_out, "trace file")->required();

  GenFlags run_gen;
  EngineFlags run_engine;
  std::string graph_in, trace_in, algo = "hier", out, answers, oracle = "auto";
  auto* run = app.add_subcommand(
      "run", "replay a trace (from files, or generated when --graph is absent)");
  run->add_option("--graph", graph_in, "graph file");
  run->add_option("--trace", trace_in, "trace file");
  run_gen.add(run);
  run_engine.add(run);
  run->add_option("--algo", algo, "hier | es-baseline | static")->capture_default_str();
  run->add_option("--out", out, "append a metrics CSV row here");
  run->add_option("--answers", answers, "one line per query answer ('-' for stdout)");
  run->add_option("--oracle", oracle, "auto (n <= 300) | on | off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();

  GenFlags sweep_gen;
  EngineFlags sweep_engine;
  std::vector<std::size_t> sizes{128, 256, 512};
  std::vector<std::string> algos{"es-baseline", "hier"};
  std::size_t seeds = 1;
  unsigned threads = 0;
  std::string sweep_out, sweep_oracle = "auto";
  auto* sweep = app.add_subcommand("sweep", "run a grid of sizes x seeds x algorithms");
  sweep_gen.add(sweep, false);
  sweep_engine.add(sweep);
  sweep->add_option("--sizes", sizes, "node counts")->delimiter(',')->capture_default_str();
  sweep->add_option("--algos", algos, "algorithms")->delimiter(',')->capture_default_str();
  sweep->add_option("--seeds", seeds, "seeds 1..N per size")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  sweep->add_option("--out", sweep_out, "metrics CSV (appended)")->required();
  sweep->add_option("--oracle", sweep_oracle, "auto | on | off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();

  std::vector<std::string> inputs;
  std::string report_csv, report_text = "-";
  auto* report = app.add_subcommand("report", "summarize metrics CSVs with fitted work exponents");
  report->add_option("inputs", inputs, "metrics CSV files")->required();
  report->add_option("--csv", report_csv, "write the table as CSV");
  report->add_option("--text", report_text, "write the table as text ('-' for stdout)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*generate) {
    const auto cfg = gen_flags.config();
    return finish(dr_bench_generate(&cfg, graph_out.c_str(), trace_out.c_str()));
  }
  if (*run) {
    dr_run_config cfg;
    dr_run_config_init(&cfg);
    cfg.algo = algo.c_str();
    cfg.engine = run_engine.config();
    cfg.oracle = oracle_flag(oracle);
    const bool from_files = !graph_in.empty();
    if (from_files && trace_in.empty()) {
      std::fprintf(stderr, "decreach: --graph needs --trace\n");
      return 2;
    }
    const auto gcfg = run_gen.config();
    return finish(dr_bench_run(from_files ? graph_in.c_str() : nullptr,
                               from_files ? trace_in.c_str() : nullptr,
                               from_files ? nullptr : &gcfg, &cfg,
                               out.empty() ? nullptr : out.c_str(),
                               answers.empty() ? nullptr : answers.c_str()));
  }
  if (*sweep) {
    std::vector<const char*> algo_ptrs;
    for (const auto& a : algos) algo_ptrs.push_back(a.c_str());
    dr_sweep_config cfg;
    dr_sweep_config_init(&cfg);
    cfg.generator = sweep_gen.gen.c_str();
    cfg.alpha = sweep_gen.alpha;
    cfg.sizes = sizes.data();
    cfg.size_count = sizes.size();
    cfg.seeds = seeds;
    cfg.algos = algo_ptrs.data();
    cfg.algo_count = algo_ptrs.size();
    cfg.trace_style = sweep_gen.trace.c_str();
    cfg.query_every = sweep_gen.query_every;
    cfg.threads = threads;
    cfg.engine = sweep_engine.config();
    cfg.oracle = oracle_flag(sweep_oracle);
    return finish(dr_bench_sweep(&cfg, sweep_out.c_str()));
  }
  if (*report) {
    std::vector<const char*> ptrs;
    for (const auto& s : inputs) ptrs.push_back(s.c_str());
    return finish(dr_bench_report(ptrs.data(), ptrs.size(),
                                  report_text.empty() ? nullptr : report_text.c_str(),
                                  report_csv.empty() ? nullptr : report_csv.c_str()));
  }
  return 0;
}
