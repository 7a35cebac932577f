#ifndef DECREACH_H
#define DECREACH_H

/* C interface to the decremental reachability library.
 *
 * Every fallible call returns a dr_status. On failure the calling thread's
 * last error message is set and stays valid until that thread's next call
 * into the library. Objects are opaque and released with their destroy
 * function; destroy accepts NULL. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DR_API __declspec(dllexport)
#else
#define DR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dr_status {
  DR_OK = 0,
  DR_INVALID_ARGUMENT = 1, /* bad config, null pointer, node out of range */
  DR_NOT_CENTER = 2,       /* query endpoint is not a 1-center */
  DR_EDGE_ERROR = 3,       /* deleting an absent edge, bad edge at construction */
  DR_PARSE_ERROR = 4,
  DR_IO_ERROR = 5,
  DR_ORACLE_MISMATCH = 6,  /* a checked run disagreed with the oracle */
  DR_INTERNAL = 7
} dr_status;

#define DR_NO_NODE UINT32_MAX

DR_API const char* dr_last_error(void);
DR_API const char* dr_status_name(dr_status status);

/* Graphs ---------------------------------------------------------------- */

typedef struct dr_graph dr_graph;

DR_API dr_status dr_graph_create(size_t node_count, const uint32_t* tails, const uint32_t* heads,
                                 size_t edge_count, dr_graph** out);
DR_API dr_status dr_graph_read_file(const char* path, dr_graph** out);
DR_API dr_status dr_graph_write_file(const dr_graph* g, const char* path);
DR_API void dr_graph_destroy(dr_graph* g);
DR_API size_t dr_graph_node_count(const dr_graph* g);
DR_API size_t dr_graph_edge_count(const dr_graph* g);
DR_API dr_status dr_graph_delete_edge(dr_graph* g, uint32_t u, uint32_t v);
DR_API dr_status dr_graph_reachable(const dr_graph* g, uint32_t u, uint32_t v, int* out);

/* Engine ---------------------------------------------------------------- */

typedef struct dr_engine_config {
  uint32_t s;
  uint32_t t;             /* DR_NO_NODE: n - 1 */
  double b;               /* <= 0: default tuning */
  double c_target;        /* <= 0: default tuning */
  double a;               /* sampling constant, default 2 */
  uint64_t seed;
  int k;                  /* > 0: explicit level count, interpolating c_target..b */
  const double* levels;   /* explicit non-increasing c_1..c_k; overrides b, c, k */
  size_t level_count;
  const uint32_t* extra_centers;
  size_t extra_center_count;
  int audit;              /* non-zero: verify every instrumented invariant (slow) */
} dr_engine_config;

DR_API void dr_engine_config_init(dr_engine_config* cfg);

typedef struct dr_engine dr_engine;

/* The engine works on its own copy of the graph. */
DR_API dr_status dr_engine_create(const dr_graph* g, const dr_engine_config* cfg, dr_engine** out);
DR_API void dr_engine_destroy(dr_engine* e);
DR_API dr_status dr_engine_delete_edge(dr_engine* e, uint32_t u, uint32_t v);
DR_API dr_status dr_engine_query(const dr_engine* e, uint32_t x, uint32_t y, int* out);
DR_API dr_status dr_engine_query_st(const dr_engine* e, int* out);
DR_API int dr_engine_is_center(const dr_engine* e, uint32_t v);
/* Writes up to cap 1-centers, ascending; *count receives the total. */
DR_API dr_status dr_engine_centers(const dr_engine* e, uint32_t* buf, size_t cap, size_t* count);
DR_API int dr_engine_level_count(const dr_engine* e);
/* level in [1, k]: c_level, its BFS depth, and |C_level|. */
DR_API dr_status dr_engine_level_info(const dr_engine* e, int level, double* c, int* depth,
                                      size_t* size);

typedef struct dr_engine_metrics {
  uint64_t total_work;
  uint64_t global_tree_work;
  uint64_t q_tree_work;
  uint64_t apu_work;
  uint64_t link_work;
  uint64_t closure_work;
  size_t deletions;
  size_t centers;
  size_t top_centers;
  size_t center_edges;
  size_t link_flips;
  size_t q_computations;
  size_t q_bound_violations;
  size_t apu_calls;
  int max_exit_index;
  int exit_bound;
  size_t invariant_violations; /* sum over every checked invariant */
} dr_engine_metrics;

DR_API dr_status dr_engine_get_metrics(const dr_engine* e, dr_engine_metrics* out);

/* Bench harness --------------------------------------------------------- */

typedef struct dr_gen_config {
  const char* generator;   /* "er", "layered", "path-cluster" */
  size_t n;
  double alpha;            /* m = round(n^alpha) */
  uint64_t seed;
  const char* trace_style; /* "random", "adversarial" */
  size_t query_every;      /* QST every this many deletions; 0: only at the end */
} dr_gen_config;

DR_API void dr_gen_config_init(dr_gen_config* cfg);
/* Writes the graph file and the trace file. */
DR_API dr_status dr_bench_generate(const dr_gen_config* cfg, const char* graph_path,
                                   const char* trace_path);

typedef struct dr_run_config {
  const char* algo;        /* "hier", "es-baseline", "static" */
  dr_engine_config engine; /* s and t apply to every algo */
  int oracle;              /* < 0: check when n <= 300; 0: never; > 0: always */
} dr_run_config;

DR_API void dr_run_config_init(dr_run_config* cfg);

/* Replays a trace. metrics_path gets one CSV row, with a header if the file
 * is new or empty; answers_path gets one line per query ("-" = stdout). Both
 * may be NULL. Returns DR_ORACLE_MISMATCH if any checked answer was wrong.
 * When gen is non-NULL the instance is generated in memory and the paths are
 * ignored. */
DR_API dr_status dr_bench_run(const char* graph_path, const char* trace_path,
                              const dr_gen_config* gen, const dr_run_config* cfg,
                              const char* metrics_path, const char* answers_path);

typedef struct dr_sweep_config {
  const char* generator;
  double alpha;
  const size_t* sizes;
  size_t size_count;
  size_t seeds;            /* seeds 1..seeds per size */
  const char* const* algos;
  size_t algo_count;
  const char* trace_style;
  size_t query_every;
  unsigned threads;        /* 0: hardware concurrency */
  dr_engine_config engine; /* tuning overrides for hier */
  int oracle;
} dr_sweep_config;

DR_API void dr_sweep_config_init(dr_sweep_config* cfg);
/* Appends one CSV row per run to metrics_path (required). */
DR_API dr_status dr_bench_sweep(const dr_sweep_config* cfg, const char* metrics_path);

/* Reads metrics CSV files and writes the comparison table as text
 * (text_path, "-" = stdout) and/or CSV (csv_path). Either may be NULL. */
DR_API dr_status dr_bench_report(const char* const* inputs, size_t input_count,
                                 const char* text_path, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif
