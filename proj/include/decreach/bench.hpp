#pragma once

// Instance and trace generation, trace replay through an algorithm, metrics
// records, and the comparison report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decreach/engine.hpp"
#include "decreach/graph.hpp"

namespace decreach::bench {

enum class Generator { er, layered, path_cluster };
enum class TraceStyle { random, adversarial };
enum class Algo { hier, es_baseline, static_bfs };

Generator parse_generator(const std::string& s);
TraceStyle parse_trace_style(const std::string& s);
Algo parse_algo(const std::string& s);
std::string to_string(Generator g);
std::string to_string(TraceStyle t);
std::string to_string(Algo a);

struct GenConfig {
  Generator generator = Generator::er;
  std::size_t n = 64;
  double alpha = 1.5;  // m = round(n^alpha), capped at n(n-1)
  std::uint64_t seed = 1;
  TraceStyle trace = TraceStyle::random;
  std::size_t query_every = 1;  // QST after every this many deletions; 0 = only at the end
};

/// Throws std::invalid_argument for n < 2 or alpha outside [1, 2].
void validate(const GenConfig& cfg);
std::size_t target_edges(std::size_t n, double alpha);

/// Generated instances always use s = 0 and t = n - 1.
struct Instance {
  std::size_t n = 0;
  std::vector<Edge> edges;
  NodeId s = 0;
  NodeId t = 0;
};

Instance generate_graph(const GenConfig& cfg);

enum class EventKind { del, query, query_st };
struct Event {
  EventKind kind = EventKind::query_st;
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Event&, const Event&) = default;
};

/// Deletes every edge once. The order is fixed here, before any algorithm
/// sees it. Adversarial traces keep cutting the current shortest s-t path
/// while s reaches t, then finish in random order.
std::vector<Event> generate_trace(const Instance& inst, const GenConfig& cfg);

void write_trace(std::ostream& out, const std::vector<Event>& events);
/// Strict; throws ParseError.
std::vector<Event> read_trace(std::istream& in);

struct RunConfig {
  Algo algo = Algo::hier;
  EngineConfig engine;           // s and t are taken from here
  std::optional<bool> oracle;    // default: check when n <= kOracleMaxNodes
  bool keep_answers = true;
};

inline constexpr std::size_t kOracleMaxNodes = 300;

/// Ratio |Q| / (n / c_{l+1}) histogram bins.
inline constexpr double kQHistEdges[] = {0.25, 0.5, 0.75, 1.0, 2.0};
inline constexpr std::size_t kQHistBins = 6;

struct RunRecord {
  // Instance description; filled by callers that know it.
  std::string generator = "file";
  std::string trace = "file";
  double alpha = 0.0;
  std::uint64_t gen_seed = 0;

  Algo algo = Algo::hier;
  std::size_t n = 0;
  std::size_t m = 0;
  int k = 0;
  std::size_t centers = 0;
  std::size_t top_centers = 0;
  std::size_t deletions = 0;
  std::size_t queries = 0;
  std::size_t true_answers = 0;
  bool oracle_checked = false;
  std::size_t mismatches = 0;

  std::uint64_t build_work = 0;  // construction; not part of the columns below
  std::uint64_t total_work = 0;
  std::uint64_t global_tree_work = 0;
  std::uint64_t q_tree_work = 0;
  std::uint64_t apu_work = 0;
  std::uint64_t link_work = 0;
  std::uint64_t closure_work = 0;
  std::size_t q_computations = 0;
  std::size_t q_bound_violations = 0;
  std::size_t q_size_max = 0;
  std::vector<std::size_t> q_hist = std::vector<std::size_t>(kQHistBins, 0);
  int max_exit_index = 0;
  int exit_bound = 0;
  std::size_t invariant_violations = 0;  // sum of every engine violation counter
  std::size_t link_flips = 0;
  double wall_ms = 0.0;

  std::vector<std::uint8_t> answers;
};

/// Replays the trace. Throws GraphError / std::invalid_argument on a trace
/// that does not fit the graph. Oracle mismatches are counted, not thrown.
RunRecord run(const Digraph& graph, const std::vector<Event>& trace, const RunConfig& cfg);

/// Generates, replays, and fills in the instance columns.
RunRecord run_generated(const GenConfig& gen, RunConfig cfg);

/// One line per query answer, "1" or "0".
void write_answers(std::ostream& out, const RunRecord& rec);

std::string csv_header();
/// Timing is the only column that differs between identical runs.
std::string csv_row(const RunRecord& rec, bool with_timing = true);
std::vector<RunRecord> read_csv(std::istream& in);

struct ReportRow {
  std::string generator;
  double alpha = 0.0;
  Algo algo = Algo::hier;
  std::size_t n = 0;
  std::size_t runs = 0;
  double mean_m = 0.0;
  double mean_work = 0.0;
  std::optional<double> exponent;  // fitted d log(work) / d log(n) over the group
};

std::vector<ReportRow> summarize(const std::vector<RunRecord>& records);
/// Least-squares slope of log(y) on log(x); nullopt with fewer than two distinct x.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);
void write_report_text(std::ostream& out, const std::vector<ReportRow>& rows);
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

struct SweepJob {
  GenConfig gen;
  RunConfig run;
};
/// Runs jobs on `threads` workers (0 = hardware concurrency); results keep job order.
std::vector<RunRecord> run_parallel(const std::vector<SweepJob>& jobs, unsigned threads);

}  // namespace decreach::bench
