#include "decreach/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "decreach/center_hierarchy.hpp"
#include "decreach/oracles.hpp"

namespace decreach::bench {

Generator parse_generator(const std::string& s) {
  if (s == "er") return Generator::er;
  if (s == "layered") return Generator::layered;
  if (s == "path-cluster") return Generator::path_cluster;
  throw std::invalid_argument("unknown generator '" + s + "' (er, layered, path-cluster)");
}

TraceStyle parse_trace_style(const std::string& s) {
  if (s == "random") return TraceStyle::random;
  if (s == "adversarial") return TraceStyle::adversarial;
  throw std::invalid_argument("unknown trace style '" + s + "' (random, adversarial)");
}

Algo parse_algo(const std::string& s) {
  if (s == "hier") return Algo::hier;
  if (s == "es-baseline") return Algo::es_baseline;
  if (s == "static") return Algo::static_bfs;
  throw std::invalid_argument("unknown algo '" + s + "' (hier, es-baseline, static)");
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::er: return "er";
    case Generator::layered: return "layered";
    case Generator::path_cluster: return "path-cluster";
  }
  return "?";
}

std::string to_string(TraceStyle t) {
  return t == TraceStyle::random ? "random" : "adversarial";
}

std::string to_string(Algo a) {
  switch (a) {
    case Algo::hier: return "hier";
    case Algo::es_baseline: return "es-baseline";
    case Algo::static_bfs: return "static";
  }
  return "?";
}

void validate(const GenConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("generator needs n >= 2");
  if (cfg.n >= kNoNode) throw std::invalid_argument("n too large");
  if (!(cfg.alpha >= 1.0 && cfg.alpha <= 2.0)) {
    throw std::invalid_argument("density exponent alpha must lie in [1, 2]");
  }
}

std::size_t target_edges(std::size_t n, double alpha) {
  const auto want = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), alpha)));
  return std::min(want, n * (n - 1));
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

class EdgePicker {
 public:
  EdgePicker(std::size_t n, std::size_t m, Rng& rng) : n_(n), m_(m), rng_(&rng) {
    chosen_.reserve(m * 2);
  }
  bool full() const { return out_.size() >= m_; }
  bool add(NodeId u, NodeId v) {
    if (full() || u == v) return false;
    if (!chosen_.insert((std::uint64_t{u} << 32) | v).second) return false;
    out_.push_back({u, v});
    return true;
  }
  void take_from(std::vector<Edge> pool) {
    shuffle(pool, *rng_);
    for (const Edge& e : pool) {
      if (full()) return;
      add(e.tail, e.head);
    }
  }
  void fill_uniform() {
    while (!full()) {
      add(static_cast<NodeId>(rng_->below(n_)), static_cast<NodeId>(rng_->below(n_)));
    }
  }
  std::vector<Edge> finish() {
    std::sort(out_.begin(), out_.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
    });
    return std::move(out_);
  }

 private:
  std::size_t n_, m_;
  Rng* rng_;
  std::unordered_set<std::uint64_t> chosen_;
  std::vector<Edge> out_;
};

}  // namespace

Instance generate_graph(const GenConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.n;
  const std::size_t m = target_edges(n, cfg.alpha);
  Rng rng(cfg.seed);
  EdgePicker pick(n, m, rng);

  switch (cfg.generator) {
    case Generator::er:
      break;
    case Generator::layered: {
      // About sqrt(n) layers of about sqrt(n) nodes; s in the first, t in the last.
      const std::size_t layers =
          std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
      auto layer = [&](std::size_t v) { return v * layers / n; };
      std::vector<Edge> next, forward;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (layer(v) == layer(u) + 1) {
            next.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
          } else if (layer(v) > layer(u) + 1) {
            forward.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
          }
        }
      }
      pick.take_from(std::move(next));
      pick.take_from(std::move(forward));
      break;
    }
    case Generator::path_cluster: {
      // A Hamiltonian s-t path through consecutive ids plus dense clusters
      // of consecutive ids; clusters are only joined by the path.
      std::vector<Edge> path;
      for (std::size_t v = 0; v + 1 < n; ++v) {
        path.push_back({static_cast<NodeId>(v), static_cast<NodeId>(v + 1)});
      }
      const std::size_t extra = m > n - 1 ? m - (n - 1) : 0;
      const std::size_t size = std::min(n, (extra + n - 1) / n + 2);
      std::vector<Edge> inner;
      for (std::size_t base = 0; base < n; base += size) {
        const std::size_t end = std::min(n, base + size);
        for (std::size_t u = base; u < end; ++u) {
          for (std::size_t v = base; v < end; ++v) {
            if (u != v && v != u + 1) inner.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
          }
        }
      }
      pick.take_from(std::move(path));
      pick.take_from(std::move(inner));
      break;
    }
  }
  pick.fill_uniform();

  Instance inst;
  inst.n = n;
  inst.edges = pick.finish();
  inst.s = 0;
  inst.t = static_cast<NodeId>(n - 1);
  return inst;
}

namespace {

// Edges of one shortest s-t path in g, or empty if t is unreachable.
std::vector<Edge> shortest_path(const Digraph& g, NodeId s, NodeId t) {
  std::vector<EdgeId> via(g.node_count(), kNoEdge);
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::vector<NodeId> queue{s};
  seen[s] = 1;
  for (std::size_t q = 0; q < queue.size() && !seen[t]; ++q) {
    for (EdgeId e : g.out_edges(queue[q])) {
      const NodeId w = g.head(e);
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = e;
      queue.push_back(w);
    }
  }
  std::vector<Edge> path;
  if (!seen[t] || s == t) return path;
  for (NodeId w = t; w != s; w = g.tail(via[w])) path.push_back({g.tail(via[w]), w});
  return path;
}

}  // namespace

std::vector<Event> generate_trace(const Instance& inst, const GenConfig& cfg) {
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Edge> order;
  if (cfg.trace == TraceStyle::random) {
    order = inst.edges;
    shuffle(order, rng);
  } else {
    Digraph g(inst.n, inst.edges);
    while (true) {
      const auto path = shortest_path(g, inst.s, inst.t);
      if (path.empty()) break;
      const Edge e = path[rng.below(path.size())];
      g.delete_edge(e.tail, e.head);
      order.push_back(e);
    }
    std::vector<Edge> rest = g.edges();
    shuffle(rest, rng);
    order.insert(order.end(), rest.begin(), rest.end());
  }

  std::vector<Event> events;
  events.reserve(order.size() * 2 + 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    events.push_back({EventKind::del, order[i].tail, order[i].head});
    if (cfg.query_every > 0 && (i + 1) % cfg.query_every == 0) events.push_back({});
  }
  if (events.empty() || events.back().kind != EventKind::query_st) events.push_back({});
  return events;
}

void write_trace(std::ostream& out, const std::vector<Event>& events) {
  for (const Event& ev : events) {
    switch (ev.kind) {
      case EventKind::del: out << "D " << ev.u << ' ' << ev.v << '\n'; break;
      case EventKind::query: out << "Q " << ev.u << ' ' << ev.v << '\n'; break;
      case EventKind::query_st: out << "QST\n"; break;
    }
  }
}

std::vector<Event> read_trace(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fail = [&] {
      return ParseError("trace line " + std::to_string(lineno) + ": malformed event '" + line + "'");
    };
    if (line == "QST") {
      events.push_back({});
      continue;
    }
    if (line.size() < 2 || (line[0] != 'D' && line[0] != 'Q') || line[1] != ' ') throw fail();
    const char* p = line.data() + 2;
    const char* end = line.data() + line.size();
    std::uint64_t vals[2];
    for (auto& val : vals) {
      while (p != end && *p == ' ') ++p;
      auto [next, ec] = std::from_chars(p, end, val);
      if (ec != std::errc() || val >= kNoNode) throw fail();
      p = next;
    }
    while (p != end && *p == ' ') ++p;
    if (p != end) throw fail();
    events.push_back({line[0] == 'D' ? EventKind::del : EventKind::query,
                      static_cast<NodeId>(vals[0]), static_cast<NodeId>(vals[1])});
  }
  return events;
}

namespace {

std::size_t hist_bin(double ratio) {
  std::size_t bin = 0;
  while (bin < std::size(kQHistEdges) && ratio > kQHistEdges[bin]) ++bin;
  // Bin 3 is (0.75, 1]: the bound itself is not a violation.
  return bin;
}

// Work counters are reported net of construction, which goes to build_work.
void fill_engine_metrics(RunRecord& rec, const Engine& eng, const EngineMetrics& built) {
  const EngineMetrics m = eng.metrics();
  rec.k = eng.params().k;
  rec.centers = m.centers;
  rec.top_centers = m.top_centers;
  rec.build_work = built.total_work();
  rec.total_work = m.total_work() - built.total_work();
  rec.global_tree_work = m.global_tree_work - built.global_tree_work;
  rec.q_tree_work = m.q_tree_work - built.q_tree_work;
  rec.apu_work = m.apu_work - built.apu_work;
  rec.link_work = m.link_work - built.link_work;
  rec.closure_work = m.closure_work - built.closure_work;
  rec.q_computations = m.q_computations;
  rec.q_bound_violations = m.q_bound_violations;
  for (const QRecord& q : eng.q_records()) {
    rec.q_size_max = std::max(rec.q_size_max, q.size);
    ++rec.q_hist[hist_bin(static_cast<double>(q.size) / q.bound)];
  }
  rec.max_exit_index = m.max_exit_index;
  rec.exit_bound = m.exit_bound;
  rec.invariant_violations = m.exit_bound_violations + m.es_budget_violations +
                             m.level_order_violations + m.unsafe_removals +
                             m.sandwich_violations + m.apu_charge_violations +
                             m.apu_lifetime_violations + m.link_monotonicity_violations;
  rec.link_flips = m.link_flips;
}

}  // namespace

RunRecord run(const Digraph& graph, const std::vector<Event>& trace, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = graph.node_count();
  const NodeId s = cfg.engine.s;
  const NodeId t = cfg.engine.t;
  if (s >= n || t >= n) throw std::invalid_argument("s or t outside the graph");

  RunRecord rec;
  rec.algo = cfg.algo;
  rec.n = n;
  rec.m = graph.edge_count();
  rec.oracle_checked = cfg.oracle.value_or(n <= kOracleMaxNodes);

  std::vector<NodeId> sources{s};
  for (const Event& ev : trace) {
    if (ev.kind != EventKind::query_st && (ev.u >= n || ev.v >= n)) {
      throw std::invalid_argument("trace mentions a node outside the graph");
    }
    if (ev.kind == EventKind::query) sources.push_back(ev.u);
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

  std::optional<Engine> engine;
  std::optional<Digraph> own;
  std::optional<EsBaseline> baseline;
  std::uint64_t static_work = 0;
  EngineMetrics built;
  std::uint64_t baseline_built = 0;
  if (cfg.algo == Algo::hier) {
    engine.emplace(graph, cfg.engine);
    built = engine->metrics();
  } else {
    own.emplace(graph);
    if (cfg.algo == Algo::es_baseline) {
      baseline.emplace(*own, s);
      baseline_built = baseline->work();
    }
  }
  const Digraph& g = engine ? engine->graph() : *own;
  std::optional<ClosureOracle> oracle;
  if (rec.oracle_checked) oracle.emplace(g, sources);

  auto answer = [&](NodeId x, NodeId y) {
    switch (cfg.algo) {
      case Algo::hier:
        return engine->query(x, y);
      case Algo::es_baseline:
        if (x != s) throw std::invalid_argument("es-baseline only answers queries from s");
        return baseline->reachable(y);
      case Algo::static_bfs: {
        const auto r = bounded_bfs(g, x, std::max<int>(1, static_cast<int>(n) - 1), Direction::forward);
        static_work += r.edge_scans;
        return r.contains(y);
      }
    }
    return false;
  };

  for (const Event& ev : trace) {
    if (ev.kind == EventKind::del) {
      const auto id = g.find_edge(ev.u, ev.v);
      if (!id) {
        throw GraphError("trace deletes absent edge (" + std::to_string(ev.u) + "," +
                         std::to_string(ev.v) + ")");
      }
      if (engine) {
        engine->delete_edge(ev.u, ev.v);
      } else {
        own->delete_edge(ev.u, ev.v);
        if (baseline) baseline->notify_deletion(*id);
      }
      if (oracle) oracle->notify_deletion(*id);
      ++rec.deletions;
      continue;
    }
    const NodeId x = ev.kind == EventKind::query_st ? s : ev.u;
    const NodeId y = ev.kind == EventKind::query_st ? t : ev.v;
    const bool got = answer(x, y);
    ++rec.queries;
    rec.true_answers += got;
    if (cfg.keep_answers) rec.answers.push_back(got ? 1 : 0);
    if (oracle && oracle->reachable(x, y) != got) ++rec.mismatches;
  }

  if (engine) {
    fill_engine_metrics(rec, *engine, built);
  } else if (baseline) {
    rec.k = 0;
    rec.build_work = baseline_built;
    rec.global_tree_work = baseline->work() - baseline_built;
    rec.total_work = rec.global_tree_work;
  } else {
    rec.total_work = static_work;
  }
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RunRecord run_generated(const GenConfig& gen, RunConfig cfg) {
  const Instance inst = generate_graph(gen);
  const auto trace = generate_trace(inst, gen);
  cfg.engine.s = inst.s;
  cfg.engine.t = inst.t;
  RunRecord rec = run(Digraph(inst.n, inst.edges), trace, cfg);
  rec.generator = to_string(gen.generator);
  rec.trace = to_string(gen.trace);
  rec.alpha = gen.alpha;
  rec.gen_seed = gen.seed;
  return rec;
}

void write_answers(std::ostream& out, const RunRecord& rec) {
  for (std::uint8_t a : rec.answers) out << (a ? "1\n" : "0\n");
}

namespace {

const char* const kColumns[] = {
    "generator", "trace", "alpha", "gen_seed", "algo", "n", "m", "k", "centers", "top_centers",
    "deletions", "queries", "true_answers", "oracle_checked", "mismatches", "build_work", "total_work",
    "global_tree_work", "q_tree_work", "apu_work", "link_work", "closure_work",
    "q_computations", "q_bound_violations", "q_size_max", "q_hist", "max_exit_index",
    "exit_bound", "invariant_violations", "link_flips", "wall_ms"};

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_num(const std::string& s, const std::string& column) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("metrics csv: bad value '" + s + "' in column " + column);
  }
  return v;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (const char* c : kColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const RunRecord& r, bool with_timing) {
  std::string hist;
  for (std::size_t i = 0; i < r.q_hist.size(); ++i) {
    if (i) hist += ';';
    hist += std::to_string(r.q_hist[i]);
  }
  const std::string cells[] = {
      r.generator, r.trace, fmt(r.alpha, "%.6g"), std::to_string(r.gen_seed), to_string(r.algo),
      std::to_string(r.n), std::to_string(r.m), std::to_string(r.k), std::to_string(r.centers),
      std::to_string(r.top_centers), std::to_string(r.deletions), std::to_string(r.queries),
      std::to_string(r.true_answers), r.oracle_checked ? "1" : "0", std::to_string(r.mismatches),
      std::to_string(r.build_work), std::to_string(r.total_work), std::to_string(r.global_tree_work),
      std::to_string(r.q_tree_work), std::to_string(r.apu_work), std::to_string(r.link_work),
      std::to_string(r.closure_work), std::to_string(r.q_computations),
      std::to_string(r.q_bound_violations), std::to_string(r.q_size_max), hist,
      std::to_string(r.max_exit_index), std::to_string(r.exit_bound),
      std::to_string(r.invariant_violations), std::to_string(r.link_flips),
      with_timing ? fmt(r.wall_ms, "%.3f") : std::string("0")};
  std::string out;
  for (const auto& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("metrics csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw ParseError("metrics csv: unexpected header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // Concatenated files repeat the header.
    if (line == csv_header()) continue;
    const auto f = split(line, ',');
    if (f.size() != std::size(kColumns)) throw ParseError("metrics csv: wrong column count");
    auto u64 = [&](std::size_t i) { return parse_num<std::uint64_t>(f[i], kColumns[i]); };
    auto sz = [&](std::size_t i) { return static_cast<std::size_t>(u64(i)); };
    RunRecord r;
    r.generator = f[0];
    r.trace = f[1];
    r.alpha = parse_num<double>(f[2], kColumns[2]);
    r.gen_seed = u64(3);
    r.algo = parse_algo(f[4]);
    r.n = sz(5);
    r.m = sz(6);
    r.k = parse_num<int>(f[7], kColumns[7]);
    r.centers = sz(8);
    r.top_centers = sz(9);
    r.deletions = sz(10);
    r.queries = sz(11);
    r.true_answers = sz(12);
    r.oracle_checked = f[13] == "1";
    r.mismatches = sz(14);
    r.build_work = u64(15);
    r.total_work = u64(16);
    r.global_tree_work = u64(17);
    r.q_tree_work = u64(18);
    r.apu_work = u64(19);
    r.link_work = u64(20);
    r.closure_work = u64(21);
    r.q_computations = sz(22);
    r.q_bound_violations = sz(23);
    r.q_size_max = sz(24);
    const auto bins = split(f[25], ';');
    if (bins.size() != kQHistBins) throw ParseError("metrics csv: bad q_hist");
    for (std::size_t i = 0; i < kQHistBins; ++i) r.q_hist[i] = parse_num<std::size_t>(bins[i], "q_hist");
    r.max_exit_index = parse_num<int>(f[26], kColumns[26]);
    r.exit_bound = parse_num<int>(f[27], kColumns[27]);
    r.invariant_violations = sz(28);
    r.link_flips = sz(29);
    r.wall_ms = parse_num<double>(f[30], kColumns[30]);
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / k;
    my += ly[i] / k;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx < 1e-12) return std::nullopt;
  return sxy / sxx;
}

std::vector<ReportRow> summarize(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, double, int, std::size_t>;
  std::map<Key, ReportRow> rows;
  for (const RunRecord& r : records) {
    ReportRow& row = rows[Key{r.generator, r.alpha, static_cast<int>(r.algo), r.n}];
    row.generator = r.generator;
    row.alpha = r.alpha;
    row.algo = r.algo;
    row.n = r.n;
    ++row.runs;
    row.mean_m += static_cast<double>(r.m);
    row.mean_work += static_cast<double>(r.build_work + r.total_work);
  }
  std::vector<ReportRow> out;
  for (auto& [key, row] : rows) {
    row.mean_m /= static_cast<double>(row.runs);
    row.mean_work /= static_cast<double>(row.runs);
    out.push_back(row);
  }
  // Rows are grouped by (generator, alpha, algo) and sorted by n within a group.
  for (std::size_t lo = 0; lo < out.size();) {
    std::size_t hi = lo;
    std::vector<double> xs, ys;
    while (hi < out.size() && out[hi].generator == out[lo].generator &&
           out[hi].alpha == out[lo].alpha && out[hi].algo == out[lo].algo) {
      xs.push_back(static_cast<double>(out[hi].n));
      ys.push_back(out[hi].mean_work);
      ++hi;
    }
    const auto slope = loglog_slope(xs, ys);
    for (std::size_t i = lo; i < hi; ++i) out[i].exponent = slope;
    lo = hi;
  }
  return out;
}

void write_report_text(std::ostream& out, const std::vector<ReportRow>& rows) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-13s %6s %-12s %7s %5s %10s %16s %9s\n", "generator", "alpha",
                "algo", "n", "runs", "mean_m", "mean_work", "exponent");
  out << buf;
  for (const ReportRow& r : rows) {
    const std::string exp = r.exponent ? fmt(*r.exponent, "%.3f") : std::string("-");
    std::snprintf(buf, sizeof buf, "%-13s %6.3g %-12s %7zu %5zu %10.0f %16.0f %9s\n",
                  r.generator.c_str(), r.alpha, to_string(r.algo).c_str(), r.n, r.runs, r.mean_m,
                  r.mean_work, exp.c_str());
    out << buf;
  }
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "generator,alpha,algo,n,runs,mean_m,mean_work,exponent\n";
  for (const ReportRow& r : rows) {
    out << r.generator << ',' << fmt(r.alpha, "%.6g") << ',' << to_string(r.algo) << ',' << r.n
        << ',' << r.runs << ',' << fmt(r.mean_m, "%.1f") << ',' << fmt(r.mean_work, "%.1f") << ','
        << (r.exponent ? fmt(*r.exponent, "%.4f") : std::string()) << '\n';
  }
}

std::vector<RunRecord> run_parallel(const std::vector<SweepJob>& jobs, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<RunRecord> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = run_generated(jobs[i].gen, jobs[i].run);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace decreach::bench
