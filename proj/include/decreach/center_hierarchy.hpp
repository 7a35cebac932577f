#pragma once

// Level parameters, randomized center sampling, and the hitting-set check
// behind it.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "decreach/graph.hpp"

namespace decreach {

/// Deterministic across standard libraries: the 64-bit Mersenne Twister is
/// fully specified, and uniform draws use the top 53 bits directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return p >= 1.0 || uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

struct HierarchyParams {
  int k = 1;
  std::vector<double> c;        // c[0] = c_1 >= ... >= c[k-1] = c_k
  std::vector<double> h_exact;  // (3 + log2 m)^(i-1) * n / c_1, unclamped
  std::vector<int> depth;       // ceil(h_exact) clamped to [1, n]
  double b = 1.0;
  double c_target = 1.0;
  double a = 2.0;
  double level_ratio = 1.0;     // 2^sqrt(log n log log n); 0 for explicit sequences
  bool explicit_levels = false;

  int depth_at(int level) const { return depth[static_cast<std::size_t>(level - 1)]; }
  double c_at(int level) const { return c[static_cast<std::size_t>(level - 1)]; }
};

/// 2^sqrt(log2 n * log2 log2 n).
double level_ratio(std::size_t n);

/// Derives k, c_1..c_k and h_1..h_k from the tuning pair (b, c_target).
/// Requires n >= 4 and 1 <= b <= c_target <= n. Every c_i is capped at n.
HierarchyParams derive_parameters(std::size_t n, std::size_t m, double b, double c_target,
                                  double a = 2.0);

/// Uses a caller-supplied non-increasing c-sequence instead of the formulas.
HierarchyParams explicit_parameters(std::size_t n, std::size_t m, std::span<const double> c,
                                    double a = 2.0);

/// b = n^{5/3}/m^{2/3}, c = n^{4/3}/m^{1/3}.
std::pair<double, double> default_tuning(std::size_t n, std::size_t m);
/// b = n^{9/7}/m^{3/7}, c = m^{1/7} n^{4/7}.
std::pair<double, double> alternate_tuning(std::size_t n, std::size_t m);

/// min(1, a * c_i * ln n / n).
double sampling_probability(const HierarchyParams& p, int level, std::size_t n);

struct CenterSets {
  std::vector<std::vector<NodeId>> levels;  // levels[i-1] = C_i, sorted, C_1 ⊇ ... ⊇ C_k
  std::vector<std::uint8_t> level_of;       // highest i with v in C_i; 0 if none
  std::vector<NodeId> forced;

  int k() const { return static_cast<int>(levels.size()); }
  bool is_center(NodeId v) const { return level_of[v] != 0; }
};

/// Samples each level independently with sampling_probability and nests
/// them; C_1 also receives every forced node.
CenterSets sample_centers(std::size_t n, const HierarchyParams& p,
                          std::span<const NodeId> forced, std::uint64_t seed);

/// Per-element probability min(1, a ln(k t) / q) for k sets of size >= q
/// over a universe of size t.
double hitting_probability(std::size_t t, std::size_t k, std::size_t q, double a);

/// Samples U from [0, t) with probability p per element and reports whether
/// every set contains an element of U.
bool hitting_set_check(std::size_t t, std::span<const std::vector<NodeId>> sets, double p,
                       Rng& rng);

}  // namespace decreach
