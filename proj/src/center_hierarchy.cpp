#include "decreach/center_hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decreach {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

double level_ratio(std::size_t n) {
  const double log_n = std::log2(static_cast<double>(n));
  return std::exp2(std::sqrt(log_n * std::log2(log_n)));
}

namespace {

void fill_depths(HierarchyParams& p, std::size_t n, std::size_t m) {
  const double growth = 3.0 + std::log2(static_cast<double>(std::max<std::size_t>(m, 1)));
  p.h_exact.resize(static_cast<std::size_t>(p.k));
  p.depth.resize(static_cast<std::size_t>(p.k));
  double h = static_cast<double>(n) / p.c[0];
  for (int i = 0; i < p.k; ++i) {
    p.h_exact[i] = h;
    const double clamped = std::clamp(std::ceil(h - 1e-9), 1.0, static_cast<double>(n));
    p.depth[i] = static_cast<int>(clamped);
    h *= growth;
  }
}

}  // namespace

HierarchyParams derive_parameters(std::size_t n, std::size_t m, double b, double c_target,
                                  double a) {
  if (n < 4) throw std::invalid_argument("derive_parameters: need n >= 4");
  if (!(b >= 1.0)) throw std::invalid_argument("derive_parameters: need b >= 1");
  if (b > c_target) throw std::invalid_argument("derive_parameters: need b <= c");
  if (c_target > static_cast<double>(n)) {
    throw std::invalid_argument("derive_parameters: need c <= n");
  }
  if (!(a > 0.0)) throw std::invalid_argument("derive_parameters: need a > 0");

  HierarchyParams p;
  p.b = b;
  p.c_target = c_target;
  p.a = a;
  p.level_ratio = level_ratio(n);
  const double log_n = std::log2(static_cast<double>(n));
  const double spread = std::sqrt(log_n * std::log2(log_n));
  int k = static_cast<int>(std::ceil(std::log2(c_target / b) / spread - 1e-12)) + 1;
  k = std::clamp(k, 1, std::max(1, static_cast<int>(std::floor(log_n))));
  p.k = k;
  p.c.resize(static_cast<std::size_t>(k));
  double c = b;
  for (int i = k - 1; i >= 0; --i) {
    p.c[i] = std::min(c, static_cast<double>(n));
    c *= p.level_ratio;
  }
  fill_depths(p, n, m);
  return p;
}

HierarchyParams explicit_parameters(std::size_t n, std::size_t m, std::span<const double> c,
                                    double a) {
  if (n < 1) throw std::invalid_argument("explicit_parameters: empty graph");
  if (c.empty()) throw std::invalid_argument("explicit_parameters: empty c-sequence");
  if (!(a > 0.0)) throw std::invalid_argument("explicit_parameters: need a > 0");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] >= 1.0) || c[i] > static_cast<double>(n)) {
      throw std::invalid_argument("explicit_parameters: every c_i must lie in [1, n]");
    }
    if (i > 0 && c[i] > c[i - 1]) {
      throw std::invalid_argument("explicit_parameters: c-sequence must be non-increasing");
    }
  }
  HierarchyParams p;
  p.k = static_cast<int>(c.size());
  p.c.assign(c.begin(), c.end());
  p.b = c.back();
  p.c_target = c.front();
  p.a = a;
  p.level_ratio = 0.0;
  p.explicit_levels = true;
  fill_depths(p, n, m);
  return p;
}

std::pair<double, double> default_tuning(std::size_t n, std::size_t m) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(std::max<std::size_t>(m, 1));
  return {std::pow(nd, 5.0 / 3.0) / std::pow(md, 2.0 / 3.0),
          std::pow(nd, 4.0 / 3.0) / std::pow(md, 1.0 / 3.0)};
}

std::pair<double, double> alternate_tuning(std::size_t n, std::size_t m) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(std::max<std::size_t>(m, 1));
  return {std::pow(nd, 9.0 / 7.0) / std::pow(md, 3.0 / 7.0),
          std::pow(md, 1.0 / 7.0) * std::pow(nd, 4.0 / 7.0)};
}

double sampling_probability(const HierarchyParams& p, int level, std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::min(1.0, p.a * p.c_at(level) * std::log(nd) / nd);
}

CenterSets sample_centers(std::size_t n, const HierarchyParams& p,
                          std::span<const NodeId> forced, std::uint64_t seed) {
  CenterSets out;
  out.levels.resize(static_cast<std::size_t>(p.k));
  out.level_of.assign(n, 0);
  Rng rng(seed);
  for (int level = p.k; level >= 1; --level) {
    const double prob = sampling_probability(p, level, n);
    for (NodeId v = 0; v < n; ++v) {
      const bool hit = rng.bernoulli(prob);
      if (hit && out.level_of[v] == 0) out.level_of[v] = static_cast<std::uint8_t>(level);
    }
  }
  for (NodeId v : forced) {
    if (v >= n) throw std::out_of_range("sample_centers: forced node out of range");
    if (out.level_of[v] == 0) out.level_of[v] = 1;
  }
  out.forced.assign(forced.begin(), forced.end());
  for (NodeId v = 0; v < n; ++v) {
    for (int level = 1; level <= out.level_of[v]; ++level) {
      out.levels[static_cast<std::size_t>(level - 1)].push_back(v);
    }
  }
  return out;
}

double hitting_probability(std::size_t t, std::size_t k, std::size_t q, double a) {
  if (q == 0) throw std::invalid_argument("hitting_probability: q must be positive");
  return std::min(1.0, a * std::log(static_cast<double>(k * t)) / static_cast<double>(q));
}

bool hitting_set_check(std::size_t t, std::span<const std::vector<NodeId>> sets, double p,
                       Rng& rng) {
  std::vector<std::uint8_t> chosen(t, 0);
  for (std::size_t i = 0; i < t; ++i) chosen[i] = rng.bernoulli(p) ? 1 : 0;
  for (const auto& s : sets) {
    const bool hit = std::any_of(s.begin(), s.end(), [&](NodeId v) {
      if (v >= t) throw std::out_of_range("hitting_set_check: element outside universe");
      return chosen[v] != 0;
    });
    if (!hit) return false;
  }
  return true;
}

}  // namespace decreach
