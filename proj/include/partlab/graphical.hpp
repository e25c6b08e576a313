#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "partlab/bigcount.hpp"
#include "partlab/exact_count.hpp"
#include "partlab/partition.hpp"

namespace partlab {

/// Erdos-Gallai test: a weakly decreasing degree sequence is graphical iff
/// the degree sum is even and for every k,
///   sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k).
/// Independent of the Nash-Williams rank criterion.
inline bool erdos_gallai_graphical(std::span<const std::int64_t> degrees) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) throw std::invalid_argument("erdos_gallai: negative degree");
    if (i > 0 && degrees[i] > degrees[i - 1])
      throw std::invalid_argument("erdos_gallai: sequence must be weakly decreasing");
    sum += degrees[i];
  }
  if (sum % 2 != 0) return false;
  std::int64_t m = static_cast<std::int64_t>(degrees.size());
  std::int64_t lhs = 0;
  for (std::int64_t k = 1; k <= m; ++k) {
    lhs += degrees[static_cast<std::size_t>(k - 1)];
    std::int64_t rhs = k * (k - 1);
    for (std::int64_t i = k; i < m; ++i)
      rhs += std::min(degrees[static_cast<std::size_t>(i)], k);
    if (lhs > rhs) return false;
  }
  return true;
}

struct FractionEstimate {
  enum class Method { exact, sampled };
  double value = 0.0;
  double stderr_ = 0.0;
  Method method = Method::exact;
  std::int64_t n = 0;
  std::uint64_t samples = 0;
  BigCount graphical_count = 0;  // exact mode only
  BigCount total = 0;            // exact mode only
};

/// Fraction of partitions of an even n that are graphical, by full
/// enumeration with the Erdos-Gallai oracle.
inline FractionEstimate graphical_fraction_exact(std::int64_t n,
                                                 std::int64_t enum_cap = 60) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("graphical fraction defined for even n");
  if (n > enum_cap)
    throw std::invalid_argument(
        "n above enumeration cap; use the sampled mode");
  std::int64_t good = 0, total = 0;
  enumerate_partitions(n, std::nullopt, std::nullopt,
                       [&](const std::vector<std::int64_t>& parts) {
                         ++total;
                         if (erdos_gallai_graphical(parts)) ++good;
                       });
  FractionEstimate fe;
  fe.n = n;
  fe.method = FractionEstimate::Method::exact;
  fe.graphical_count = good;
  fe.total = total;
  fe.value = static_cast<double>(good) / static_cast<double>(total);
  return fe;
}

/// Exactly uniform sampler over the partitions of n. Chooses the largest
/// part by its exact conditional probability from box-count tables, then
/// recurses on the remainder under that part cap. No rejection loop.
class PartitionSampler {
 public:
  PartitionSampler(std::int64_t n, std::uint64_t seed) : n_(n) {
    if (n < 0) throw std::invalid_argument("PartitionSampler: n >= 0");
    gmp_randinit_mt(state_);
    gmp_randseed_ui(state_, static_cast<unsigned long>(seed));
    // cap_count_[c][m] = partitions of m with each part <= c, 0 <= c,m <= n.
    std::size_t N = static_cast<std::size_t>(n);
    cap_count_.assign(N + 1, std::vector<BigCount>(N + 1));
    for (std::size_t c = 0; c <= N; ++c) cap_count_[c][0] = 1;
    for (std::size_t c = 1; c <= N; ++c)
      for (std::size_t m = 1; m <= N; ++m) {
        cap_count_[c][m] = cap_count_[c - 1][m];
        if (m >= c) cap_count_[c][m] += cap_count_[c][m - c];
      }
  }

  ~PartitionSampler() { gmp_randclear(state_); }
  PartitionSampler(const PartitionSampler&) = delete;
  PartitionSampler& operator=(const PartitionSampler&) = delete;

  Partition sample() {
    std::vector<std::int64_t> parts;
    std::int64_t m = n_, cap = n_;
    while (m > 0) {
      cap = std::min(cap, m);
      // Draw u uniform in [0, #partitions of m with parts <= cap).
      BigCount u;
      mpz_urandomm(u.get_mpz_t(), state_,
                   cap_count_[static_cast<std::size_t>(cap)]
                             [static_cast<std::size_t>(m)]
                                 .get_mpz_t());
      // Largest part = p with weight cap_count_[p][m - p].
      std::int64_t p = cap;
      for (; p >= 1; --p) {
        const BigCount& w = cap_count_[static_cast<std::size_t>(p)]
                                      [static_cast<std::size_t>(m - p)];
        if (u < w) break;
        u -= w;
      }
      parts.push_back(p);
      m -= p;
      cap = p;
    }
    return Partition(std::move(parts));
  }

 private:
  std::int64_t n_;
  std::vector<std::vector<BigCount>> cap_count_;
  gmp_randstate_t state_;
};

inline Partition sample_partition_uniform(std::int64_t n, std::uint64_t seed) {
  PartitionSampler s(n, seed);
  return s.sample();
}

/// Monte Carlo graphical fraction with binomial standard error.
/// Deterministic given the seed.
inline FractionEstimate graphical_fraction_sampled(std::int64_t n,
                                                   std::uint64_t samples,
                                                   std::uint64_t seed) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("graphical fraction defined for even n");
  if (samples < 1)
    throw std::invalid_argument("graphical_fraction_sampled: samples >= 1");
  PartitionSampler sampler(n, seed);
  std::uint64_t good = 0;
  for (std::uint64_t i = 0; i < samples; ++i)
    if (erdos_gallai_graphical(sampler.sample().parts())) ++good;
  FractionEstimate fe;
  fe.n = n;
  fe.method = FractionEstimate::Method::sampled;
  fe.samples = samples;
  fe.value = static_cast<double>(good) / static_cast<double>(samples);
  fe.stderr_ = std::sqrt(fe.value * (1.0 - fe.value) /
                         static_cast<double>(samples));
  return fe;
}

struct DecayFit {
  double c_pow = 0.0;   // least-squares c for c * n^{-1/2}
  double rmse_pow = 0.0;
  double c_log = 0.0;   // least-squares c for c * ln^{-1/2} n
  double rmse_log = 0.0;
  double free_exponent = 0.0;  // fitted a in c * n^{-a}
  double free_c = 0.0;
};

/// Fit the recorded graphical fractions against the two reference decay
/// curves plus a free power law. Report-only; no constant is asserted.
inline DecayFit fit_decay(std::span<const FractionEstimate> rows) {
  if (rows.size() < 2) throw std::invalid_argument("fit_decay: need >= 2 rows");
  double sp = 0, spp = 0, sl = 0, sll = 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& fe : rows) {
    if (fe.n < 2 || fe.value <= 0.0) continue;
    double nn = static_cast<double>(fe.n);
    double refp = 1.0 / std::sqrt(nn);
    double refl = 1.0 / std::sqrt(std::log(nn));
    sp += refp * fe.value;
    spp += refp * refp;
    sl += refl * fe.value;
    sll += refl * refl;
    double x = std::log(nn), y = std::log(fe.value);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  DecayFit fit;
  fit.c_pow = sp / spp;
  fit.c_log = sl / sll;
  double dm = static_cast<double>(m);
  double slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  fit.free_exponent = -slope;
  fit.free_c = std::exp((sy - slope * sx) / dm);
  double ep = 0, el = 0;
  for (const auto& fe : rows) {
    if (fe.n < 2 || fe.value <= 0.0) continue;
    double nn = static_cast<double>(fe.n);
    double rp = fe.value - fit.c_pow / std::sqrt(nn);
    double rl = fe.value - fit.c_log / std::sqrt(std::log(nn));
    ep += rp * rp;
    el += rl * rl;
  }
  fit.rmse_pow = std::sqrt(ep / dm);
  fit.rmse_log = std::sqrt(el / dm);
  return fit;
}

}  // namespace partlab
