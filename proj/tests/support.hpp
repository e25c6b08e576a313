#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partlab/bigcount.hpp"

namespace testsupport {

// Brute-force partition counter by direct recursion (no tables shared with
// the library DP).
inline std::int64_t brute_count(std::int64_t n, std::int64_t max_parts,
                                std::int64_t max_part) {
  if (n == 0) return 1;
  if (max_parts == 0 || max_part == 0) return 0;
  std::int64_t total = 0;
  for (std::int64_t p = std::min(n, max_part); p >= 1; --p)
    total += brute_count(n - p, max_parts - 1, p);
  return total;
}

inline std::int64_t brute_partitions(std::int64_t n) {
  return brute_count(n, n, n);
}

// Trigamma psi'(x) via recurrence + asymptotic series. Reference for the
// exact rank-variance identity sigma_k^2 = 2 psi'(k).
inline double trigamma(double x) {
  double acc = 0.0;
  while (x < 8.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  // 1/x + 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7) - 1/(30x^9)
  double s = inv + 0.5 * inv2 +
             inv2 * inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0)));
  return acc + s;
}

inline double binom(std::int64_t n, std::int64_t k) {
  double r = 1.0;
  for (std::int64_t i = 1; i <= k; ++i)
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace testsupport
