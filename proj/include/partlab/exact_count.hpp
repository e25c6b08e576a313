#pragma once

#include <cstdint>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "partlab/bigcount.hpp"

namespace partlab {

enum class CountFamily { P, ASlice };

// A dense coefficient table: either the unrestricted partition numbers
// P(0..n) or one (j,r) slice of the Gauss binomial series.
struct CountTable {
  CountFamily family = CountFamily::P;
  std::vector<std::int64_t> params;  // {} for P, {j, r} for a slice
  std::vector<BigCount> coeff;       // indexed by n
};

// ---------------------------------------------------------------------------
// P(n): Euler pentagonal-number recurrence over a dense table.

class PartitionTable {
 public:
  PartitionTable() { p_.emplace_back(1); }

  void extend(std::size_t nmax) {
    while (p_.size() <= nmax) {
      std::int64_t n = static_cast<std::int64_t>(p_.size());
      BigCount s = 0;
      for (std::int64_t k = 1;; ++k) {
        std::int64_t g1 = k * (3 * k - 1) / 2;
        if (g1 > n) break;
        std::int64_t g2 = k * (3 * k + 1) / 2;
        if (k % 2 == 1) {
          s += p_[n - g1];
          if (g2 <= n) s += p_[n - g2];
        } else {
          s -= p_[n - g1];
          if (g2 <= n) s -= p_[n - g2];
        }
      }
      p_.push_back(std::move(s));
    }
  }

  const BigCount& at(std::size_t n) {
    extend(n);
    return p_[n];
  }

  std::size_t size() const { return p_.size(); }

  // Cache format: one `n<TAB>decimal` record per line, ascending n, no gaps.
  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache file: " + path);
    for (std::size_t n = 0; n < p_.size(); ++n)
      out << n << '\t' << to_decimal(p_[n]) << '\n';
  }

  static PartitionTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read cache file: " + path);
    PartitionTable t;
    t.p_.clear();
    std::string line;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
      if (line.empty()) throw std::runtime_error("cache: empty record");
      auto tab = line.find('\t');
      if (tab == std::string::npos)
        throw std::runtime_error("cache: missing tab separator");
      std::size_t idx = std::stoull(line.substr(0, tab));
      if (idx != expect)
        throw std::runtime_error("cache: non-monotone or gapped index at line " +
                                 std::to_string(expect));
      std::string digits = line.substr(tab + 1);
      if (digits.empty() ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::runtime_error("cache: malformed count at n=" +
                                 std::to_string(idx));
      t.p_.push_back(from_decimal(digits));
      ++expect;
    }
    if (t.p_.empty() || t.p_[0] != 1)
      throw std::runtime_error("cache: table must start with P(0)=1");
    return t;
  }

 private:
  std::vector<BigCount> p_;
};

/// P(n), the number of unrestricted partitions of n.
inline BigCount partitions_total(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("partitions_total: n must be >= 0");
  static PartitionTable table;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return table.at(static_cast<std::size_t>(n));
}

// ---------------------------------------------------------------------------
// A(n,j,r): partitions of n into at most j parts, each part <= r.

/// Coefficients [x^0 .. x^nmax] of prod_{v=1..r} (1 - x^{j+v})/(1 - x^v),
/// by stride-v running sums for the division and a high-to-low subtraction
/// for each (1 - x^{j+v}) factor. O(r * nmax) big-integer additions.
inline std::vector<BigCount> box_series(std::int64_t nmax, std::int64_t j,
                                        std::int64_t r) {
  if (nmax < 0 || j < 0 || r < 0)
    throw std::invalid_argument("box_series: negative argument");
  std::vector<BigCount> c(static_cast<std::size_t>(nmax) + 1);
  c[0] = 1;
  for (std::int64_t v = 1; v <= r; ++v) {
    for (std::int64_t i = v; i <= nmax; ++i) c[i] += c[i - v];
    std::int64_t d = j + v;
    for (std::int64_t i = nmax; i >= d; --i) c[i] -= c[i - d];
  }
  return c;
}

/// Full (untruncated) slice of the Gauss binomial: degree j*r + 1 entries.
inline CountTable a_slice_table(std::int64_t j, std::int64_t r) {
  CountTable t;
  t.family = CountFamily::ASlice;
  t.params = {j, r};
  t.coeff = box_series(j * r, j, r);
  return t;
}

inline BigCount count_box(std::int64_t n, std::int64_t j, std::int64_t r) {
  if (n < 0 || j < 0 || r < 0)
    throw std::invalid_argument("count_box: negative argument");
  if (n > j * r) return 0;
  if (n == 0) return 1;
  return box_series(n, j, r)[static_cast<std::size_t>(n)];
}

/// Independent second implementation via the three-parameter Takacs
/// recurrence A(n,j,r) = A(n-r, j-1, r) + A(n, j, r-1). Used as a
/// cross-oracle in tests; the polynomial route is the production path.
inline BigCount count_box_takacs(std::int64_t n, std::int64_t j,
                                 std::int64_t r) {
  if (n < 0) return 0;
  if (n > j * r) return 0;
  if (n == 0) return 1;
  // Layered DP over r; layer[jj][nn] = A(nn, jj, rr).
  std::size_t J = static_cast<std::size_t>(j), N = static_cast<std::size_t>(n);
  std::vector<std::vector<BigCount>> prev(J + 1,
                                          std::vector<BigCount>(N + 1));
  for (std::size_t jj = 0; jj <= J; ++jj) prev[jj][0] = 1;  // rr = 0
  std::vector<std::vector<BigCount>> cur(J + 1, std::vector<BigCount>(N + 1));
  for (std::int64_t rr = 1; rr <= r; ++rr) {
    for (std::size_t jj = 0; jj <= J; ++jj) {
      for (std::size_t nn = 0; nn <= N; ++nn) {
        cur[jj][nn] = prev[jj][nn];
        if (jj >= 1 && static_cast<std::int64_t>(nn) >= rr)
          cur[jj][nn] += cur[jj - 1][nn - rr];
      }
    }
    std::swap(prev, cur);
  }
  return prev[J][N];
}

/// B(n,k,r) = A(n,k,r) - A(n,k,r-1): largest part exactly r, at most k parts.
inline BigCount count_largest_exact(std::int64_t n, std::int64_t k,
                                    std::int64_t r) {
  if (n < 0 || k < 0) throw std::invalid_argument("count_largest_exact");
  if (r < 1) throw std::invalid_argument("count_largest_exact: r must be >= 1");
  if (r > n) return 0;
  return count_box(n, k, r) - count_box(n, k, r - 1);
}

/// C(n,k,r) = B(n,k,r) - B(n,k-1,r): largest part exactly r, exactly k parts.
inline BigCount count_exact_both(std::int64_t n, std::int64_t k,
                                 std::int64_t r) {
  if (n < 0) throw std::invalid_argument("count_exact_both");
  if (k < 1 || r < 1)
    throw std::invalid_argument("count_exact_both: k, r must be >= 1");
  if (n < r + (k - 1)) return 0;
  BigCount b = count_largest_exact(n, k, r);
  if (k >= 2) b -= count_largest_exact(n, k - 1, r);
  return b;
}

}  // namespace partlab
