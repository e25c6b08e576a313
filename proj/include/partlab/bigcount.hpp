#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace partlab {

// Exact nonnegative counts. GMP keeps additions cheap and decimal
// rendering round-trips exactly.
using BigCount = mpz_class;

inline std::string to_decimal(const BigCount& v) { return v.get_str(10); }

inline BigCount from_decimal(const std::string& s) { return BigCount(s, 10); }

/// Natural logarithm of a positive count, exact to double precision.
inline double log_of(const BigCount& v) {
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace partlab
