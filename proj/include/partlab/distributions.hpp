#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace partlab {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  unsigned max_subdivisions = 4000;
};

namespace detail {

// log(1 + e^{-t}) without overflow for very negative t.
inline double softplus_neg(double t) {
  if (t < -40.0) return -t;
  return std::log1p(std::exp(-t));
}

// log(sum exp(v_i)) over a small positive-term sum.
inline double logsumexp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

struct SimpsonState {
  unsigned used = 0;
  unsigned budget = 0;
  double worst = 0.0;  // largest unresolved panel error seen
};

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, SimpsonState& st) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  if (st.used >= st.budget) {
    st.worst = std::max(st.worst, std::abs(err) / 15.0);
    return left + right + err / 15.0;
  }
  ++st.used;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, st) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, st);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b]. Throws if the subdivision
/// budget is exhausted before the tolerance is met.
inline double integrate_adaptive(const std::function<double(double)>& f,
                                 double a, double b,
                                 const QuadratureSpec& quad = {}) {
  if (!(quad.abs_tol > 0.0) || !(quad.rel_tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: tolerances must be > 0");
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double tol = std::max(quad.abs_tol, std::abs(whole) * quad.rel_tol);
  detail::SimpsonState st;
  st.budget = quad.max_subdivisions;
  double result = detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, st);
  if (st.worst > tol)
    throw std::runtime_error(
        "quadrature did not converge within max_subdivisions; achieved "
        "tolerance " +
        std::to_string(st.worst));
  return result;
}

/// Gumbel (extreme-value) CDF e^{-e^{-x}}: the limit law of the scaled
/// largest part.
inline double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

/// Y_k(x) = e^{-e^{-x}} sum_{m=0}^{k-1} e^{-mx}/m!  — the limit law of the
/// scaled k-th largest part. Evaluated in log space, clamped to (0,1).
inline double yk_cdf(unsigned k, double x) {
  if (k < 1) throw std::invalid_argument("yk_cdf: k must be >= 1");
  std::vector<double> terms(k);
  for (unsigned m = 0; m < k; ++m)
    terms[m] = -static_cast<double>(m) * x - std::lgamma(m + 1.0);
  double lv = -std::exp(-x) + detail::logsumexp(terms);
  double v = std::exp(lv);
  if (v < std::numeric_limits<double>::min())
    return std::numeric_limits<double>::min();
  double one_minus = std::nextafter(1.0, 0.0);
  return v > one_minus ? one_minus : v;
}

/// CDF of the k-th rank limit law:
/// r_k(t) = (1/Gamma(k)) sum_{i=1}^{k} Gamma(k+i-1) e^{-(i-1)t}
///          / (Gamma(i) (1+e^{-t})^{k+i-1}).
inline double rank_cdf(unsigned k, double t) {
  if (k < 1) throw std::invalid_argument("rank_cdf: k must be >= 1");
  double lgk = std::lgamma(static_cast<double>(k));
  double sp = detail::softplus_neg(t);
  std::vector<double> terms(k);
  for (unsigned i = 1; i <= k; ++i)
    terms[i - 1] = std::lgamma(static_cast<double>(k + i - 1)) - lgk -
                   std::lgamma(static_cast<double>(i)) -
                   (i - 1.0) * t - (k + i - 1.0) * sp;
  double v = std::exp(detail::logsumexp(terms));
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

/// Density of the k-th rank law: Gamma(2k) e^{-kt} / (Gamma(k)^2 (1+e^{-t})^{2k}).
inline double rank_pdf(unsigned k, double t) {
  if (k < 1) throw std::invalid_argument("rank_pdf: k must be >= 1");
  double kk = static_cast<double>(k);
  double lv = std::lgamma(2.0 * kk) - 2.0 * std::lgamma(kk) - kk * t -
              2.0 * kk * detail::softplus_neg(t);
  return std::exp(lv);
}

/// sigma_k^2 (p = 2) or rho_k (p = 3, absolute) of the k-th rank law, by
/// adaptive quadrature of t^p * rank_pdf over R, folded onto [0, inf).
inline double rank_moment(unsigned k, unsigned p,
                          const QuadratureSpec& quad = {}) {
  if (k < 1) throw std::invalid_argument("rank_moment: k must be >= 1");
  if (p != 2 && p != 3) throw std::invalid_argument("rank_moment: p in {2,3}");
  auto g = [k, p](double t) {
    return std::pow(t, static_cast<double>(p)) * rank_pdf(k, t);
  };
  // Density decays like e^{-kt}; push T until the integrand is negligible.
  double T = 10.0;
  while (g(T) > quad.abs_tol * 1e-4 && T < 800.0) T *= 1.5;
  // The mass concentrates in a peak of width ~ 1/sqrt(k) at the origin;
  // integrate that region separately so the sparse initial samples of the
  // outer panel cannot miss it.
  double split = std::min(8.0 / std::sqrt(static_cast<double>(k)), 0.5 * T);
  return 2.0 * (integrate_adaptive(g, 0.0, split, quad) +
                integrate_adaptive(g, split, T, quad));
}

struct MomentRow {
  unsigned k;
  double sigma2;  // variance of the k-th rank law
  double rho;     // third absolute moment
  double s2_cum;  // sum of sigma2 over 1..k
  double r_cum;   // sum of rho over 1..k
};

inline std::vector<MomentRow> moment_table(unsigned K,
                                           const QuadratureSpec& quad = {}) {
  if (K < 1) throw std::invalid_argument("moment_table: K must be >= 1");
  std::vector<MomentRow> rows;
  rows.reserve(K);
  double s2 = 0.0, r = 0.0;
  for (unsigned k = 1; k <= K; ++k) {
    double sigma2 = rank_moment(k, 2, quad);
    double rho = rank_moment(k, 3, quad);
    s2 += sigma2;
    r += rho;
    rows.push_back({k, sigma2, rho, s2, r});
  }
  return rows;
}

struct EsseenResult {
  double s2;     // s_K^2 = sum sigma_k^2
  double r;      // r_K = sum rho_k
  double bound;  // 6 r / s2^{3/2}
};

/// Berry-Esseen-type aggregate for the first K rank laws.
inline EsseenResult esseen_bound(unsigned K, const QuadratureSpec& quad = {}) {
  auto rows = moment_table(K, quad);
  double s2 = rows.back().s2_cum, r = rows.back().r_cum;
  return {s2, r, 6.0 * r / std::pow(s2, 1.5)};
}

/// Upper-tail probability of the standard normal.
inline double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Sup-norm distance between the empirical CDF of a sorted sample and a
/// reference CDF, evaluated from both sides at each sample point.
inline double ks_statistic(std::span<const double> sample,
                           const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  double prev = -std::numeric_limits<double>::infinity();
  double sup = 0.0;
  double inv = 1.0 / static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample[i] < prev)
      throw std::invalid_argument("ks_statistic: sample must be sorted");
    prev = sample[i];
    double c = cdf(sample[i]);
    sup = std::max(sup, std::abs(c - static_cast<double>(i) * inv));
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) * inv - c));
  }
  return sup;
}

}  // namespace partlab
