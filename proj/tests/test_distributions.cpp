#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "partlab/distributions.hpp"
#include "support.hpp"

using namespace partlab;

namespace {

// Quadrature oracle for Y_k: integrate e^{-e^{-v} - kv}/Gamma(k) over
// (-inf, x]. The integrand is doubly-exponentially small below v = -8.
double yk_by_quadrature(unsigned k, double x) {
  double lgk = std::lgamma(static_cast<double>(k));
  auto f = [k, lgk](double v) {
    return std::exp(-std::exp(-v) - static_cast<double>(k) * v - lgk);
  };
  double lo = std::min(x, -8.0) - 1.0;
  QuadratureSpec tight{1e-13, 1e-12, 20000};
  return integrate_adaptive(f, lo, x, tight);
}

}  // namespace

TEST_CASE("gumbel cdf") {
  CHECK_THAT(gumbel_cdf(0.0), Catch::Matchers::WithinAbs(std::exp(-1.0), 1e-15));
  CHECK(gumbel_cdf(30.0) >= 1.0 - 1e-12);
  CHECK(gumbel_cdf(-2.0) < gumbel_cdf(-1.9));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng);
    CHECK_THAT(yk_cdf(1, x), Catch::Matchers::WithinAbs(gumbel_cdf(x), 1e-14));
  }
}

TEST_CASE("yk cdf closed form vs quadrature") {
  // k = 2 expands to e^{-e^{-x}} (1 + e^{-x})
  for (double x : {-1.0, 0.0, 0.5, 2.0, 6.0})
    CHECK_THAT(yk_cdf(2, x),
               Catch::Matchers::WithinAbs(
                   std::exp(-std::exp(-x)) * (1.0 + std::exp(-x)), 1e-14));

  for (unsigned k = 1; k <= 20; ++k)
    for (double x = -2.0; x <= 6.0; x += 0.5)
      CHECK_THAT(yk_cdf(k, x),
                 Catch::Matchers::WithinAbs(yk_by_quadrature(k, x), 1e-10));
}

TEST_CASE("yk cdf ordering and monotonicity") {
  for (unsigned k = 1; k <= 20; ++k)
    for (double x = -2.0; x <= 6.0; x += 0.25) {
      // the (k+1)-th largest part is no larger than the k-th, so its
      // law puts at least as much mass below any threshold
      CHECK(yk_cdf(k + 1, x) >= yk_cdf(k, x));
      // near saturation the cdf is flat to the last ulp, so only demand
      // strict growth while there is headroom below 1
      if (yk_cdf(k, x + 0.25) < 1.0 - 1e-12)
        CHECK(yk_cdf(k, x) < yk_cdf(k, x + 0.25));
      else
        CHECK(yk_cdf(k, x) <= yk_cdf(k, x + 0.25) + 1e-15);
      CHECK(yk_cdf(k, x) > 0.0);
      CHECK(yk_cdf(k, x) < 1.0);
    }
}

TEST_CASE("rank cdf") {
  CHECK_THAT(rank_cdf(1, 0.0), Catch::Matchers::WithinAbs(0.5, 1e-15));
  for (double t = -6.0; t <= 6.0; t += 0.5)
    CHECK_THAT(rank_cdf(1, t),
               Catch::Matchers::WithinAbs(1.0 / (1.0 + std::exp(-t)), 1e-13));
  for (unsigned k = 1; k <= 30; ++k) {
    CHECK_THAT(rank_cdf(k, 0.0), Catch::Matchers::WithinAbs(0.5, 1e-12));
    for (double t = 0.5; t <= 8.0; t += 0.5)
      CHECK_THAT(rank_cdf(k, t) + rank_cdf(k, -t),
                 Catch::Matchers::WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("rank pdf") {
  CHECK_THAT(rank_pdf(1, 0.0), Catch::Matchers::WithinAbs(0.25, 1e-15));

  QuadratureSpec quad{1e-12, 1e-11, 20000};
  for (unsigned k = 1; k <= 30; ++k) {
    auto f = [k](double t) { return rank_pdf(k, t); };
    double mass = 2.0 * integrate_adaptive(f, 0.0, 60.0, quad);
    CHECK_THAT(mass, Catch::Matchers::WithinAbs(1.0, 1e-9));
  }

  // centered difference of the cdf reproduces the density
  const double h = 1e-5;
  for (unsigned k : {1u, 3u, 10u, 30u})
    for (double t = -4.0; t <= 4.0; t += 0.5) {
      double fd = (rank_cdf(k, t + h) - rank_cdf(k, t - h)) / (2.0 * h);
      CHECK_THAT(rank_pdf(k, t), Catch::Matchers::WithinAbs(fd, 1e-6));
    }

  // symmetric and maximal at t = 0
  for (unsigned k : {1u, 5u, 20u})
    for (double t = 0.25; t <= 5.0; t += 0.25) {
      CHECK_THAT(rank_pdf(k, t), Catch::Matchers::WithinRel(rank_pdf(k, -t), 1e-12));
      CHECK(rank_pdf(k, t) < rank_pdf(k, 0.0));
    }
}

TEST_CASE("rank moments: logistic anchor and trigamma identity") {
  QuadratureSpec tight{1e-13, 1e-12, 40000};
  CHECK_THAT(rank_moment(1, 2, tight),
             Catch::Matchers::WithinAbs(std::numbers::pi * std::numbers::pi / 3.0,
                                        1e-10));
  CHECK(rank_moment(1, 3, tight) > 0.0);

  // The k-th rank is a difference of two independent -log Gamma(k)
  // variables, so its variance is exactly 2 psi'(k).
  for (unsigned k = 1; k <= 30; ++k)
    CHECK_THAT(rank_moment(k, 2, tight),
               Catch::Matchers::WithinAbs(2.0 * testsupport::trigamma(k), 1e-8));

  double prev = rank_moment(1, 2, tight);
  for (unsigned k = 2; k <= 50; ++k) {
    double cur = rank_moment(k, 2, tight);
    CHECK(cur < prev);
    prev = cur;
  }

  CHECK_THROWS_AS(rank_moment(1, 4), std::invalid_argument);
  QuadratureSpec starved{1e-14, 1e-14, 1};
  CHECK_THROWS_AS(rank_moment(1, 2, starved), std::runtime_error);
}

TEST_CASE("moment table and esseen bound") {
  QuadratureSpec quad{1e-12, 1e-10, 8000};
  auto rows = moment_table(50, quad);
  REQUIRE(rows.size() == 50);
  double s2 = 0.0, r = 0.0;
  for (const auto& row : rows) {
    s2 += row.sigma2;
    r += row.rho;
    CHECK_THAT(row.s2_cum, Catch::Matchers::WithinRel(s2, 1e-12));
    CHECK_THAT(row.r_cum, Catch::Matchers::WithinRel(r, 1e-12));
    CHECK(row.sigma2 > 0.0);
    CHECK(row.rho > 0.0);
  }
  // s2 cumulative is increasing and concave
  for (std::size_t i = 2; i < rows.size(); ++i)
    CHECK(rows[i].s2_cum - rows[i - 1].s2_cum <
          rows[i - 1].s2_cum - rows[i - 2].s2_cum);

  auto e1 = esseen_bound(1, quad);
  double rho1 = rank_moment(1, 3, quad);
  CHECK_THAT(e1.s2, Catch::Matchers::WithinAbs(std::numbers::pi * std::numbers::pi / 3.0, 1e-9));
  CHECK_THAT(e1.bound,
             Catch::Matchers::WithinRel(6.0 * rho1 / std::pow(e1.s2, 1.5), 1e-9));
}

TEST_CASE("normal tail") {
  CHECK_THAT(normal_tail(0.0), Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(normal_tail(1.96), Catch::Matchers::WithinAbs(0.0249979, 1e-6));
  // ratio to the leading asymptotic term tends to 1
  double x = 10.0;
  double lead = std::exp(-x * x / 2.0) / (x * std::sqrt(2.0 * std::numbers::pi));
  CHECK(std::abs(normal_tail(x) / lead - 1.0) < 0.01);
}

TEST_CASE("ks statistic") {
  // quantile-grid sample stays within 1/len of its own law
  std::vector<double> sample;
  const int m = 200;
  for (int i = 1; i <= m; ++i) {
    double u = (static_cast<double>(i) - 0.5) / m;
    sample.push_back(-std::log(-std::log(u)));  // gumbel quantile
  }
  double ks = ks_statistic(sample, [](double x) { return gumbel_cdf(x); });
  CHECK(ks <= 1.0 / m + 1e-12);

  std::vector<double> bad = {1.0, 0.5};
  CHECK_THROWS_AS(ks_statistic(bad, [](double x) { return x; }),
                  std::invalid_argument);
}
