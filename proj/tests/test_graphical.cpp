#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "partlab/graphical.hpp"
#include "support.hpp"

using namespace partlab;

TEST_CASE("erdos-gallai examples") {
  CHECK(erdos_gallai_graphical(std::vector<std::int64_t>{}));
  CHECK(erdos_gallai_graphical(std::vector<std::int64_t>{3, 3, 2, 2}));
  CHECK_FALSE(erdos_gallai_graphical(std::vector<std::int64_t>{2, 2}));
  CHECK(erdos_gallai_graphical(std::vector<std::int64_t>{1, 1}));
  CHECK_FALSE(erdos_gallai_graphical(std::vector<std::int64_t>{3}));
  CHECK_THROWS_AS(erdos_gallai_graphical(std::vector<std::int64_t>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("nash-williams agrees with erdos-gallai on all even n <= 20") {
  for (std::int64_t n = 0; n <= 20; n += 2)
    enumerate_partitions(n, std::nullopt, std::nullopt,
                         [&](const std::vector<std::int64_t>& parts) {
                           Partition p(parts);
                           CHECK(nash_williams_graphical(p) ==
                                 erdos_gallai_graphical(parts));
                         });
}

TEST_CASE("graphical fraction exact values") {
  CHECK(graphical_fraction_exact(0).value == 1.0);
  auto f2 = graphical_fraction_exact(2);
  CHECK(f2.value == 0.5);
  CHECK(f2.stderr_ == 0.0);
  CHECK(graphical_fraction_exact(4).value == 0.4);
  CHECK_THROWS_AS(graphical_fraction_exact(5), std::invalid_argument);
  CHECK_THROWS_AS(graphical_fraction_exact(80, 60), std::invalid_argument);
}

TEST_CASE("sampler is deterministic and sums to n") {
  for (std::uint64_t seed : {1ull, 7ull, 991ull}) {
    Partition a = sample_partition_uniform(24, seed);
    Partition b = sample_partition_uniform(24, seed);
    CHECK(a == b);
    CHECK(a.n() == 24);
  }
  CHECK(sample_partition_uniform(0, 3) == Partition());
}

TEST_CASE("sampler frequencies are uniform at n=4") {
  const std::uint64_t N = 50000;
  PartitionSampler s(4, 20240817);
  std::map<std::string, std::uint64_t> freq;
  for (std::uint64_t i = 0; i < N; ++i) ++freq[s.sample().str()];
  REQUIRE(freq.size() == 5);
  double se = std::sqrt(0.2 * 0.8 / static_cast<double>(N));
  for (const auto& [key, count] : freq) {
    double p = static_cast<double>(count) / static_cast<double>(N);
    INFO(key << " -> " << p);
    CHECK(std::abs(p - 0.2) < 4.0 * se);
  }
}

TEST_CASE("sampled graphical fraction brackets the exact value at n=10") {
  auto exact = graphical_fraction_exact(10);
  auto est = graphical_fraction_sampled(10, 20000, 42);
  CHECK(est.stderr_ > 0.0);
  CHECK(std::abs(est.value - exact.value) < 4.0 * est.stderr_);
  CHECK_THROWS_AS(graphical_fraction_sampled(9, 10, 1), std::invalid_argument);

  auto one = graphical_fraction_sampled(10, 1, 5);
  CHECK((one.value == 0.0 || one.value == 1.0));

  // two seeds agree within their combined spread
  auto a = graphical_fraction_sampled(10, 20000, 1);
  auto b = graphical_fraction_sampled(10, 20000, 2);
  CHECK(std::abs(a.value - b.value) < 5.0 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("decay fit runs on exact rows") {
  std::vector<FractionEstimate> rows;
  for (std::int64_t n = 2; n <= 30; n += 2)
    rows.push_back(graphical_fraction_exact(n));
  auto fit = fit_decay(rows);
  CHECK(fit.c_pow > 0.0);
  CHECK(fit.c_log > 0.0);
  CHECK(fit.free_exponent > 0.0);  // the fraction does decay
}
