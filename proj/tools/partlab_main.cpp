// partlab: exact and asymptotic counting for restricted integer partitions.
//
// Subcommands: count, estimate, compare, ranks, graphical, sample, dist,
// esseen. Output is CSV (default) or JSON lines; every invocation is
// deterministic given its flags and seed.
//
// Exit codes: 0 success, 2 argument error, 3 budget/regime violation,
// 4 numeric failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partlab/asymptotics.hpp"
#include "partlab/distributions.hpp"
#include "partlab/exact_count.hpp"
#include "partlab/graphical.hpp"
#include "partlab/partition.hpp"

namespace {

constexpr int kExitArg = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNumeric = 4;

struct GlobalOpts {
  std::string out = "csv";  // csv | json
  std::string cache;
  std::uint64_t seed = 0;
  double quad_abs_tol = 1e-12;
  double quad_rel_tol = 1e-10;
  std::int64_t enum_cap = 60;
  std::int64_t dp_budget_n = 5000;
  std::int64_t dp_budget_jr = 2000;
};

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One emitter for both output modes: rows are ordered key/value lists.
class Writer {
 public:
  Writer(bool json, std::vector<std::string> header)
      : json_(json), header_(std::move(header)) {
    if (!json_) {
      for (std::size_t i = 0; i < header_.size(); ++i)
        std::cout << (i ? "," : "") << header_[i];
      std::cout << '\n';
    }
  }

  void row(const std::vector<std::string>& values) {
    if (json_) {
      std::cout << '{';
      for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << '"' << header_[i] << "\":\"" << values[i] << '"';
      }
      std::cout << "}\n";
    } else {
      for (std::size_t i = 0; i < values.size(); ++i)
        std::cout << (i ? "," : "") << values[i];
      std::cout << '\n';
    }
  }

 private:
  bool json_;
  std::vector<std::string> header_;
};

partlab::BigCount exact_pn(const GlobalOpts& g, std::int64_t n) {
  if (!g.cache.empty()) {
    // a missing cache starts empty; a malformed one is a hard error
    partlab::PartitionTable t = std::filesystem::exists(g.cache)
                                    ? partlab::PartitionTable::load(g.cache)
                                    : partlab::PartitionTable();
    if (t.size() > static_cast<std::size_t>(n)) return t.at(n);
    t.extend(static_cast<std::size_t>(n));
    t.save(g.cache);
    return t.at(n);
  }
  return partlab::partitions_total(n);
}

std::vector<std::int64_t> parse_grid(const std::string& s) {
  std::vector<std::int64_t> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

int cmd_count(const GlobalOpts& g, const std::string& family, std::int64_t n,
              std::optional<std::int64_t> j, std::optional<std::int64_t> r,
              std::optional<std::int64_t> k) {
  using namespace partlab;
  BigCount v;
  if (family == "P") {
    v = g.cache.empty() ? partitions_total(n) : exact_pn(g, n);
  } else if (family == "A") {
    if (!j || !r) throw CLI::ValidationError("count A requires --j and --r");
    v = count_box(n, *j, *r);
  } else if (family == "B") {
    if (!k || !r) throw CLI::ValidationError("count B requires --k and --r");
    v = count_largest_exact(n, *k, *r);
  } else if (family == "C") {
    if (!k || !r) throw CLI::ValidationError("count C requires --k and --r");
    v = count_exact_both(n, *k, *r);
  } else {
    throw CLI::ValidationError("unknown family: " + family);
  }
  std::cout << to_decimal(v) << '\n';
  return 0;
}

void emit_estimate(const GlobalOpts& g, const partlab::Estimate& e) {
  Writer w(g.out == "json", {"log_value", "value_sci", "regime", "x1", "y1"});
  w.row({fmt_real(e.log_value), e.value_sci(), partlab::regime_name(e.regime),
         fmt_real(e.x1), fmt_real(e.y1)});
}

int cmd_estimate(const GlobalOpts& g, const std::string& family, std::int64_t n,
                 std::optional<std::int64_t> j, std::optional<std::int64_t> r,
                 std::optional<std::int64_t> k, std::optional<double> t) {
  using namespace partlab;
  double log_pn = log_of(exact_pn(g, n));
  Estimate e;
  if (family == "hr") {
    e = hardy_ramanujan_pn(n);
  } else if (family == "theorem1") {
    if (!j || !r) throw CLI::ValidationError("theorem1 requires --j and --r");
    e = theorem1_estimate(n, *j, *r, log_pn);
  } else if (family == "saddlepoint") {
    if (!j || !r) throw CLI::ValidationError("saddlepoint requires --j and --r");
    e = saddlepoint_estimate(n, *j, *r);
  } else if (family == "B") {
    if (!k || !r) throw CLI::ValidationError("B requires --k and --r");
    e = b_estimate(n, *k, *r, log_pn);
  } else if (family == "C") {
    if (!k || !r) throw CLI::ValidationError("C requires --k and --r");
    e = c_estimate(n, *k, *r, log_pn);
  } else if (family == "rank") {
    if (!k || !t) throw CLI::ValidationError("rank requires --k and --t");
    e = rank_count_estimate(n, static_cast<unsigned>(*k), *t, log_pn);
  } else {
    throw CLI::ValidationError("unknown estimator family: " + family);
  }
  emit_estimate(g, e);
  return 0;
}

int cmd_compare(const GlobalOpts& g, const std::string& family,
                const std::string& grid_str, std::optional<double> x1_opt,
                std::optional<double> y1_opt) {
  using namespace partlab;
  auto grid = parse_grid(grid_str);
  if (grid.empty()) throw CLI::ValidationError("empty n-grid");
  for (std::int64_t n : grid)
    if (n > g.dp_budget_n)
      throw std::domain_error("n exceeds exact-DP budget: " + std::to_string(n));

  Writer w(g.out == "json",
           {"n", "j", "r", "estimator", "exact", "estimate_log", "ratio",
            "regime"});
  for (std::int64_t n : grid) {
    std::int64_t c = central_placement(n);
    std::int64_t jv = c, rv = c;
    if (x1_opt) rv = std::llround(coordinate_to_part(n, *x1_opt));
    if (y1_opt) jv = std::llround(coordinate_to_part(n, *y1_opt));
    if (jv > g.dp_budget_jr || rv > g.dp_budget_jr)
      throw std::domain_error("j/r exceeds exact-DP budget at n=" +
                              std::to_string(n));
    double log_pn = log_of(exact_pn(g, n));
    auto emit = [&](const char* name, const BigCount& exact,
                    const Estimate& e) {
      double ratio = exact > 0 ? std::exp(e.log_value - log_of(exact))
                               : std::numeric_limits<double>::quiet_NaN();
      w.row({std::to_string(n), std::to_string(jv), std::to_string(rv), name,
             to_decimal(exact), fmt_real(e.log_value), fmt_real(ratio),
             regime_name(e.regime)});
    };
    if (family == "A") {
      BigCount exact = count_box(n, jv, rv);
      emit("theorem1", exact, theorem1_estimate(n, jv, rv, log_pn));
      emit("saddlepoint", exact, saddlepoint_estimate(n, jv, rv));
    } else if (family == "B") {
      BigCount exact = count_largest_exact(n, jv, rv);
      emit("b_estimate", exact, b_estimate(n, jv, rv, log_pn));
    } else if (family == "C") {
      BigCount exact = count_exact_both(n, jv, rv);
      emit("c_estimate", exact, c_estimate(n, jv, rv, log_pn));
    } else {
      throw CLI::ValidationError("unknown compare family: " + family);
    }
  }
  return 0;
}

int cmd_graphical(const GlobalOpts& g, std::int64_t n, bool exact,
                  std::uint64_t samples) {
  using namespace partlab;
  FractionEstimate fe;
  if (exact) {
    if (n > g.enum_cap)
      throw std::domain_error("n above enumeration cap; use --samples");
    fe = graphical_fraction_exact(n, g.enum_cap);
  } else {
    fe = graphical_fraction_sampled(n, samples, g.seed);
  }
  Writer w(g.out == "json", {"n", "fraction", "stderr", "method", "samples"});
  w.row({std::to_string(fe.n), fmt_real(fe.value), fmt_real(fe.stderr_),
         fe.method == FractionEstimate::Method::exact ? "exact" : "sampled",
         std::to_string(fe.samples)});
  return 0;
}

int cmd_sample(const GlobalOpts& g, std::int64_t n, std::uint64_t count) {
  partlab::PartitionSampler sampler(n, g.seed);
  for (std::uint64_t i = 0; i < count; ++i)
    std::cout << sampler.sample().str() << '\n';
  return 0;
}

int cmd_ranks(const GlobalOpts& g, std::int64_t n, std::int64_t k, bool sample,
              std::uint64_t samples) {
  using namespace partlab;
  if (k < 1) throw CLI::ValidationError("--k must be >= 1");
  std::vector<double> ts;
  double scale = std::numbers::pi / std::sqrt(6.0 * static_cast<double>(n));
  auto collect = [&](const Partition& p) {
    if (p.empty()) return;
    RankVector rv = successive_ranks(p);
    if (rv.durfee >= static_cast<std::size_t>(k))
      ts.push_back(static_cast<double>(rv.ranks[static_cast<std::size_t>(k - 1)]) *
                   scale);
  };
  if (!sample) {
    if (n > g.enum_cap)
      throw std::domain_error("n above enumeration cap; use --samples");
    enumerate_partitions(n, std::nullopt, std::nullopt,
                         [&](const std::vector<std::int64_t>& parts) {
                           collect(Partition(parts));
                         });
  } else {
    PartitionSampler sampler(n, g.seed);
    for (std::uint64_t i = 0; i < samples; ++i) collect(sampler.sample());
  }
  if (ts.empty())
    throw CLI::ValidationError("no partitions attain rank index k");
  std::sort(ts.begin(), ts.end());
  unsigned uk = static_cast<unsigned>(k);
  double ks = ks_statistic(ts, [uk](double t) { return rank_cdf(uk, t); });

  Writer w(g.out == "json", {"t", "empirical_cdf", "theoretical_cdf", "ks"});
  double m = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i + 1 < ts.size() && ts[i + 1] == ts[i]) continue;  // last of ties
    w.row({fmt_real(ts[i]), fmt_real(static_cast<double>(i + 1) / m),
           fmt_real(rank_cdf(uk, ts[i])), ""});
  }
  w.row({"", "", "", fmt_real(ks)});
  return 0;
}

int cmd_dist(const GlobalOpts& g, const std::string& law, std::int64_t k,
             const std::vector<double>& xs) {
  using namespace partlab;
  if (xs.empty()) throw CLI::ValidationError("dist requires at least one --x");
  unsigned uk = static_cast<unsigned>(std::max<std::int64_t>(k, 1));
  Writer w(g.out == "json", {"law", "k", "x", "value"});
  for (double x : xs) {
    double v;
    if (law == "gumbel") v = gumbel_cdf(x);
    else if (law == "yk") v = yk_cdf(uk, x);
    else if (law == "rank-cdf") v = rank_cdf(uk, x);
    else if (law == "rank-pdf") v = rank_pdf(uk, x);
    else if (law == "normal-tail") v = normal_tail(x);
    else throw CLI::ValidationError("unknown law: " + law);
    w.row({law, std::to_string(k), fmt_real(x), fmt_real(v)});
  }
  return 0;
}

int cmd_esseen(const GlobalOpts& g, std::int64_t K) {
  using namespace partlab;
  if (K < 1) throw CLI::ValidationError("--K must be >= 1");
  QuadratureSpec quad{g.quad_abs_tol, g.quad_rel_tol, 4000};
  auto rows = moment_table(static_cast<unsigned>(K), quad);
  Writer w(g.out == "json", {"k", "sigma2", "rho", "s2_cum", "r_cum", "bound"});
  for (const auto& row : rows)
    w.row({std::to_string(row.k), fmt_real(row.sigma2), fmt_real(row.rho),
           fmt_real(row.s2_cum), fmt_real(row.r_cum),
           fmt_real(6.0 * row.r_cum / std::pow(row.s2_cum, 1.5))});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restricted-partition counting, asymptotics and rank statistics"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out, "output format: csv or json")
      ->envname("PARTLAB_OUT")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache", g.cache, "P(n) table cache file")
      ->envname("PARTLAB_CACHE");
  app.add_option("--seed", g.seed, "RNG seed")->envname("PARTLAB_SEED");
  app.add_option("--quad-abs-tol", g.quad_abs_tol)->envname("PARTLAB_QUAD_ABS_TOL");
  app.add_option("--quad-rel-tol", g.quad_rel_tol)->envname("PARTLAB_QUAD_REL_TOL");
  app.add_option("--enum-cap", g.enum_cap, "full-enumeration cap on n")
      ->envname("PARTLAB_ENUM_CAP");
  app.fallthrough();

  // count
  auto* count = app.add_subcommand("count", "exact counts P, A, B, C");
  std::string cnt_family;
  std::int64_t cnt_n = 0;
  std::optional<std::int64_t> cnt_j, cnt_r, cnt_k;
  count->add_option("family", cnt_family)->required();
  count->add_option("--n", cnt_n)->required()->check(CLI::NonNegativeNumber);
  count->add_option("--j", cnt_j)->check(CLI::NonNegativeNumber);
  count->add_option("--r", cnt_r)->check(CLI::NonNegativeNumber);
  count->add_option("--k", cnt_k)->check(CLI::NonNegativeNumber);

  // estimate
  auto* est = app.add_subcommand("estimate", "asymptotic estimators");
  std::string est_family;
  std::int64_t est_n = 0;
  std::optional<std::int64_t> est_j, est_r, est_k;
  std::optional<double> est_t;
  est->add_option("family", est_family)->required();
  est->add_option("--n", est_n)->required();
  est->add_option("--j", est_j);
  est->add_option("--r", est_r);
  est->add_option("--k", est_k);
  est->add_option("--t", est_t);

  // compare
  auto* cmp = app.add_subcommand("compare", "exact vs estimators over an n-grid");
  std::string cmp_family = "A", cmp_grid;
  std::optional<double> cmp_x1, cmp_y1;
  cmp->add_option("--family", cmp_family)->check(CLI::IsMember({"A", "B", "C"}));
  cmp->add_option("--n-grid", cmp_grid)->required();
  cmp->add_option("--x1", cmp_x1, "placement coordinate (default central)");
  cmp->add_option("--y1", cmp_y1);

  // graphical
  auto* gr = app.add_subcommand("graphical", "graphical fraction of even n");
  std::int64_t gr_n = 0;
  bool gr_exact = false;
  std::uint64_t gr_samples = 0;
  gr->add_option("--n", gr_n)->required();
  gr->add_flag("--exact", gr_exact);
  gr->add_option("--samples", gr_samples);

  // sample
  auto* sm = app.add_subcommand("sample", "uniform random partitions");
  std::int64_t sm_n = 0;
  std::uint64_t sm_count = 1;
  sm->add_option("--n", sm_n)->required()->check(CLI::NonNegativeNumber);
  sm->add_option("--count", sm_count);

  // ranks
  auto* rk = app.add_subcommand("ranks", "scaled k-th rank law vs empirical");
  std::int64_t rk_n = 0, rk_k = 1;
  std::uint64_t rk_samples = 0;
  rk->add_option("--n", rk_n)->required();
  rk->add_option("--k", rk_k);
  rk->add_option("--samples", rk_samples, "sample mode; default enumerate");

  // dist
  auto* ds = app.add_subcommand("dist", "limit-law evaluation");
  std::string ds_law;
  std::int64_t ds_k = 1;
  std::vector<double> ds_x;
  ds->add_option("--law", ds_law)->required();
  ds->add_option("--k", ds_k);
  ds->add_option("--x", ds_x);

  // esseen
  auto* es = app.add_subcommand("esseen", "rank-law moment table + Esseen bound");
  std::int64_t es_K = 1;
  es->add_option("--K", es_K)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitArg;
  }

  try {
    if (*count) return cmd_count(g, cnt_family, cnt_n, cnt_j, cnt_r, cnt_k);
    if (*est) return cmd_estimate(g, est_family, est_n, est_j, est_r, est_k, est_t);
    if (*cmp) return cmd_compare(g, cmp_family, cmp_grid, cmp_x1, cmp_y1);
    if (*gr) {
      if (!gr_exact && gr_samples == 0)
        throw CLI::ValidationError("graphical: give --exact or --samples");
      return cmd_graphical(g, gr_n, gr_exact, gr_samples);
    }
    if (*sm) return cmd_sample(g, sm_n, sm_count);
    if (*rk) return cmd_ranks(g, rk_n, rk_k, rk_samples > 0, rk_samples);
    if (*ds) return cmd_dist(g, ds_law, ds_k, ds_x);
    if (*es) return cmd_esseen(g, es_K);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArg;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArg;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
