#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "m2m/energy.hpp"
#include "oracles.hpp"

using namespace m2m;
using namespace m2m::energy;

namespace {

constexpr double kPi = 3.14159265358979323846;

NetworkConfig table2() {
  NetworkConfig cfg;
  cfg.eta = 0.35;
  cfg.p_o = 50.0;
  return cfg;
}

// Appendix-A integral form of the mean uplink PA power (pre gamma
// substitution): 2 pi lambda_u / eta * [ PbarT int_0^rc r^(alpha+1)
// e^(-lambda_a pi r^2) dr + PTmax int_rc^inf r e^(-lambda_a pi r^2) dr ].
double pa_power_oracle(const NetworkConfig& cfg, double lambda_u, double lambda_a) {
  const double rc = std::pow(cfg.p_t_max / cfg.p_bar_t, 1.0 / cfg.alpha);
  const double inner = oracle::integrate([&](double r) {
    return std::pow(r, cfg.alpha + 1.0) * std::exp(-lambda_a * kPi * r * r);
  }, 0.0, rc);
  const double outer = oracle::integrate_to_inf([&](double r) {
    return r * std::exp(-lambda_a * kPi * r * r);
  }, rc);
  return 2.0 * kPi * lambda_u / cfg.eta * (cfg.p_bar_t * inner + cfg.p_t_max * outer);
}

// Appendix-B integral form of the mean received power:
// 2 pi lambda_u int_0^inf min(PTmax r^-alpha, PbarT) e^(-lambda_a pi r^2) r dr.
double received_power_oracle(const NetworkConfig& cfg, double lambda_u,
                             double lambda_a) {
  const double rc = std::pow(cfg.p_t_max / cfg.p_bar_t, 1.0 / cfg.alpha);
  const double head = oracle::integrate([&](double r) {
    return cfg.p_bar_t * r * std::exp(-lambda_a * kPi * r * r);
  }, 0.0, rc);
  const double tail = oracle::integrate_to_inf([&](double r) {
    return cfg.p_t_max * std::pow(r, 1.0 - cfg.alpha) * std::exp(-lambda_a * kPi * r * r);
  }, rc);
  return 2.0 * kPi * lambda_u * (head + tail);
}

CoverageRule all_ones() {
  return [](const StagePlan& p) { return CoverageVector::ones(p.k_total); };
}

}  // namespace

TEST_CASE("mean uplink power: trivial and closed-form cases") {
  auto cfg = table2();
  CHECK(mean_uplink_power(cfg, 0.0, 100.0) == 0.0);
  CHECK_THROWS_AS(mean_uplink_power(cfg, 10.0, 0.0), std::domain_error);

  // Unbounded power, alpha = 4: pi*900*Gamma(3)/(eta*(pi*100)^3).
  cfg.p_t_max = kInfinitePower;
  cfg.eta = 1.0;
  cfg.p_bar_t = 1.0;
  const double want = 1800.0 * kPi / std::pow(100.0 * kPi, 3.0);
  CHECK(mean_uplink_power(cfg, 900.0, 100.0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("mean uplink power matches the defining integral on a parameter grid") {
  auto cfg = table2();
  for (double la : {1.0, 10.0, 100.0, 316.0}) {
    for (double ratio : {1.0, 2.5, 6.0, 16.0, 100.0}) {
      cfg.p_t_max = ratio * cfg.p_bar_t;
      const double got = mean_uplink_power(cfg, 900.0, la);
      const double want = pa_power_oracle(cfg, 900.0, la);
      CHECK(oracle::rel_err(got, want) < 1e-8);
    }
  }
}

TEST_CASE("unbounded-power limit is reached by the capped formula") {
  auto cfg = table2();
  cfg.p_t_max = 1e9 * cfg.p_bar_t;
  const double capped = mean_uplink_power(cfg, 900.0, 100.0);
  cfg.p_t_max = kInfinitePower;
  const double open = mean_uplink_power(cfg, 900.0, 100.0);
  CHECK(oracle::rel_err(capped, open) < 1e-6);
}

TEST_CASE("mean received power: limits and integral oracle") {
  auto cfg = table2();
  cfg.p_t_max = kInfinitePower;
  CHECK(mean_received_power(cfg, 900.0, 100.0) ==
        doctest::Approx(9.0 * cfg.p_bar_t).epsilon(1e-12));

  cfg.p_t_max = 16.0 * cfg.p_bar_t;
  for (double la : {1.0, 4.0, 25.0}) {
    const double got = mean_received_power(cfg, 900.0, la);
    const double want = received_power_oracle(cfg, 900.0, la);
    CHECK(oracle::rel_err(got, want) < 1e-8);
  }
  // Symmetric load: unit ratio in the channel-inversion part.
  const double sym = mean_received_power(cfg, 25.0, 25.0);
  const double want = received_power_oracle(cfg, 25.0, 25.0);
  CHECK(oracle::rel_err(sym, want) < 1e-8);
}

TEST_CASE("load moments") {
  CHECK(mean_na(900.0, 100.0) == doctest::Approx(9.0));
  CHECK(mean_na(890.0, 100.0) == doctest::Approx(8.9));
  CHECK(mean_na_within(900.0, 100.0, 0.0) == 0.0);
  CHECK(mean_na_within(900.0, 100.0, kInfinitePower) == doctest::Approx(9.0));
  const double half_mass_d = std::sqrt(std::log(2.0) / (100.0 * kPi));
  CHECK(mean_na_within(900.0, 100.0, half_mass_d) == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(second_moment_na(0.0, 1.0) == 0.0);
  CHECK(second_moment_na(900.0, 100.0) ==
        doctest::Approx(9.0 + 4.5 / 3.5 * 81.0).epsilon(1e-12));
  CHECK(second_moment_na(100.0, 100.0) ==
        doctest::Approx(1.0 + 4.5 / 3.5).epsilon(1e-12));
}

TEST_CASE("single-stage cost uses the direct-transmission branch") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.2, 1);
  const double p_bs = mean_uplink_power(cfg, cfg.lambda, cfg.lambda_bs);
  const double want =
      cfg.lambda * (cfg.circuit_power() + cfg.lambda_bs / cfg.lambda * p_bs +
                    (1.0 + 4.5 / 3.5 * cfg.lambda / cfg.lambda_bs) * cfg.p_lo);
  CHECK(stage_cost(cfg, plan, 1) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(stage_cost(cfg, plan, 2), std::out_of_range);
}

TEST_CASE("stage costs increase in k below the last stage") {
  const auto cfg = table2();
  for (int K : {3, 4, 6}) {
    const double lo = std::max(0.05, min_feasible_gamma(cfg, K) * 1.05);
    for (double g = lo; g <= 0.45; g += 0.04) {
      const auto plan = build_stage_plan(cfg, g, K);
      for (int k = 1; k <= K - 2; ++k)
        CHECK(stage_cost(cfg, plan, k) < stage_cost(cfg, plan, k + 1));
    }
  }
}

TEST_CASE("last-stage cost decreases with the total stage count") {
  const auto cfg = table2();
  double prev = 1e300;
  for (int K = 2; K <= 6; ++K) {
    const auto plan = build_stage_plan(cfg, 0.3, K);
    const double last = stage_cost(cfg, plan, K);
    CHECK(last < prev);
    prev = last;
  }
}

TEST_CASE("total energy density composes stage costs with coverage factors") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.1, 3);
  const auto upper = total_energy_density(cfg, plan, CoverageVector::ones(3));
  double sum = 0.0;
  for (int k = 1; k <= 3; ++k) sum += stage_cost(cfg, plan, k);
  CHECK(upper.total == doctest::Approx(sum).epsilon(1e-12));
  CHECK_FALSE(upper.coverage_scaled);

  // Zero coverage past stage 1 leaves only the first stage consuming.
  CoverageVector beheaded{{1.0, 0.0, 0.0}};
  const auto only_first = total_energy_density(cfg, plan, beheaded);
  CHECK(only_first.total == doctest::Approx(stage_cost(cfg, plan, 1)));
  CHECK(only_first.coverage_scaled);

  // Reducing any coverage entry cannot increase the total.
  CoverageVector reduced{{1.0, 0.7, 0.5}};
  CHECK(total_energy_density(cfg, plan, reduced).total < upper.total);

  CHECK_THROWS_AS(total_energy_density(cfg, plan, CoverageVector::ones(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(total_energy_density(cfg, plan, CoverageVector{{1.0, 2.0, 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("gamma sweep has an interior minimum at K=2 for both P_LO variants") {
  for (double p_lo : {5.0, 200.0 / 4.0}) {
    auto cfg = table2();
    cfg.p_lo = p_lo;
    const auto opt = optimize_gamma(cfg, 2, all_ones());
    CHECK(!opt.boundary_minimum);
    CHECK(opt.gamma_opt > opt.bracket_lo + 1e-4);
    CHECK(opt.gamma_opt < opt.bracket_hi - 1e-4);
    const auto at = [&](double g) {
      const auto plan = build_stage_plan(cfg, g, 2);
      return total_energy_density(cfg, plan, CoverageVector::ones(2)).total;
    };
    CHECK(opt.energy.total < at(opt.bracket_lo * 1.01));
    CHECK(opt.energy.total < at(opt.bracket_hi));
    CHECK(opt.precondition_holds);
  }
}

TEST_CASE("K=1 optimization reports a gamma-free objective") {
  const auto cfg = table2();
  const auto opt = optimize_gamma(cfg, 1, all_ones());
  CHECK(std::isnan(opt.gamma_opt));
  CHECK_FALSE(opt.precondition_holds);
  const auto plan = build_stage_plan(cfg, 0.3, 1);
  CHECK(opt.energy.total ==
        doctest::Approx(total_energy_density(cfg, plan, CoverageVector::ones(1)).total));
}
