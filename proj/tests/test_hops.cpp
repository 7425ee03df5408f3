#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "m2m/hops.hpp"
#include "m2m/rate.hpp"

using namespace m2m;
using namespace m2m::hops;

namespace {
NetworkConfig table2() {
  NetworkConfig cfg;
  cfg.eta = 0.35;
  cfg.p_o = 50.0;
  return cfg;
}
}  // namespace

TEST_CASE("upper bound: closed-form value at the reference point") {
  const auto cfg = table2();  // alpha = 4, unbounded power
  CHECK(k_upper_bound_limit(cfg, 0.01, 0.1) == 11);
  // No outage budget permits no compounding.
  CHECK(k_upper_bound_limit(cfg, 0.01, 1e-9) == 1);
  CHECK_THROWS_AS(k_upper_bound_limit(cfg, 0.01, 0.0), std::domain_error);
  CHECK_THROWS_AS(k_upper_bound_limit(cfg, 0.01, 1.0), std::domain_error);
}

TEST_CASE("upper bound from explicit per-stage coverage") {
  CHECK(k_upper_bound({0.9, 0.8}, 0.1).value() ==
        static_cast<int>(std::ceil(std::log(1.0 / 0.9) / -std::log(0.9))));
  CHECK_FALSE(k_upper_bound({0.5, 1.0}, 0.1).has_value());  // unbounded
  CHECK_THROWS_AS(k_upper_bound({}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(k_upper_bound({1.2}, 0.1), std::domain_error);
}

TEST_CASE("upper bound is monotone in budget and threshold") {
  const auto cfg = table2();
  for (double t : {0.01, 0.1, 1.0}) {
    int prev = 0;
    for (double eps = 0.01; eps <= 0.5; eps += 0.035) {
      const int ku = k_upper_bound_limit(cfg, t, eps);
      CHECK(ku >= prev);
      prev = ku;
    }
  }
  for (double eps : {0.05, 0.2}) {
    int prev = 1 << 30;
    for (double t : {0.01, 0.1, 1.0}) {
      const int ku = k_upper_bound_limit(cfg, t, eps);
      CHECK(ku <= prev);
      prev = ku;
    }
  }
}

TEST_CASE("lower bound: unbounded power reaches everything in one hop") {
  const auto cfg = table2();
  CHECK(k_lower_bound(cfg, 900.0, 100.0, 1e-6) == 1);
  CHECK(k_lower_fixed_point(cfg, 0.1, 1e-6) == 1);
}

TEST_CASE("lower bound: sparse aggregators force multiple hops") {
  auto cfg = table2();
  cfg.p_t_max = 2.0 * cfg.p_bar_t;
  const double p_r_min = 1.0 * cfg.p_bar_t;  // range (2)^(1/4) ~ 1.19 km
  // lambda_u=0.36, lambda_a=0.04 per km^2: E[L] = 0.36/(2*0.008) = 22.5 km.
  const int kl = k_lower_bound(cfg, 0.36, 0.04, p_r_min);
  CHECK(kl > 1);
  // Jensen ordering: the 1/E[N] version cannot exceed the E[1/N] version.
  const double mean_len = 0.36 / (2.0 * std::pow(0.04, 1.5));
  const double jensen = std::ceil(mean_len * (0.04 / 0.36) *
                                  std::pow(p_r_min / cfg.p_t_max, 0.25));
  CHECK(static_cast<int>(jensen) <= kl);
  CHECK_THROWS_AS(k_lower_bound(cfg, 900.0, 100.0, 3.0), std::domain_error);
}

TEST_CASE("fixed-point scan: reference configuration and monotonicity") {
  auto cfg = table2();
  cfg.p_t_max = 1e4 * cfg.p_bar_t;
  const int base = k_lower_fixed_point(cfg, 0.1, 1e-4 * cfg.p_t_max);
  CHECK(base == 1);
  // The bound value is nondecreasing as p_r_min grows toward P_Tmax.
  int prev = 0;
  bool exhausted = false;
  for (double frac : {1e-8, 1e-4, 1e-2}) {
    const int v = k_lower_fixed_point(cfg, 0.1, frac * cfg.p_t_max);
    CHECK(v >= prev);
    prev = v;
  }
  // A crafted sparse network admits no K <= 64.
  auto tiny = table2();
  tiny.lambda = 4.0;
  tiny.lambda_bs = 0.5;
  tiny.p_t_max = 2.0 * tiny.p_bar_t;
  try {
    (void)k_lower_fixed_point(tiny, 0.01, 1.0 * tiny.p_bar_t);
  } catch (const std::runtime_error&) {
    exhausted = true;
  }
  CHECK(exhausted);
}

TEST_CASE("larger gamma weakens the self-referential bound") {
  auto cfg = table2();
  cfg.p_t_max = 2.0 * cfg.p_bar_t;
  cfg.lambda = 4.0;
  cfg.lambda_bs = 0.5;
  // The right-hand side shrinks in gamma, so the satisfying K cannot grow.
  int prev = 1 << 30;
  for (double g : {0.3, 0.4, 0.45}) {
    int v;
    try {
      v = k_lower_fixed_point(cfg, g, 1.0 * cfg.p_bar_t);
    } catch (const std::runtime_error&) {
      v = 1 << 30;
    }
    CHECK(v <= prev);
    prev = v;
  }
}
