#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "m2m/coverage.hpp"
#include "m2m/specfun.hpp"
#include "oracles.hpp"

using namespace m2m;
using namespace m2m::coverage;

namespace {

NetworkConfig table2(double pmax_ratio = std::numeric_limits<double>::infinity()) {
  NetworkConfig cfg;
  cfg.eta = 0.35;
  cfg.p_o = 50.0;
  cfg.p_bar_t = 1.0;
  cfg.p_t_max = std::isinf(pmax_ratio) ? kInfinitePower : pmax_ratio;
  return cfg;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return g;
}

double corollary2(double alpha, double t) {
  return std::exp(-2.0 * t / (alpha - 2.0) * specfun::c_alpha(alpha, t));
}

}  // namespace

TEST_CASE("laplace transform: s -> 0 limit and open-loop form") {
  const auto cfg = table2(16.0);
  CHECK(laplace_interference(cfg, 100.0, 1e-9).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(laplace_interference(cfg, 100.0, 1.0).value > 0.0);
  CHECK(laplace_interference(cfg, 100.0, 1.0).value < 1.0);

  const auto open = table2();
  for (double s : {0.1, 1.0, 4.0}) {
    const double want =
        std::exp(-2.0 * s / 2.0 * specfun::c_alpha(4.0, s));  // PbarT = 1
    CHECK(laplace_interference(open, 100.0, s).value == doctest::Approx(want).epsilon(1e-10));
  }
  CHECK_THROWS_AS(laplace_interference(cfg, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(laplace_interference(cfg, 100.0, 0.0), std::domain_error);
}

TEST_CASE("lower bound never exceeds the transform (30-point grids)") {
  for (double la : {1.0, 100.0}) {
    for (double ratio : {1.0, 16.0}) {
      const auto cfg = table2(ratio);
      for (double s : log_grid(1e-3, 1e2, 30)) {
        const double l = laplace_interference(cfg, la, s).value;
        const double lb = laplace_interference_lower_bound(cfg, la, s).value;
        CHECK(lb <= l * (1.0 + 1e-10));
        CHECK(lb < 1.0);
      }
    }
  }
  // Unbounded power: the bound's capped term vanishes and both coincide.
  const auto open = table2();
  for (double s : {0.3, 3.0}) {
    CHECK(laplace_interference_lower_bound(open, 50.0, s).value ==
          doctest::Approx(laplace_interference(open, 50.0, s).value).epsilon(1e-12));
  }
}

TEST_CASE("single-stage coverage: open-loop closed form") {
  const auto cfg = table2();
  // alpha=4, T=1: exp(-pi/4).
  CHECK(sir_coverage_single(cfg, 100.0, {1.0}) ==
        doctest::Approx(std::exp(-M_PI / 4.0)).epsilon(1e-10));
  // Density independence in the unbounded-power limit.
  CHECK(sir_coverage_single(cfg, 1.0, {1.0}) ==
        doctest::Approx(sir_coverage_single(cfg, 100.0, {1.0})).epsilon(1e-12));
  // T -> 0 gives certain coverage.
  CHECK(sir_coverage_single(cfg, 100.0, {1e-9}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("huge-but-finite cap reproduces the open-loop limit") {
  const auto capped = table2(1e9);
  const auto open = table2();
  for (double t : {0.1, 1.0, 10.0}) {
    CHECK(std::fabs(sir_coverage_single(capped, 100.0, {t}) -
                    sir_coverage_single(open, 100.0, {t})) < 1e-5);
  }
}

TEST_CASE("finite cap ordering toward the open-loop value at sparse density") {
  // At lambda_a = 1 the truncation regime is visible. The Lemma-2 formula
  // gives coverage decreasing in P_Tmax here: a tight cap suppresses
  // interference more than it hurts the few capped signals. Values frozen
  // from this implementation, cross-checked against an independent
  // high-precision evaluation of the same formulas.
  const double open_value = sir_coverage_single(table2(), 1.0, {1.0});
  double prev = 1.0;
  for (double ratio : {1.0, 5.0, 10.0, 20.0}) {
    const double cov = sir_coverage_single(table2(ratio), 1.0, {1.0});
    CHECK(cov < prev);
    CHECK(cov >= open_value - 1e-9);
    prev = cov;
  }
  CHECK(sir_coverage_single(table2(1.0), 1.0, {1.0}) ==
        doctest::Approx(0.473513).epsilon(1e-4));
  CHECK(std::fabs(prev - open_value) < 1e-4);  // ratio 20 is already close
}

TEST_CASE("thinning probabilities") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.1, 2);
  const auto p_th = thinning_probabilities(plan);
  // Stage 1 load 9: 1 - (3.5/12.5)^3.5.
  CHECK(p_th[0] == doctest::Approx(0.98837).epsilon(1e-4));
  // Stage 2 load 100: essentially certain occupancy.
  CHECK(p_th[1] > 0.999);
}

TEST_CASE("intra-stage transform reduces to the single-tier transform") {
  const auto cfg = table2(16.0);
  const auto plan = build_stage_plan(cfg, 0.1, 1);
  const std::vector<double> unthinned = {1.0};
  for (double s : {0.2, 1.0, 5.0}) {
    CHECK(laplace_intra_stage(cfg, plan, 1, unthinned, s).value ==
          doctest::Approx(laplace_interference(cfg, cfg.lambda_bs, s).value)
              .epsilon(1e-12));
  }
  const std::vector<double> empty = {0.0};
  CHECK(laplace_intra_stage(cfg, plan, 1, empty, 1.0).value == 1.0);
}

TEST_CASE("inter-stage transform: product structure in the open-loop limit") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.2, 5);
  const auto p_th = thinning_probabilities(plan);
  const double s = 0.8;
  CHECK(laplace_inter_stage(cfg, plan, 1, {1}, p_th, s).value == 1.0);

  const double base = specfun::b_alpha(4.0, s * cfg.p_bar_t) +
                      s * cfg.p_bar_t * specfun::c_alpha(4.0, s * cfg.p_bar_t);
  const double one = std::exp(-base);
  const double two_sets =
      laplace_inter_stage(cfg, plan, 1, {1, 2, 3}, p_th, s).value;
  const double four_sets =
      laplace_inter_stage(cfg, plan, 1, {1, 2, 3, 4, 5}, p_th, s).value;
  CHECK(two_sets == doctest::Approx(one * one).epsilon(1e-10));
  // Doubling the active-set cardinality squares the open-loop value.
  CHECK(four_sets == doctest::Approx(two_sets * two_sets).epsilon(1e-10));
}

TEST_CASE("sequential mode composes density-independent stages when unbounded") {
  const auto cfg = table2();
  for (int K : {1, 2, 4}) {
    const auto plan = build_stage_plan(cfg, 0.25, K);
    const auto cov = sir_coverage_mode(cfg, plan, TransmissionMode::Sequential, {1.0});
    const double single = corollary2(4.0, 1.0);
    for (double p : cov.per_stage) CHECK(p == doctest::Approx(single).epsilon(1e-9));
    CHECK(cov.joint.back() == doctest::Approx(std::pow(single, K)).epsilon(1e-8));
  }
}

TEST_CASE("full-duplex closed form and mode orderings in the open-loop limit") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.1, 2);
  const double T = 1.0;
  const auto seq = sir_coverage_mode(cfg, plan, TransmissionMode::Sequential, {T});
  const auto fd = sir_coverage_mode(cfg, plan, TransmissionMode::FullDuplexParallel, {T});
  const auto hd = sir_coverage_mode(cfg, plan, TransmissionMode::HalfDuplexParallel, {T});

  // Eq.-31-style closed form: per stage, intra times (K-1) inter factors.
  const double intra = corollary2(4.0, T);
  const double inter =
      std::exp(-(specfun::b_alpha(4.0, T) + T * specfun::c_alpha(4.0, T)));
  for (double p : fd.per_stage) CHECK(p == doctest::Approx(intra * inter).epsilon(1e-8));

  // FD adds interference, so it cannot beat sequential per stage.
  for (int k = 0; k < 2; ++k) CHECK(fd.per_stage[k] <= seq.per_stage[k] + 1e-12);

  // Half-duplex K=2: only stage 1 active in the odd phase, no co-active peer.
  CHECK(hd.per_stage[0] == doctest::Approx(intra).epsilon(1e-9));
  CHECK(hd.per_stage[1] == 1.0);
  CHECK(hd.joint.back() >= fd.joint.back());
}

TEST_CASE("half-duplex phases and FD reduction at K=1") {
  const auto cfg = table2();
  const auto plan1 = build_stage_plan(cfg, 0.1, 1);
  const auto seq = sir_coverage_mode(cfg, plan1, TransmissionMode::Sequential, {1.0});
  const auto fd =
      sir_coverage_mode(cfg, plan1, TransmissionMode::FullDuplexParallel, {1.0});
  // K=1: no inter-stage factor; the only difference is the (negligible)
  // occupancy thinning of the interferer field.
  CHECK(fd.joint.back() == doctest::Approx(seq.joint.back()).epsilon(1e-6));

  const auto plan3 = build_stage_plan(cfg, 0.15, 3);
  const auto odd =
      sir_coverage_mode(cfg, plan3, TransmissionMode::HalfDuplexParallel, {1.0});
  const auto even = sir_coverage_mode(cfg, plan3, TransmissionMode::HalfDuplexParallel,
                                      {1.0}, HalfDuplexPhase::Even);
  CHECK(odd.per_stage[1] == 1.0);   // stage 2 inactive in the odd phase
  CHECK(even.per_stage[0] == 1.0);  // stage 1 inactive in the even phase
  CHECK(even.per_stage[1] < 1.0);
}

TEST_CASE("coverage lies in [0,1] and is nonincreasing in T for every mode") {
  const auto cfg = table2();
  const auto plan = build_stage_plan(cfg, 0.12, 3);
  for (auto mode : {TransmissionMode::Sequential, TransmissionMode::FullDuplexParallel,
                    TransmissionMode::HalfDuplexParallel}) {
    double prev = 1.0;
    for (double t : log_grid(1e-3, 1e3, 20)) {
      const auto cov = sir_coverage_mode(cfg, plan, mode, {t});
      const double joint = cov.joint.back();
      CHECK(joint >= 0.0);
      CHECK(joint <= 1.0);
      CHECK(joint <= prev + 1e-12);
      prev = joint;
    }
  }
}

TEST_CASE("finite-cap mode coverage stays consistent with its transforms") {
  const auto cfg = table2(16.0);
  const auto plan = build_stage_plan(cfg, 0.1, 2);
  const auto p_th = thinning_probabilities(plan);
  const auto active = active_stages(TransmissionMode::FullDuplexParallel, 2);
  for (double t : {0.5, 2.0}) {
    const double direct = stage_sir_coverage(cfg, plan, 1, active, p_th,
                                             TransmissionMode::FullDuplexParallel, {t});
    CHECK(direct > 0.0);
    CHECK(direct < 1.0);
    const double seq = stage_sir_coverage(cfg, plan, 1, active, p_th,
                                          TransmissionMode::Sequential, {t});
    CHECK(direct <= seq + 1e-12);
  }
}
