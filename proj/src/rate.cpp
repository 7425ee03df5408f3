#include "m2m/rate.hpp"

#include <cmath>
#include <stdexcept>

#include "m2m/quadrature.hpp"

namespace m2m::rate {

namespace {

// Per-stage SIR threshold multiplier on rho: K-fold time sharing for the
// sequential protocol, threshold doubling for half-duplex.
double mode_rho_scale(TransmissionMode mode, int k_total) {
  switch (mode) {
    case TransmissionMode::Sequential: return static_cast<double>(k_total);
    case TransmissionMode::FullDuplexParallel: return 1.0;
    case TransmissionMode::HalfDuplexParallel: return 2.0;
  }
  return 1.0;
}

// P(R_mode > rho) factored per active stage; shared by rate coverage and the
// duration integrals.
std::vector<double> rate_coverage_factors_impl(const NetworkConfig& cfg,
                                               const StagePlan& plan,
                                               TransmissionMode mode, double rho,
                                               int l_max) {
  const auto active = coverage::active_stages(mode, plan.k_total);
  const auto p_th = coverage::thinning_probabilities(plan);
  const double scale = mode_rho_scale(mode, plan.k_total);
  std::vector<double> factors(static_cast<std::size_t>(plan.k_total), 1.0);
  for (int k : active) {
    const LoadPmf pmf = load_pmf(plan.lambda_u_at(k), plan.lambda_a_at(k), l_max, 1.0);
    double sum = pmf.probs[0];  // l = 0: threshold 2^0 - 1 = 0 is met surely
    for (int l = 1; l <= l_max; ++l) {
      if (pmf.probs[l] == 0.0) continue;
      const double thr = std::exp2(scale * rho * l / cfg.w) - 1.0;
      if (thr <= 0.0) {
        sum += pmf.probs[l];
        continue;
      }
      if (!(thr < 1e12)) continue;  // coverage is numerically zero that far out
      const double cov =
          coverage::stage_sir_coverage(cfg, plan, k, active, p_th, mode, {thr});
      sum += cov * pmf.probs[l];
    }
    factors[static_cast<std::size_t>(k - 1)] = sum;
  }
  return factors;
}

double rate_coverage_impl(const NetworkConfig& cfg, const StagePlan& plan,
                          TransmissionMode mode, double rho, int l_max) {
  double product = 1.0;
  for (double f : rate_coverage_factors_impl(cfg, plan, mode, rho, l_max))
    product *= f;
  return product;
}

}  // namespace

LoadPmf load_pmf(double lambda_u, double lambda_a, int l_max, double max_tail_mass) {
  if (!(lambda_a > 0.0)) throw std::domain_error("load_pmf: lambda_a must be > 0");
  if (l_max < 1) throw std::invalid_argument("load_pmf: l_max must be >= 1");
  const double mu = lambda_u / lambda_a;
  LoadPmf out;
  out.mean_na = mu;
  out.l_max = l_max;
  out.probs.resize(l_max + 1);
  // probs[0] = 3.5^3.5 (3.5+mu)^-3.5, then a stable ratio recurrence.
  out.probs[0] = std::exp(3.5 * (std::log(3.5) - std::log(3.5 + mu)));
  const double r = mu / (3.5 + mu);
  double total = out.probs[0];
  for (int l = 0; l < l_max; ++l) {
    out.probs[l + 1] = out.probs[l] * (3.5 + l) / (l + 1.0) * r;
    total += out.probs[l + 1];
  }
  out.tail_mass = std::max(0.0, 1.0 - total);
  if (out.tail_mass > max_tail_mass)
    throw TruncationError("load_pmf: truncated tail mass " +
                          std::to_string(out.tail_mass) +
                          " exceeds bound; increase l_max");
  return out;
}

double load_pgf(double mu, double z) {
  if (!(z <= 1.0)) throw std::domain_error("load_pgf: z must be <= 1");
  return std::exp(3.5 * (std::log(3.5) - std::log(3.5 + (1.0 - z) * mu)));
}

double rate_coverage(const NetworkConfig& cfg, const StagePlan& plan,
                     TransmissionMode mode, RateThreshold rho, int l_max) {
  rho.validate();
  if (l_max < 1) throw std::invalid_argument("rate_coverage: l_max must be >= 1");
  return rate_coverage_impl(cfg, plan, mode, rho.rho, l_max);
}

std::vector<double> rate_coverage_stage_factors(const NetworkConfig& cfg,
                                                const StagePlan& plan,
                                                TransmissionMode mode,
                                                RateThreshold rho, int l_max) {
  rho.validate();
  if (l_max < 1) throw std::invalid_argument("rate_coverage: l_max must be >= 1");
  return rate_coverage_factors_impl(cfg, plan, mode, rho.rho, l_max);
}

DelayEstimate expected_conditional_delay(const NetworkConfig& cfg, const StagePlan& plan,
                                         TransmissionMode mode, RateThreshold rho,
                                         int l_max, bool normalized) {
  rho.validate();
  const double M = cfg.m_payload;
  const int K = plan.k_total;
  const double t_hi = 1.0 / rho.rho;
  const quad::Options opt{1e-8, 1e-12, 16};

  // Direct-transmission reference: the K = 1 plan of the same configuration,
  // for which all modes coincide. Its load mu = lambda/lambda_bs needs a far
  // larger truncation than the per-stage sums.
  const StagePlan direct =
      K == 1 ? plan : build_stage_plan(cfg, plan.gamma > 0.0 ? plan.gamma : 0.25, 1);
  const int direct_l_max =
      std::max(l_max, static_cast<int>(4.0 * direct.mean_na_at(1)) + 8);
  const auto direct_tail = [&](double t) {
    return 1.0 - rate_coverage_impl(cfg, direct, TransmissionMode::Sequential, 1.0 / t,
                                    direct_l_max);
  };

  const int mode_l_max = K == 1 ? direct_l_max : l_max;
  const auto mode_tail = [&](double t) {
    if (K == 1) return direct_tail(t);
    return 1.0 - rate_coverage_impl(cfg, plan, mode, 1.0 / t, l_max);
  };

  double duration = M * K * quad::integrate(mode_tail, 0.0, t_hi, opt);
  double inv_rate = quad::integrate(direct_tail, 0.0, t_hi, opt);

  if (normalized) {
    const double p_mode =
        K == 1 ? rate_coverage_impl(cfg, direct, TransmissionMode::Sequential, rho.rho,
                                    direct_l_max)
               : rate_coverage_impl(cfg, plan, mode, rho.rho, mode_l_max);
    const double p_direct =
        rate_coverage_impl(cfg, direct, TransmissionMode::Sequential, rho.rho,
                           direct_l_max);
    if (p_mode <= 0.0 || p_direct <= 0.0)
      throw std::runtime_error("expected_conditional_delay: conditioning event has zero mass");
    duration = (duration - M * K * t_hi * (1.0 - p_mode)) / p_mode;
    inv_rate = (inv_rate - t_hi * (1.0 - p_direct)) / p_direct;
  }

  DelayEstimate out;
  out.expected_duration = duration;
  // t(R,1) - t(R,1) vanishes by construction at K = 1; the shared integrand
  // above makes that exact.
  out.expected_delay = duration - M * inv_rate;
  return out;
}

}  // namespace m2m::rate
