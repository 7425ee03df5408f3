#include "m2m/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "m2m/quadrature.hpp"
#include "m2m/specfun.hpp"

namespace m2m::coverage {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Integration window in units of the exponential tail variable; the mass
// beyond is e^-46 ~ 1e-20 regardless of density, so no window expansion is
// ever needed.
constexpr double kTailWindow = 46.0;
constexpr double kExpUnderflow = 700.0;

double shape_factor(double x) {  // 1 - e^-x (1+x), mass of v e^-v on [0,x]
  if (x > kExpUnderflow) return 1.0;
  return 1.0 - std::exp(-x) * (1.0 + x);
}

// Unconditional tail expectation over the squared interferer-association
// distance V = R_z^2 ~ Exp(pi*lambda_dist):
//   integral_{r_c^2}^inf g(v) pi*lambda_dist e^{-pi*lambda_dist v} dv
// evaluated as e^{-x_d} * integral_0^W g((x_d+w)/(pi*lambda_dist)) e^{-w} dw.
template <typename G>
double rayleigh_tail_expect(double lambda_dist, double x_d, const G& g) {
  if (x_d > kExpUnderflow) return 0.0;
  const double pl = kPi * lambda_dist;
  const double scale = std::exp(-x_d);
  const auto f = [&](double w) { return g((x_d + w) / pl) * std::exp(-w); };
  return scale * quad::integrate(f, 0.0, kTailWindow, {1e-10, 1e-14, 20});
}

// Exponent of the intra-stage/single-tier interference transform. The
// interferer field has density lambda_eff; association distances follow the
// (possibly unthinned) lambda_dist Rayleigh law.
double intra_exponent(const NetworkConfig& cfg, double lambda_eff, double lambda_dist,
                      double s) {
  const double a = cfg.alpha;
  const double c0 = 2.0 * s / (a - 2.0);
  double term1 = cfg.p_bar_t * specfun::c_alpha(a, s * cfg.p_bar_t);
  if (cfg.infinite_p_t_max()) return -c0 * term1;
  const double rc = critical_distance(cfg).r_c;
  const double x_eff = kPi * lambda_eff * rc * rc;
  const double x_d = kPi * lambda_dist * rc * rc;
  term1 *= shape_factor(x_eff);
  const double tail = rayleigh_tail_expect(lambda_dist, x_d, [&](double v) {
    const double att = std::pow(v, -a / 2.0);  // R_z^-alpha with v = R_z^2
    return v * att * specfun::c_alpha(a, s * cfg.p_t_max * att);
  });
  const double term2 = kPi * lambda_eff * cfg.p_t_max * tail;
  return -c0 * (term1 + term2);
}

// Exponent of one inter-stage factor (stage l co-active with the victim's).
double inter_exponent(const NetworkConfig& cfg, double lambda_eff, double lambda_dist,
                      double s) {
  const double a = cfg.alpha;
  const double base = specfun::b_alpha(a, s * cfg.p_bar_t) +
                      2.0 * s * cfg.p_bar_t / (a - 2.0) *
                          specfun::c_alpha(a, s * cfg.p_bar_t);
  if (cfg.infinite_p_t_max()) return -base;
  const double rc = critical_distance(cfg).r_c;
  const double x_eff = kPi * lambda_eff * rc * rc;
  const double x_d = kPi * lambda_dist * rc * rc;
  const double tail = rayleigh_tail_expect(lambda_dist, x_d, [&](double v) {
    const double att = std::pow(v, -a / 2.0);
    const double q = s * cfg.p_t_max * att;
    return v * (specfun::b_alpha(a, q) + 2.0 * q / (a - 2.0) * specfun::c_alpha(a, q));
  });
  return -(shape_factor(x_eff) * base + kPi * lambda_eff * tail);
}

// P(T) composition of Eq.-16 form: p * L(T/PbarT) + tail integral over the
// truncated serving-distance law, with L any transform of the total
// interference seen by the victim.
template <typename LFun>
double coverage_from_transform(const NetworkConfig& cfg, double lambda_serving,
                               double t, const LFun& lap) {
  if (cfg.infinite_p_t_max()) return lap(t / cfg.p_bar_t);
  const double rc = critical_distance(cfg).r_c;
  const double x_c = kPi * lambda_serving * rc * rc;
  const double p = x_c > kExpUnderflow ? 1.0 : 1.0 - std::exp(-x_c);
  double cov = p * lap(t / cfg.p_bar_t);
  cov += rayleigh_tail_expect(lambda_serving, x_c, [&](double v) {
    return lap(t * std::pow(v, cfg.alpha / 2.0) / cfg.p_t_max);
  });
  return cov;
}

void check_field_args(double lambda_a, double s) {
  if (!(lambda_a > 0.0)) throw std::domain_error("coverage: lambda_a must be > 0");
  if (!(s > 0.0)) throw std::domain_error("coverage: s must be > 0");
}

}  // namespace

LaplaceEval laplace_interference(const NetworkConfig& cfg, double lambda_a, double s) {
  check_field_args(lambda_a, s);
  return {s, std::exp(intra_exponent(cfg, lambda_a, lambda_a, s))};
}

LaplaceEval laplace_interference_lower_bound(const NetworkConfig& cfg, double lambda_a,
                                             double s) {
  check_field_args(lambda_a, s);
  const double a = cfg.alpha;
  double term1 = cfg.p_bar_t * specfun::c_alpha(a, s * cfg.p_bar_t);
  double term2 = 0.0;
  if (!cfg.infinite_p_t_max()) {
    const double rc = critical_distance(cfg).r_c;
    const double x_c = kPi * lambda_a * rc * rc;
    term1 *= shape_factor(x_c);
    // C_alpha < 1 bound of the conditional expectation; the proof's tail
    // integral equals (pi lambda_a)^(alpha/2-1) Gamma(2-alpha/2, x_c).
    if (x_c < kExpUnderflow)
      term2 = cfg.p_t_max * std::pow(kPi * lambda_a, a / 2.0) *
              specfun::gamma_upper(2.0 - a / 2.0, x_c);
  }
  return {s, std::exp(-2.0 * s / (a - 2.0) * (term1 + term2))};
}

double sir_coverage_single(const NetworkConfig& cfg, double lambda_a, SirThreshold t) {
  t.validate();
  if (!(lambda_a > 0.0)) throw std::domain_error("coverage: lambda_a must be > 0");
  return coverage_from_transform(cfg, lambda_a, t.t, [&](double s) {
    return std::exp(intra_exponent(cfg, lambda_a, lambda_a, s));
  });
}

std::vector<double> thinning_probabilities(const StagePlan& plan) {
  std::vector<double> out(plan.k_total);
  for (int k = 1; k <= plan.k_total; ++k) {
    const double mu = plan.mean_na_at(k);
    out[k - 1] = 1.0 - std::pow(3.5 / (3.5 + mu), 3.5);
  }
  return out;
}

LaplaceEval laplace_intra_stage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                                const std::vector<double>& p_th, double s) {
  if (k < 1 || k > plan.k_total) throw std::out_of_range("laplace_intra_stage: stage");
  if (!(s > 0.0)) throw std::domain_error("laplace_intra_stage: s must be > 0");
  const double la = plan.lambda_a_at(k);
  const double eff = p_th.at(k - 1) * la;
  if (eff == 0.0) return {s, 1.0};
  return {s, std::exp(intra_exponent(cfg, eff, la, s))};
}

LaplaceEval laplace_inter_stage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                                const std::vector<int>& active_set,
                                const std::vector<double>& p_th, double s) {
  if (!(s > 0.0)) throw std::domain_error("laplace_inter_stage: s must be > 0");
  double expo = 0.0;
  for (int l : active_set) {
    if (l == k) continue;
    if (l < 1 || l > plan.k_total) throw std::out_of_range("laplace_inter_stage: stage");
    const double la = plan.lambda_a_at(l);
    const double eff = p_th.at(l - 1) * la;
    if (eff == 0.0) continue;
    expo += inter_exponent(cfg, eff, la, s);
  }
  return {s, std::exp(expo)};
}

std::vector<int> active_stages(TransmissionMode mode, int k_total, HalfDuplexPhase phase) {
  std::vector<int> out;
  if (mode == TransmissionMode::HalfDuplexParallel) {
    const int start = phase == HalfDuplexPhase::Odd ? 1 : 2;
    for (int k = start; k <= k_total; k += 2) out.push_back(k);
  } else {
    for (int k = 1; k <= k_total; ++k) out.push_back(k);
  }
  return out;
}

double stage_sir_coverage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                          const std::vector<int>& active_set,
                          const std::vector<double>& p_th, TransmissionMode mode,
                          SirThreshold t) {
  t.validate();
  if (mode == TransmissionMode::Sequential)
    return sir_coverage_single(cfg, plan.lambda_a_at(k), t);
  const auto lap = [&](double s) {
    return laplace_intra_stage(cfg, plan, k, p_th, s).value *
           laplace_inter_stage(cfg, plan, k, active_set, p_th, s).value;
  };
  return coverage_from_transform(cfg, plan.lambda_a_at(k), t.t, lap);
}

StageCoverage sir_coverage_mode(const NetworkConfig& cfg, const StagePlan& plan,
                                TransmissionMode mode, SirThreshold t,
                                HalfDuplexPhase phase) {
  t.validate();
  const auto active = active_stages(mode, plan.k_total, phase);
  const auto p_th = thinning_probabilities(plan);
  StageCoverage out;
  out.per_stage.assign(plan.k_total, 1.0);
  for (int k : active)
    out.per_stage[k - 1] = stage_sir_coverage(cfg, plan, k, active, p_th, mode, t);
  out.joint.resize(plan.k_total);
  double running = 1.0;
  for (int k = 1; k <= plan.k_total; ++k) {
    running *= out.per_stage[k - 1];
    out.joint[k - 1] = running;
  }
  return out;
}

}  // namespace m2m::coverage
