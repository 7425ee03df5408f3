#include "m2m/energy.hpp"

#include <algorithm>
#include <cmath>

#include "m2m/specfun.hpp"

namespace m2m::energy {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kVoronoiShape = 4.5 / 3.5;  // second-moment factor of the 3.5 area model
}  // namespace

void CoverageVector::validate(int k_total) const {
  if (static_cast<int>(p_cov.size()) != k_total)
    throw std::invalid_argument("CoverageVector: need exactly K entries");
  for (double v : p_cov)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("CoverageVector: entries must lie in [0,1]");
}

double mean_uplink_power(const NetworkConfig& cfg, double lambda_u, double lambda_a) {
  if (!(lambda_a > 0.0)) throw std::domain_error("mean_uplink_power: lambda_a must be > 0");
  if (!(lambda_u >= 0.0)) throw std::domain_error("mean_uplink_power: lambda_u must be >= 0");
  if (lambda_u == 0.0) return 0.0;
  const double a2 = cfg.alpha / 2.0;
  const double lead = kPi * lambda_u * cfg.p_bar_t /
                      (cfg.eta * std::pow(kPi * lambda_a, 1.0 + a2));
  if (cfg.infinite_p_t_max()) return lead * std::tgamma(a2 + 1.0);
  const double rc = critical_distance(cfg).r_c;
  const double xc = lambda_a * kPi * rc * rc;
  double capped = 0.0;
  if (xc < 700.0)
    capped = lambda_u * cfg.p_t_max / (cfg.eta * lambda_a) * std::exp(-xc);
  return lead * specfun::gamma_lower(a2 + 1.0, xc) + capped;
}

double mean_received_power(const NetworkConfig& cfg, double lambda_u, double lambda_a) {
  if (!(lambda_a > 0.0)) throw std::domain_error("mean_received_power: lambda_a must be > 0");
  if (!(lambda_u >= 0.0)) throw std::domain_error("mean_received_power: lambda_u must be >= 0");
  if (lambda_u == 0.0) return 0.0;
  const double ratio = lambda_u / lambda_a;
  if (cfg.infinite_p_t_max()) return ratio * cfg.p_bar_t;
  const double rc = critical_distance(cfg).r_c;
  const double xc = kPi * lambda_a * rc * rc;
  const double inverted = ratio * (1.0 - std::exp(-xc)) * cfg.p_bar_t;
  const double a2 = cfg.alpha / 2.0;
  const double capped = kPi * lambda_u * std::pow(kPi * lambda_a, a2 - 1.0) *
                        cfg.p_t_max * specfun::gamma_upper(1.0 - a2, xc);
  return inverted + capped;
}

double mean_na(double lambda_u, double lambda_a) {
  if (!(lambda_a > 0.0)) throw std::domain_error("mean_na: lambda_a must be > 0");
  return lambda_u / lambda_a;
}

double mean_na_within(double lambda_u, double lambda_a, double d) {
  if (!(lambda_a > 0.0)) throw std::domain_error("mean_na_within: lambda_a must be > 0");
  if (!(d >= 0.0)) throw std::domain_error("mean_na_within: d must be >= 0");
  if (std::isinf(d)) return lambda_u / lambda_a;
  return lambda_u / lambda_a * (1.0 - std::exp(-lambda_a * kPi * d * d));
}

double second_moment_na(double lambda_u, double lambda_a) {
  const double mu = mean_na(lambda_u, lambda_a);
  return mu + kVoronoiShape * mu * mu;
}

double stage_cost(const NetworkConfig& cfg, const StagePlan& plan, int k) {
  if (k < 1 || k > plan.k_total) throw std::out_of_range("stage_cost: stage index");
  const double lu = plan.lambda_u_at(k);
  const double la = plan.lambda_a_at(k);
  const double pa = mean_uplink_power(cfg, lu, la);
  const double idle = (lu + kVoronoiShape * lu * lu / la) * cfg.p_lo;
  return plan.t_tx_at(k) * (lu * cfg.circuit_power() + la * pa + idle);
}

EnergyBreakdown total_energy_density(const NetworkConfig& cfg, const StagePlan& plan,
                                     const CoverageVector& cov) {
  cov.validate(plan.k_total);
  EnergyBreakdown out;
  out.per_stage.resize(plan.k_total);
  for (int k = 1; k <= plan.k_total; ++k) {
    const double pcov_prev = cov.p_cov[k - 1];
    out.per_stage[k - 1] = pcov_prev * stage_cost(cfg, plan, k);
    out.total += out.per_stage[k - 1];
    if (pcov_prev != 1.0) out.coverage_scaled = true;
  }
  return out;
}

namespace {

double golden_refine(const std::function<double(double)>& f, double a, double b,
                     double tol_x) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol_x) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

GammaOptimum optimize_gamma(const NetworkConfig& cfg, int k_total,
                            const CoverageRule& cov_rule) {
  if (k_total < 1) throw std::invalid_argument("optimize_gamma: k_total must be >= 1");
  GammaOptimum out;

  const auto objective = [&](double g) {
    const StagePlan plan = build_stage_plan(cfg, g, k_total);
    return total_energy_density(cfg, plan, cov_rule(plan)).total;
  };

  if (k_total == 1) {
    // Direct transmission: the objective does not depend on gamma.
    const StagePlan plan = build_stage_plan(cfg, 0.25, 1);
    out.gamma_opt = std::numeric_limits<double>::quiet_NaN();
    out.energy = total_energy_density(cfg, plan, cov_rule(plan));
    out.precondition_holds = false;  // c_K is constant in gamma, not increasing
    return out;
  }

  constexpr double kEdge = 1e-3;
  const double lo = std::max(kEdge, min_feasible_gamma(cfg, k_total) * (1.0 + 1e-12));
  const double hi = 0.5 - kEdge;
  if (!(lo < hi))
    throw std::invalid_argument("optimize_gamma: feasible gamma bracket is empty");
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  constexpr int kGrid = 512;
  const double llo = std::log(lo), lhi = std::log(hi);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> gs(kGrid), vals(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    gs[i] = std::exp(llo + (lhi - llo) * i / (kGrid - 1));
    vals[i] = objective(gs[i]);
    if (vals[i] < best_val) { best_val = vals[i]; best = i; }
  }
  const double a = gs[std::max(0, best - 1)];
  const double b = gs[std::min(kGrid - 1, best + 1)];
  const double g_opt = golden_refine(objective, a, b, 1e-5);
  out.gamma_opt = g_opt;
  const StagePlan plan = build_stage_plan(cfg, g_opt, k_total);
  out.energy = total_energy_density(cfg, plan, cov_rule(plan));
  out.boundary_minimum = (g_opt - lo < 1e-4) || (hi - g_opt < 1e-4);

  // Prop.-3 precondition: c_K(gamma) increasing in gamma. Report the end of
  // the nondecreasing prefix and whether the minimizer sits inside it.
  const auto last_cost = [&](double g) {
    return stage_cost(cfg, build_stage_plan(cfg, g, k_total), k_total);
  };
  double prev = last_cost(gs[0]);
  out.increasing_until = hi;
  for (int i = 1; i < kGrid; ++i) {
    const double cur = last_cost(gs[i]);
    if (cur < prev) { out.increasing_until = gs[i - 1]; break; }
    prev = cur;
  }
  out.precondition_holds = !out.boundary_minimum && g_opt <= out.increasing_until;
  return out;
}

}  // namespace m2m::energy
