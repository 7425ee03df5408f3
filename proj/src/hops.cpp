#include "m2m/hops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "m2m/rate.hpp"
#include "m2m/specfun.hpp"

namespace m2m::hops {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::domain_error("hops: epsilon must lie in (0,1)");
}

void check_power_pair(const NetworkConfig& cfg, double p_r_min) {
  if (!(p_r_min > 0.0)) throw std::domain_error("hops: p_r_min must be > 0");
  if (!cfg.infinite_p_t_max() && !(cfg.p_t_max > p_r_min))
    throw std::domain_error("hops: need P_Tmax > P_Rmin");
}

}  // namespace

std::optional<int> k_upper_bound(const std::vector<double>& per_stage_coverage,
                                 double epsilon) {
  check_epsilon(epsilon);
  if (per_stage_coverage.empty())
    throw std::invalid_argument("k_upper_bound: empty coverage list");
  double best = 0.0;
  for (double p : per_stage_coverage) {
    if (!(p > 0.0 && p <= 1.0))
      throw std::domain_error("k_upper_bound: coverage values must lie in (0,1]");
    best = std::max(best, p);
  }
  if (best >= 1.0) return std::nullopt;  // unbounded
  const double v = std::log(1.0 / (1.0 - epsilon)) / (-std::log(best));
  return static_cast<int>(std::ceil(v));
}

int k_upper_bound_limit(const NetworkConfig& cfg, double t, double epsilon) {
  check_epsilon(epsilon);
  if (!(t > 0.0)) throw std::domain_error("k_upper_bound_limit: t must be > 0");
  const double denom = 2.0 * t * specfun::c_alpha(cfg.alpha, t) / (cfg.alpha - 2.0);
  const double v = std::log(1.0 / (1.0 - epsilon)) / denom;
  return static_cast<int>(std::ceil(v));
}

int k_lower_bound(const NetworkConfig& cfg, double lambda_u, double lambda_a,
                  double p_r_min, int l_max) {
  check_power_pair(cfg, p_r_min);
  if (!(lambda_a > 0.0) || !(lambda_u > 0.0))
    throw std::domain_error("k_lower_bound: densities must be > 0");
  if (cfg.infinite_p_t_max()) return 1;  // any range is reachable
  const double mean_len = lambda_u / (2.0 * std::pow(lambda_a, 1.5));
  const rate::LoadPmf pmf = rate::load_pmf(lambda_u, lambda_a, l_max);
  const double p_th = 1.0 - pmf.probs[0];
  double inv_na = 0.0;
  for (int l = 1; l <= pmf.l_max; ++l) inv_na += pmf.probs[l] / l;
  inv_na /= p_th;  // E[1/N_a | N_a >= 1]
  const double v =
      mean_len * inv_na * std::pow(p_r_min / cfg.p_t_max, 1.0 / cfg.alpha);
  return std::max(1, static_cast<int>(std::ceil(v)));
}

int k_lower_fixed_point(const NetworkConfig& cfg, double gamma, double p_r_min) {
  check_power_pair(cfg, p_r_min);
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::domain_error("k_lower_fixed_point: gamma must lie in (0, 0.5)");
  if (cfg.infinite_p_t_max()) return 1;
  const double mean_na = (1.0 - gamma) / gamma;
  const double ratio = std::pow(p_r_min / cfg.p_t_max, 1.0 / cfg.alpha);
  constexpr int kScanCap = 64;
  for (int k = 1; k <= kScanCap; ++k) {
    const double rhs = (1.0 / mean_na) * (1.0 - gamma) /
                       (2.0 * std::sqrt(cfg.lambda) * std::pow(gamma, k / 2.0 + 1.0)) *
                       ratio;
    if (k >= std::ceil(rhs)) return k;
  }
  throw std::runtime_error("k_lower_fixed_point: no K <= 64 satisfies the bound");
}

}  // namespace m2m::hops
