#pragma once

#include <functional>
#include <vector>

#include "m2m/model.hpp"

namespace m2m::energy {

/// Joint SIR coverage factors entering the staged energy sum. Entry k-1 is
/// used as P_cov(k-1) for stage k, with the P_cov(0)=1 convention; callers
/// normally set the first entry to 1.
struct CoverageVector {
  std::vector<double> p_cov;

  static CoverageVector ones(int k_total) {
    return {std::vector<double>(static_cast<size_t>(k_total), 1.0)};
  }
  void validate(int k_total) const;
};

struct EnergyBreakdown {
  std::vector<double> per_stage;  // energy density per stage, mW per km^2 in t_tx(1) units
  double total = 0.0;
  bool coverage_scaled = false;   // true when P_cov factors other than 1 were applied
};

/// Mean total uplink PA power in the Voronoi cell of a typical aggregator.
/// Reduces to the unbounded-power closed form when p_t_max is infinite.
double mean_uplink_power(const NetworkConfig& cfg, double lambda_u, double lambda_a);

/// Mean total received power at a typical aggregator.
double mean_received_power(const NetworkConfig& cfg, double lambda_u, double lambda_a);

/// E[N_a] = lambda_u / lambda_a.
double mean_na(double lambda_u, double lambda_a);

/// Mean number of devices of the typical cell within distance d.
double mean_na_within(double lambda_u, double lambda_a, double d);

/// E[N_a^2] = mu + (4.5/3.5) mu^2 with mu = lambda_u/lambda_a.
double second_moment_na(double lambda_u, double lambda_a);

/// Total energy density contributed by stage k (1-based) at unit coverage,
/// c_k(gamma).
double stage_cost(const NetworkConfig& cfg, const StagePlan& plan, int k);

/// E = sum_k P_cov(k-1) c_k(gamma); equals the upper bound E_U with all-ones
/// coverage.
EnergyBreakdown total_energy_density(const NetworkConfig& cfg, const StagePlan& plan,
                                     const CoverageVector& cov);

/// Maps a candidate plan to the coverage factors used in the objective.
using CoverageRule = std::function<CoverageVector(const StagePlan&)>;

struct GammaOptimum {
  double gamma_opt = 0.0;        // NaN for k_total == 1 (objective is gamma-free)
  EnergyBreakdown energy;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool boundary_minimum = false; // minimizer within tolerance of a bracket end
  // Prop.-3 precondition diagnostics: c_K nondecreasing on (bracket_lo, gamma_opt],
  // with increasing_until the end of the nondecreasing prefix of c_K.
  bool precondition_holds = false;
  double increasing_until = 0.0;
};

/// Minimizes the staged energy density over gamma by dense grid search plus
/// golden-section refinement.
GammaOptimum optimize_gamma(const NetworkConfig& cfg, int k_total,
                            const CoverageRule& cov_rule);

}  // namespace m2m::energy
