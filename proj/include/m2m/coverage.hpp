#pragma once

#include <vector>

#include "m2m/model.hpp"

namespace m2m::coverage {

struct SirThreshold {
  double t = 1.0;
  void validate() const {
    if (!(t > 0.0)) throw std::invalid_argument("SirThreshold: t must be > 0");
  }
};

struct LaplaceEval {
  double s = 0.0;
  double value = 1.0;
};

/// Per-stage coverage P_k(T) and the running joint products P_cov(k).
/// Stages that are inactive for the evaluated mode carry per-stage 1.
struct StageCoverage {
  std::vector<double> per_stage;
  std::vector<double> joint;
};

enum class HalfDuplexPhase { Odd, Even };

/// Laplace transform of the uplink interference under truncated power
/// control (single-tier field of density lambda_a).
LaplaceEval laplace_interference(const NetworkConfig& cfg, double lambda_a, double s);

/// Closed-form lower bound on the transform obtained from C_alpha < 1.
LaplaceEval laplace_interference_lower_bound(const NetworkConfig& cfg, double lambda_a,
                                             double s);

/// Single-stage uplink SIR coverage with truncated power control; equals
/// exp(-2 T C_alpha(T)/(alpha-2)) in the unbounded-power limit.
double sir_coverage_single(const NetworkConfig& cfg, double lambda_a, SirThreshold t);

/// p_th(k) = 1 - 3.5^3.5 (3.5 + E[N_a(k)])^-3.5, per stage.
std::vector<double> thinning_probabilities(const StagePlan& plan);

/// Intra-stage interference transform at stage k, with the interferer field
/// thinned to p_th(k) * lambda_a(k).
LaplaceEval laplace_intra_stage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                                const std::vector<double>& p_th, double s);

/// Total inter-stage interference transform from the given co-active stages
/// (stage k itself is excluded if present).
LaplaceEval laplace_inter_stage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                                const std::vector<int>& active_set,
                                const std::vector<double>& p_th, double s);

/// Mode-level SIR coverage. Sequential composes single-stage coverage,
/// the parallel modes add inter-stage interference over their active sets.
StageCoverage sir_coverage_mode(const NetworkConfig& cfg, const StagePlan& plan,
                                TransmissionMode mode, SirThreshold t,
                                HalfDuplexPhase phase = HalfDuplexPhase::Odd);

/// Active stage list for a mode (all stages, or the odd/even subset).
std::vector<int> active_stages(TransmissionMode mode, int k_total,
                               HalfDuplexPhase phase = HalfDuplexPhase::Odd);

/// Per-stage SIR coverage at stage k under the given mode and active set;
/// building block shared with the rate module.
double stage_sir_coverage(const NetworkConfig& cfg, const StagePlan& plan, int k,
                          const std::vector<int>& active_set,
                          const std::vector<double>& p_th, TransmissionMode mode,
                          SirThreshold t);

}  // namespace m2m::coverage
