#pragma once

#include <optional>
#include <vector>

#include "m2m/model.hpp"

namespace m2m::hops {

/// K_U from a list of per-stage coverage values and an outage budget epsilon.
/// Returns nullopt when the best per-stage coverage is 1 (unbounded K).
std::optional<int> k_upper_bound(const std::vector<double>& per_stage_coverage,
                                 double epsilon);

/// Closed-form K_U in the unbounded-power limit, where per-stage coverage is
/// exp(-2 T C_alpha(T) / (alpha-2)) independent of density.
int k_upper_bound_limit(const NetworkConfig& cfg, double t, double epsilon);

/// K_L = ceil( E[L] * E[1/N_a] * (P_Rmin/P_Tmax)^(1/alpha) ), clamped to >= 1.
/// E[L] = lambda_u / (2 lambda_a^(3/2)); E[1/N_a] is taken over N_a >= 1 from
/// the truncated load PMF. Infinite P_Tmax gives 1.
int k_lower_bound(const NetworkConfig& cfg, double lambda_u, double lambda_a,
                  double p_r_min, int l_max = 400);

/// Smallest K satisfying the self-referential lower bound
///   K >= ceil( (1/E[N_a]) (1-gamma) / (2 sqrt(lambda) gamma^(K/2+1))
///              * (P_Rmin/P_Tmax)^(1/alpha) ),
/// with E[N_a] = (1-gamma)/gamma. Scans K = 1..64 and throws when exhausted.
int k_lower_fixed_point(const NetworkConfig& cfg, double gamma, double p_r_min);

}  // namespace m2m::hops
