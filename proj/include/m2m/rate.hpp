#pragma once

#include <vector>

#include "m2m/coverage.hpp"
#include "m2m/model.hpp"

namespace m2m::rate {

/// Load-PMF truncation left more tail mass than the caller allowed.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Truncated PMF of the per-aggregator load N_a under the 3.5 Voronoi-area
/// model. `tail_mass` is the mass beyond l_max implied by normalization.
struct LoadPmf {
  std::vector<double> probs;  // index l = 0..l_max
  double mean_na = 0.0;
  int l_max = 0;
  double tail_mass = 0.0;
};

/// Builds the load PMF for mu = lambda_u/lambda_a. Throws when the truncated
/// tail mass exceeds max_tail_mass (pass 1.0 to accept any truncation, as the
/// fixed-L rate sums do).
LoadPmf load_pmf(double lambda_u, double lambda_a, int l_max,
                 double max_tail_mass = 1e-4);

/// PGF of the load, G(z) = 3.5^3.5 (3.5 + (1-z) mu)^-3.5 for z <= 1.
double load_pgf(double mu, double z);

struct RateThreshold {
  double rho = 1.0;  // bits per second
  void validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("RateThreshold: rho must be > 0");
  }
};

/// P(R_mode > rho) with loads truncated at l_max. Sequential scales the
/// per-stage SIR threshold by K (time sharing), half-duplex by 2.
double rate_coverage(const NetworkConfig& cfg, const StagePlan& plan,
                     TransmissionMode mode, RateThreshold rho, int l_max = 20);

/// Per-stage factors of the rate-coverage product; inactive half-duplex
/// stages carry 1. rate_coverage is their product.
std::vector<double> rate_coverage_stage_factors(const NetworkConfig& cfg,
                                                const StagePlan& plan,
                                                TransmissionMode mode,
                                                RateThreshold rho, int l_max = 20);

struct DelayEstimate {
  double expected_duration = 0.0;  // conditional K-stage duration, seconds
  double expected_delay = 0.0;     // duration minus direct-transmission duration
};

/// Conditional transmission duration and delay at rate threshold rho.
/// `normalized=false` evaluates the printed (unnormalized) conditional
/// integrals; `normalized=true` divides by the conditioning probability and
/// removes the boundary mass, giving a true conditional mean.
DelayEstimate expected_conditional_delay(const NetworkConfig& cfg, const StagePlan& plan,
                                         TransmissionMode mode, RateThreshold rho,
                                         int l_max = 20, bool normalized = false);

}  // namespace m2m::rate
