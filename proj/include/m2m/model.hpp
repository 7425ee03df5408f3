#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace m2m {

inline constexpr double kInfinitePower = std::numeric_limits<double>::infinity();

/// Plan construction failed because the last stage would have more BSs than
/// transmitters (lambda * gamma^(K-1) < lambda_bs).
struct DegeneratePlanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Physical-layer and density parameters. Units: densities per km^2,
/// powers in mW, distances in km, bandwidth in Hz, payload in bits.
struct NetworkConfig {
  double lambda = 1e3;       // device density
  double lambda_bs = 1.0;    // base-station density
  double alpha = 4.0;        // path loss exponent
  double p_bar_t = 1.0;      // target received power under channel inversion
  double p_t_max = kInfinitePower;  // maximum transmit power (may be infinite)
  double eta = 1.0;          // PA efficiency, in (0,1]
  double p_lo = 5.0;         // local-oscillator block power
  double p_rx = 200.0;       // receive block power
  double p_tx = 100.0;       // transmit block power
  double p_o = 0.0;          // receiver overhead power
  double w = 1e5;            // bandwidth, Hz
  double m_payload = 100.0;  // payload per device, bits
  double n0 = 0.0;           // noise PSD; carried but unused (interference limited)

  void validate() const;

  /// P_C = P_TX + P_RX + P_LO + P_O.
  double circuit_power() const { return p_tx + p_rx + p_lo + p_o; }
  bool infinite_p_t_max() const { return std::isinf(p_t_max); }
};

/// Critical distance r_c = (P_Tmax / P_bar_T)^(1/alpha); infinite when
/// the power constraint is absent.
struct CriticalDistance {
  double r_c = kInfinitePower;
  bool is_infinite() const { return std::isinf(r_c); }
};

CriticalDistance critical_distance(const NetworkConfig& cfg);

enum class TransmissionMode { Sequential, FullDuplexParallel, HalfDuplexParallel };

const char* to_string(TransmissionMode mode);
TransmissionMode transmission_mode_from_string(const std::string& name);

/// Per-stage derived quantities for a (gamma, K) choice. Stage indices are
/// 1-based in the accessors; the last stage always aggregates to the BS tier.
struct StagePlan {
  double gamma = 0.0;      // aggregator fraction, in (0, 0.5); unused when k_total == 1
  int k_total = 1;
  double gamma_bar = 0.0;  // sum_{k=1}^{K-1} gamma^k
  double gamma_last = 0.0; // effective last-stage fraction lambda_bs/(lambda gamma^{K-1} + lambda_bs)
  std::vector<double> lambda_u;  // transmitter density per stage
  std::vector<double> lambda_a;  // aggregator density per stage
  std::vector<double> mean_na;   // E[N_a(k)] = lambda_u(k)/lambda_a(k)
  std::vector<double> t_tx;      // normalized transmit time, t_tx(1) = 1

  double lambda_u_at(int k) const { return lambda_u.at(k - 1); }
  double lambda_a_at(int k) const { return lambda_a.at(k - 1); }
  double mean_na_at(int k) const { return mean_na.at(k - 1); }
  double t_tx_at(int k) const { return t_tx.at(k - 1); }
};

/// Builds the Table-III stage plan. Throws std::invalid_argument for gamma
/// outside (0, 0.5) and for degenerate plans with lambda*gamma^(K-1) < lambda_bs.
StagePlan build_stage_plan(const NetworkConfig& cfg, double gamma, int k_total);

/// Smallest gamma for which a K-stage plan is non-degenerate.
double min_feasible_gamma(const NetworkConfig& cfg, int k_total);

}  // namespace m2m
