#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "m2m/model.hpp"

namespace m2m::mc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Thinning masses for the aggregator tiers. `probs[j]` is the probability a
/// device joins tier j+1; remaining mass stays in the transmitter-only tier 0.
/// With `last_tier_is_bs`, the final receiving tier is an independent BS PPP
/// instead of a device tier.
struct TierSpec {
  std::vector<double> probs;
  bool last_tier_is_bs = true;

  static TierSpec from_plan(const StagePlan& plan);
  /// Pure gamma-thinned hierarchy of `levels` aggregator tiers (no BS tier);
  /// used by the stage-correlation experiment.
  static TierSpec pure_thinning(double gamma, int levels);

  int stage_count() const {
    return static_cast<int>(probs.size()) + (last_tier_is_bs ? 1 : 0);
  }
};

/// Association structure of one aggregation stage.
struct StageGeometry {
  std::vector<int> tx_device;            // device index per transmitter
  std::vector<double> tx_x, tx_y;        // transmitter coordinates (SoA for kernels)
  std::vector<double> tx_power;          // min(P_Tmax, PbarT * d^alpha)
  std::vector<double> tx_dist;           // association distance
  std::vector<int> rx_of_tx;             // receiver index per transmitter
  std::vector<Point> rx_pos;
  std::vector<int> rx_device;            // device index per receiver (-1 for BS)
  std::vector<std::vector<int>> members; // per receiver, transmitter indices (into tx_*)
  std::vector<uint8_t> rx_interior;
  double guard = 0.0;
  double interior_half_width = 0.0;
  double interior_area = 0.0;
  long interior_rx_count = 0;
};

struct Deployment {
  double region_half_width = 0.0;
  uint64_t seed = 0;
  std::vector<Point> devices;
  std::vector<int> tier;     // 0 = transmitter-only, j >= 1 = tier-j aggregator
  std::vector<Point> bs;
  std::vector<StageGeometry> stages;
  std::vector<std::string> warnings;
};

/// Samples one realization: Poisson device count, multinomial tier
/// assignment, independent BS PPP, nearest-aggregator association per stage,
/// truncated-power-control transmit powers. Deterministic under fixed seed.
Deployment sample_deployment(const NetworkConfig& cfg, const TierSpec& tiers,
                             double half_width, uint64_t seed,
                             double guard_scale = 1.0);

}  // namespace m2m::mc
