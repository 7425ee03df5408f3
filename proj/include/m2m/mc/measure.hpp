#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "m2m/mc/deployment.hpp"
#include "m2m/mc/rng.hpp"
#include "m2m/model.hpp"

namespace m2m::mc {

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;  // 1.96 * stderr
  long n_samples = 0;
};

/// Cluster estimate from per-deployment means: the CI treats deployments as
/// the independent replicates, n_samples reports the pooled sample count.
McEstimate pool_means(const std::vector<double>& per_deployment, long pooled_samples);

/// Per-deployment (sum, count) accumulator for pooled ratios.
struct SumCount {
  double sum = 0.0;
  long count = 0;
};
McEstimate pool_ratios(const std::vector<SumCount>& parts);

/// Runs fn(seed, index) for index = 0..n-1 across threads; results are
/// collected by index, so the aggregate is independent of scheduling.
template <typename T, typename Fn>
std::vector<T> run_deployments(int n, uint64_t root_seed, Fn fn, int n_threads = 0) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      out[static_cast<std::size_t>(i)] = fn(derive_seed(root_seed, i), i);
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return out;
}

/// Sum over interior cells of the per-cell PA power, one entry per cell.
SumCount measure_pa_power(const Deployment& dep, const NetworkConfig& cfg, int stage);

struct LoadMoments {
  SumCount mean;                // sum of loads / cells
  SumCount second;              // sum of squared loads / cells
  SumCount empty;               // empty cells / cells
  std::vector<long> histogram;  // per-load cell counts, index = load
};
LoadMoments measure_load_moments(const Deployment& dep, int stage);

/// Empirical Laplace functional of the stage-k interference at interior
/// aggregators: one active transmitter per nonempty cell, fresh fading.
std::vector<SumCount> measure_laplace_functional(const Deployment& dep,
                                                 const NetworkConfig& cfg, int stage,
                                                 const std::vector<double>& s_values,
                                                 Xoshiro256pp& rng);

struct ModeSimOptions {
  TransmissionMode mode = TransmissionMode::Sequential;
  double t_sir = 1.0;              // SIR success threshold (energy propagation)
  std::vector<double> rho_grid;    // rate-coverage thresholds, bits/s
  bool measure_energy = true;
};

struct ModeSimResult {
  std::vector<SumCount> stage_sir_success;  // per stage, interior victims
  std::vector<SumCount> rate_covered;       // per rho, interior full paths
  SumCount sir_joint;                       // all path stages above t_sir
  std::vector<double> stage_energy_density; // per stage, interior normalized
  double total_energy_density = 0.0;
};

/// TDMA slot simulation of one deployment under the given transmission mode:
/// every nonempty cell of every co-active stage carries one transmitter per
/// slot, fading is redrawn per link per slot, payloads propagate only
/// through successful receptions.
ModeSimResult simulate_mode(const Deployment& dep, const NetworkConfig& cfg,
                            const ModeSimOptions& opt, Xoshiro256pp& rng);

struct CorrelationRow {
  double gamma = 0.0;
  int stage = 0;      // correlation between loads of stage and stage+1
  double rho = 0.0;
  long n_pairs = 0;
};

/// Pearson correlation between consecutive-stage aggregator loads on a pure
/// gamma-thinned hierarchy (each stage-k aggregator paired with its serving
/// stage-(k+1) aggregator), pooled over deployments.
std::vector<CorrelationRow> measure_stage_correlation(
    const NetworkConfig& cfg, const std::vector<double>& gamma_grid, int levels,
    int n_deployments, double half_width, uint64_t root_seed, int n_threads = 0);

}  // namespace m2m::mc
