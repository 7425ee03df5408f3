#include "m2m/mc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "m2m/mc/kernels.hpp"

namespace m2m::mc {

namespace {

constexpr double kHugeSir = 1e300;

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace

McEstimate pool_means(const std::vector<double>& per_deployment, long pooled_samples) {
  McEstimate e;
  if (per_deployment.empty()) return e;
  e.mean = std::accumulate(per_deployment.begin(), per_deployment.end(), 0.0) /
           static_cast<double>(per_deployment.size());
  const double sd = sample_std(per_deployment, e.mean);
  e.half_width_95 = 1.96 * sd / std::sqrt(static_cast<double>(per_deployment.size()));
  e.n_samples = pooled_samples > 0 ? pooled_samples
                                   : static_cast<long>(per_deployment.size());
  return e;
}

McEstimate pool_ratios(const std::vector<SumCount>& parts) {
  double total = 0.0;
  long count = 0;
  std::vector<double> ratios;
  ratios.reserve(parts.size());
  for (const auto& p : parts) {
    total += p.sum;
    count += p.count;
    if (p.count > 0) ratios.push_back(p.sum / static_cast<double>(p.count));
  }
  McEstimate e = pool_means(ratios, count);
  if (count > 0) e.mean = total / static_cast<double>(count);
  return e;
}

SumCount measure_pa_power(const Deployment& dep, const NetworkConfig& cfg, int stage) {
  const StageGeometry& sg = dep.stages.at(static_cast<std::size_t>(stage - 1));
  SumCount out;
  for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
    if (!sg.rx_interior[r]) continue;
    double cell = 0.0;
    for (int m : sg.members[r]) cell += sg.tx_power[static_cast<std::size_t>(m)];
    out.sum += cell / cfg.eta;
    out.count += 1;
  }
  return out;
}

LoadMoments measure_load_moments(const Deployment& dep, int stage) {
  const StageGeometry& sg = dep.stages.at(static_cast<std::size_t>(stage - 1));
  LoadMoments out;
  for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
    if (!sg.rx_interior[r]) continue;
    const long n = static_cast<long>(sg.members[r].size());
    out.mean.sum += static_cast<double>(n);
    out.second.sum += static_cast<double>(n) * static_cast<double>(n);
    out.empty.sum += n == 0 ? 1.0 : 0.0;
    out.mean.count += 1;
    if (static_cast<std::size_t>(n) >= out.histogram.size())
      out.histogram.resize(static_cast<std::size_t>(n) + 1, 0);
    out.histogram[static_cast<std::size_t>(n)] += 1;
  }
  out.second.count = out.mean.count;
  out.empty.count = out.mean.count;
  return out;
}

namespace {

// Contiguous active-transmitter arrays for one slot, spanning the co-active
// stages; entry_of_cell locates each nonempty cell's entry for self-exclusion.
struct ActiveSet {
  std::vector<double> x, y, p;
  std::vector<int> stage_of;           // stage index per entry (1-based)
  std::vector<int> tx_of;              // per-entry transmitter index in its stage
  std::vector<std::size_t> stage_base; // offset of each stage's segment, by stage-1
};

struct StageSchedule {
  std::vector<int> nonempty_cells;            // receiver indices with members
  std::vector<std::size_t> cell_slot_of_rx;   // dense index per receiver
  std::vector<std::vector<int>> order;        // shuffled member order per nonempty cell
  std::vector<int> rank_of_tx;                // first-transmission slot per transmitter
  int max_load = 0;
};

StageSchedule make_schedule(const StageGeometry& sg, Xoshiro256pp& rng) {
  StageSchedule sch;
  sch.cell_slot_of_rx.assign(sg.rx_pos.size(), SIZE_MAX);
  sch.rank_of_tx.assign(sg.tx_device.size(), -1);
  for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
    if (sg.members[r].empty()) continue;
    sch.cell_slot_of_rx[r] = sch.nonempty_cells.size();
    sch.nonempty_cells.push_back(static_cast<int>(r));
    std::vector<int> order = sg.members[r];
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);
    for (std::size_t i = 0; i < order.size(); ++i)
      sch.rank_of_tx[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    sch.max_load = std::max(sch.max_load, static_cast<int>(order.size()));
    sch.order.push_back(std::move(order));
  }
  return sch;
}

}  // namespace

std::vector<SumCount> measure_laplace_functional(const Deployment& dep,
                                                 const NetworkConfig& cfg, int stage,
                                                 const std::vector<double>& s_values,
                                                 Xoshiro256pp& rng) {
  const StageGeometry& sg = dep.stages.at(static_cast<std::size_t>(stage - 1));
  std::vector<SumCount> out(s_values.size());
  // One active transmitter per nonempty cell, uniformly chosen.
  std::vector<int> active;
  std::vector<double> ax, ay, ap;
  std::vector<std::size_t> cell_entry(sg.rx_pos.size(), SIZE_MAX);
  for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
    const auto& mem = sg.members[r];
    if (mem.empty()) continue;
    const int t = mem[rng() % mem.size()];
    cell_entry[r] = active.size();
    active.push_back(t);
    ax.push_back(sg.tx_x[static_cast<std::size_t>(t)]);
    ay.push_back(sg.tx_y[static_cast<std::size_t>(t)]);
    ap.push_back(sg.tx_power[static_cast<std::size_t>(t)]);
  }
  std::vector<double> w(active.size());
  for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
    if (!sg.rx_interior[r]) continue;
    pair_weights(ax.data(), ay.data(), ap.data(), active.size(), sg.rx_pos[r].x,
                 sg.rx_pos[r].y, cfg.alpha, w.data());
    if (cell_entry[r] != SIZE_MAX) w[cell_entry[r]] = 0.0;
    double interference = 0.0;
    for (double wi : w) interference += rng.exponential() * wi;
    for (std::size_t i = 0; i < s_values.size(); ++i) {
      out[i].sum += std::exp(-s_values[i] * interference);
      out[i].count += 1;
    }
  }
  return out;
}

ModeSimResult simulate_mode(const Deployment& dep, const NetworkConfig& cfg,
                            const ModeSimOptions& opt, Xoshiro256pp& rng) {
  const int K = static_cast<int>(dep.stages.size());
  ModeSimResult res;
  res.stage_sir_success.resize(static_cast<std::size_t>(K));
  res.rate_covered.resize(opt.rho_grid.size());
  res.stage_energy_density.assign(static_cast<std::size_t>(K), 0.0);

  // Per-stage TDMA schedules (uniformly random member order per cell).
  std::vector<StageSchedule> sched;
  sched.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k)
    sched.push_back(make_schedule(dep.stages[static_cast<std::size_t>(k - 1)], rng));

  // Active-stage phases.
  std::vector<std::vector<int>> phases;
  switch (opt.mode) {
    case TransmissionMode::Sequential:
      for (int k = 1; k <= K; ++k) phases.push_back({k});
      break;
    case TransmissionMode::FullDuplexParallel: {
      std::vector<int> all(static_cast<std::size_t>(K));
      std::iota(all.begin(), all.end(), 1);
      phases.push_back(std::move(all));
      break;
    }
    case TransmissionMode::HalfDuplexParallel: {
      std::vector<int> odd, even;
      for (int k = 1; k <= K; k += 2) odd.push_back(k);
      for (int k = 2; k <= K; k += 2) even.push_back(k);
      phases.push_back(std::move(odd));
      if (!even.empty()) phases.push_back(std::move(even));
      break;
    }
  }

  // Realized SIR per transmitter per stage, measured in its first slot.
  std::vector<std::vector<double>> sir(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k)
    sir[static_cast<std::size_t>(k - 1)].assign(
        dep.stages[static_cast<std::size_t>(k - 1)].tx_device.size(), 0.0);

  ActiveSet act;
  std::vector<double> wbuf;
  for (const auto& stages_on : phases) {
    int n_slots = 0;
    std::size_t n_cells = 0;
    for (int k : stages_on) {
      n_slots = std::max(n_slots, sched[static_cast<std::size_t>(k - 1)].max_load);
      n_cells += sched[static_cast<std::size_t>(k - 1)].nonempty_cells.size();
    }
    act.x.resize(n_cells);
    act.y.resize(n_cells);
    act.p.resize(n_cells);
    act.stage_of.resize(n_cells);
    act.tx_of.resize(n_cells);
    act.stage_base.assign(static_cast<std::size_t>(K), 0);

    for (int slot = 0; slot < n_slots; ++slot) {
      // Wraparound TDMA keeps one transmitter live in every nonempty cell of
      // every co-active stage, matching the analytic interferer field.
      std::size_t at = 0;
      for (int k : stages_on) {
        const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
        const auto& sc = sched[static_cast<std::size_t>(k - 1)];
        act.stage_base[static_cast<std::size_t>(k - 1)] = at;
        for (std::size_t ci = 0; ci < sc.nonempty_cells.size(); ++ci) {
          const auto& order = sc.order[ci];
          const int t = order[static_cast<std::size_t>(slot) % order.size()];
          act.x[at] = sg.tx_x[static_cast<std::size_t>(t)];
          act.y[at] = sg.tx_y[static_cast<std::size_t>(t)];
          act.p[at] = sg.tx_power[static_cast<std::size_t>(t)];
          act.stage_of[at] = k;
          act.tx_of[at] = t;
          ++at;
        }
      }
      wbuf.resize(at);
      for (int k : stages_on) {
        const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
        const auto& sc = sched[static_cast<std::size_t>(k - 1)];
        for (std::size_t ci = 0; ci < sc.nonempty_cells.size(); ++ci) {
          if (slot >= static_cast<int>(sc.order[ci].size())) continue;
          const int v = sc.order[ci][static_cast<std::size_t>(slot)];
          const int r = sc.nonempty_cells[ci];
          const Point q = sg.rx_pos[static_cast<std::size_t>(r)];
          pair_weights(act.x.data(), act.y.data(), act.p.data(), at, q.x, q.y,
                       cfg.alpha, wbuf.data());
          wbuf[act.stage_base[static_cast<std::size_t>(k - 1)] + ci] = 0.0;
          double interference = 0.0;
          for (std::size_t i = 0; i < at; ++i)
            interference += rng.exponential() * wbuf[i];
          const double d = sg.tx_dist[static_cast<std::size_t>(v)];
          const double sig =
              sg.tx_power[static_cast<std::size_t>(v)] * std::pow(d, -cfg.alpha);
          const double g0 = rng.exponential();
          sir[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)] =
              interference > 0.0 ? g0 * sig / interference : kHugeSir;
        }
      }
    }
  }

  // Per-stage SIR coverage over interior victims.
  for (int k = 1; k <= K; ++k) {
    const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
    auto& acc = res.stage_sir_success[static_cast<std::size_t>(k - 1)];
    for (std::size_t t = 0; t < sg.tx_device.size(); ++t) {
      const int r = sg.rx_of_tx[t];
      if (!sg.rx_interior[static_cast<std::size_t>(r)]) continue;
      acc.sum += sir[static_cast<std::size_t>(k - 1)][t] > opt.t_sir ? 1.0 : 0.0;
      acc.count += 1;
    }
  }

  // Payload propagation: a transmitter carries the payloads its cell
  // successfully received in the previous stage (stage-1 payloads are 1).
  std::vector<std::vector<double>> payload(static_cast<std::size_t>(K));
  std::vector<std::vector<int>> tx_by_device(static_cast<std::size_t>(K));
  const int n_dev = static_cast<int>(dep.devices.size());
  for (int k = 1; k <= K; ++k) {
    const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
    payload[static_cast<std::size_t>(k - 1)].assign(sg.tx_device.size(), 0.0);
    tx_by_device[static_cast<std::size_t>(k - 1)].assign(n_dev, -1);
    for (std::size_t t = 0; t < sg.tx_device.size(); ++t)
      tx_by_device[static_cast<std::size_t>(k - 1)]
                  [static_cast<std::size_t>(sg.tx_device[t])] = static_cast<int>(t);
  }
  if (K >= 1)
    std::fill(payload[0].begin(), payload[0].end(), 1.0);
  for (int k = 2; k <= K; ++k) {
    const auto& prev = dep.stages[static_cast<std::size_t>(k - 2)];
    const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
    // Received payload per previous-stage aggregator.
    std::vector<double> received(prev.rx_pos.size(), 0.0);
    for (std::size_t r = 0; r < prev.rx_pos.size(); ++r) {
      double acc = 0.0;
      for (int m : prev.members[r])
        if (sir[static_cast<std::size_t>(k - 2)][static_cast<std::size_t>(m)] >
            opt.t_sir)
          acc += payload[static_cast<std::size_t>(k - 2)][static_cast<std::size_t>(m)];
      received[r] = acc;
    }
    std::vector<int> rx_by_device(static_cast<std::size_t>(n_dev), -1);
    for (std::size_t r = 0; r < prev.rx_pos.size(); ++r)
      if (prev.rx_device[r] >= 0)
        rx_by_device[static_cast<std::size_t>(prev.rx_device[r])] =
            static_cast<int>(r);
    for (std::size_t t = 0; t < sg.tx_device.size(); ++t) {
      const int r = rx_by_device[static_cast<std::size_t>(sg.tx_device[t])];
      payload[static_cast<std::size_t>(k - 1)][t] =
          r >= 0 ? received[static_cast<std::size_t>(r)] : 0.0;
    }
  }

  // Energy density per stage over that stage's interior region.
  if (opt.measure_energy) {
    const double p_rxr = cfg.p_lo + cfg.p_rx + cfg.p_o;
    for (int k = 1; k <= K; ++k) {
      const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
      if (sg.interior_area <= 0.0) continue;
      double stage_energy = 0.0;
      for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
        if (!sg.rx_interior[r]) continue;
        const auto& mem = sg.members[r];
        double slot_time = 0.0;  // aggregate receive duration of the cell
        double tx_energy = 0.0;
        for (int m : mem) {
          const double tau =
              payload[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m)];
          slot_time += tau;
          tx_energy +=
              tau * (cfg.p_tx + sg.tx_power[static_cast<std::size_t>(m)] / cfg.eta);
        }
        stage_energy += slot_time * p_rxr + tx_energy +
                        static_cast<double>(mem.size()) * slot_time * cfg.p_lo;
      }
      res.stage_energy_density[static_cast<std::size_t>(k - 1)] =
          stage_energy / sg.interior_area;
      res.total_energy_density +=
          res.stage_energy_density[static_cast<std::size_t>(k - 1)];
    }
  }

  // End-to-end path statistics over stage-1 devices whose whole path is
  // interior at every stage.
  const double rate_divisor =
      opt.mode == TransmissionMode::Sequential
          ? static_cast<double>(K)
          : (opt.mode == TransmissionMode::HalfDuplexParallel ? 2.0 : 1.0);
  const auto& sg1 = dep.stages[0];
  for (std::size_t t0 = 0; t0 < sg1.tx_device.size(); ++t0) {
    double min_rate = std::numeric_limits<double>::infinity();
    bool joint_ok = true;
    bool interior = true;
    int t = static_cast<int>(t0);
    for (int k = 1; k <= K; ++k) {
      const auto& sg = dep.stages[static_cast<std::size_t>(k - 1)];
      const int r = sg.rx_of_tx[static_cast<std::size_t>(t)];
      if (!sg.rx_interior[static_cast<std::size_t>(r)]) { interior = false; break; }
      const double s = sir[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t)];
      const double load = static_cast<double>(sg.members[static_cast<std::size_t>(r)].size());
      min_rate = std::min(min_rate, cfg.w / load * std::log2(1.0 + s));
      joint_ok = joint_ok && s > opt.t_sir;
      if (k < K) {
        const int dev = sg.rx_device[static_cast<std::size_t>(r)];
        t = tx_by_device[static_cast<std::size_t>(k)][static_cast<std::size_t>(dev)];
        if (t < 0) { interior = false; break; }
      }
    }
    if (!interior) continue;
    res.sir_joint.sum += joint_ok ? 1.0 : 0.0;
    res.sir_joint.count += 1;
    const double end_rate = min_rate / rate_divisor;
    for (std::size_t i = 0; i < opt.rho_grid.size(); ++i) {
      res.rate_covered[i].sum += end_rate > opt.rho_grid[i] ? 1.0 : 0.0;
      res.rate_covered[i].count += 1;
    }
  }
  return res;
}

std::vector<CorrelationRow> measure_stage_correlation(
    const NetworkConfig& cfg, const std::vector<double>& gamma_grid, int levels,
    int n_deployments, double half_width, uint64_t root_seed, int n_threads) {
  if (levels < 2) throw std::invalid_argument("measure_stage_correlation: levels >= 2");
  std::vector<CorrelationRow> rows;
  struct PairAcc {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    long n = 0;
    void add(double x, double y) {
      sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y; ++n;
    }
    void merge(const PairAcc& o) {
      sx += o.sx; sy += o.sy; sxx += o.sxx; syy += o.syy; sxy += o.sxy; n += o.n;
    }
    double pearson() const {
      if (n < 2) return std::numeric_limits<double>::quiet_NaN();
      const double nd = static_cast<double>(n);
      const double cov = sxy / nd - (sx / nd) * (sy / nd);
      const double vx = sxx / nd - (sx / nd) * (sx / nd);
      const double vy = syy / nd - (sy / nd) * (sy / nd);
      if (vx <= 0.0 || vy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
      return cov / std::sqrt(vx * vy);
    }
  };

  for (std::size_t gi = 0; gi < gamma_grid.size(); ++gi) {
    const double gamma = gamma_grid[gi];
    const TierSpec tiers = TierSpec::pure_thinning(gamma, levels);
    auto per_dep = run_deployments<std::vector<PairAcc>>(
        n_deployments, root_seed + gi,
        [&](uint64_t seed, int) {
          const Deployment dep = sample_deployment(cfg, tiers, half_width, seed);
          std::vector<PairAcc> accs(static_cast<std::size_t>(levels - 1));
          for (int k = 1; k <= levels - 1; ++k) {
            const auto& lo = dep.stages[static_cast<std::size_t>(k - 1)];
            const auto& hi = dep.stages[static_cast<std::size_t>(k)];
            if (lo.rx_pos.empty() || hi.rx_pos.empty()) continue;
            std::vector<int> lo_rx_by_device(dep.devices.size(), -1);
            for (std::size_t r = 0; r < lo.rx_pos.size(); ++r)
              lo_rx_by_device[static_cast<std::size_t>(lo.rx_device[r])] =
                  static_cast<int>(r);
            for (std::size_t t = 0; t < hi.tx_device.size(); ++t) {
              const int r_hi = hi.rx_of_tx[t];
              const int r_lo =
                  lo_rx_by_device[static_cast<std::size_t>(hi.tx_device[t])];
              if (r_lo < 0) continue;
              if (!lo.rx_interior[static_cast<std::size_t>(r_lo)] ||
                  !hi.rx_interior[static_cast<std::size_t>(r_hi)])
                continue;
              accs[static_cast<std::size_t>(k - 1)].add(
                  static_cast<double>(lo.members[static_cast<std::size_t>(r_lo)].size()),
                  static_cast<double>(hi.members[static_cast<std::size_t>(r_hi)].size()));
            }
          }
          return accs;
        },
        n_threads);
    for (int k = 1; k <= levels - 1; ++k) {
      PairAcc merged;
      for (const auto& d : per_dep) merged.merge(d[static_cast<std::size_t>(k - 1)]);
      rows.push_back({gamma, k, merged.pearson(), merged.n});
    }
  }
  return rows;
}

}  // namespace m2m::mc
