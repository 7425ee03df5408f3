#include "m2m/mc/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "m2m/mc/rng.hpp"

namespace m2m::mc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform-grid nearest-neighbor index over a fixed square window.
class NearestGrid {
 public:
  NearestGrid(const std::vector<Point>& pts, double half_width) : pts_(pts) {
    const std::size_t n = std::max<std::size_t>(pts.size(), 1);
    dim_ = std::max(1, static_cast<int>(std::floor(std::sqrt(n / 2.0))));
    origin_ = -half_width;
    cell_ = 2.0 * half_width / dim_;
    buckets_.resize(static_cast<std::size_t>(dim_) * dim_);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
      buckets_[bucket_of(pts[i])].push_back(i);
  }

  int nearest(Point q, double* dist_out) const {
    if (pts_.empty()) return -1;
    const int cx = clamp_idx((q.x - origin_) / cell_);
    const int cy = clamp_idx((q.y - origin_) / cell_);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < 2 * dim_; ++ring) {
      scan_ring(q, cx, cy, ring, best, best_d2);
      if (best >= 0) {
        // A hit in ring r guarantees the true nearest lies within ring
        // ceil(sqrt(best_d2)/cell)+1.
        const int safe = static_cast<int>(std::sqrt(best_d2) / cell_) + 1;
        if (ring >= safe) break;
      }
    }
    if (dist_out) *dist_out = std::sqrt(best_d2);
    return best;
  }

 private:
  int clamp_idx(double v) const {
    return std::clamp(static_cast<int>(v), 0, dim_ - 1);
  }
  std::size_t bucket_of(Point p) const {
    return static_cast<std::size_t>(clamp_idx((p.y - origin_) / cell_)) * dim_ +
           clamp_idx((p.x - origin_) / cell_);
  }
  void scan_cell(Point q, int bx, int by, int& best, double& best_d2) const {
    if (bx < 0 || by < 0 || bx >= dim_ || by >= dim_) return;
    for (int i : buckets_[static_cast<std::size_t>(by) * dim_ + bx]) {
      const double dx = pts_[i].x - q.x;
      const double dy = pts_[i].y - q.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) { best_d2 = d2; best = i; }
    }
  }
  void scan_ring(Point q, int cx, int cy, int ring, int& best, double& best_d2) const {
    if (ring == 0) { scan_cell(q, cx, cy, best, best_d2); return; }
    for (int dx = -ring; dx <= ring; ++dx) {
      scan_cell(q, cx + dx, cy - ring, best, best_d2);
      scan_cell(q, cx + dx, cy + ring, best, best_d2);
    }
    for (int dy = -ring + 1; dy <= ring - 1; ++dy) {
      scan_cell(q, cx - ring, cy + dy, best, best_d2);
      scan_cell(q, cx + ring, cy + dy, best, best_d2);
    }
  }

  const std::vector<Point>& pts_;
  int dim_ = 1;
  double origin_ = 0.0;
  double cell_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

std::vector<Point> sample_ppp(double density, double half_width, Xoshiro256pp& rng) {
  const double area = 4.0 * half_width * half_width;
  std::poisson_distribution<long> pois(density * area);
  const long n = pois(rng);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = (2.0 * rng.uniform() - 1.0) * half_width;
    p.y = (2.0 * rng.uniform() - 1.0) * half_width;
  }
  return pts;
}

}  // namespace

TierSpec TierSpec::from_plan(const StagePlan& plan) {
  TierSpec spec;
  spec.last_tier_is_bs = true;
  for (int k = 1; k <= plan.k_total - 1; ++k)
    spec.probs.push_back(std::pow(plan.gamma, k));
  return spec;
}

TierSpec TierSpec::pure_thinning(double gamma, int levels) {
  TierSpec spec;
  spec.last_tier_is_bs = false;
  for (int k = 1; k <= levels; ++k) spec.probs.push_back(std::pow(gamma, k));
  return spec;
}

Deployment sample_deployment(const NetworkConfig& cfg, const TierSpec& tiers,
                             double half_width, uint64_t seed, double guard_scale) {
  cfg.validate();
  if (!(half_width > 0.0)) throw std::invalid_argument("sample_deployment: bad region");
  double mass = 0.0;
  for (double p : tiers.probs) mass += p;
  if (mass >= 1.0)
    throw std::invalid_argument("sample_deployment: tier masses exceed 1");

  Deployment dep;
  dep.region_half_width = half_width;
  dep.seed = seed;
  Xoshiro256pp rng(seed);

  dep.devices = sample_ppp(cfg.lambda, half_width, rng);
  dep.tier.assign(dep.devices.size(), 0);
  const int n_tiers = static_cast<int>(tiers.probs.size());
  for (std::size_t i = 0; i < dep.devices.size(); ++i) {
    double u = rng.uniform();
    for (int j = 0; j < n_tiers; ++j) {
      if (u < tiers.probs[j]) { dep.tier[i] = j + 1; break; }
      u -= tiers.probs[j];
    }
  }
  if (tiers.last_tier_is_bs) dep.bs = sample_ppp(cfg.lambda_bs, half_width, rng);

  const int k_total = tiers.stage_count();
  const double rc =
      cfg.infinite_p_t_max() ? kInfinitePower : critical_distance(cfg).r_c;

  // Density of the receiving tier of stage k, for guard sizing.
  const auto stage_rx_density = [&](int k) {
    if (tiers.last_tier_is_bs && k == k_total) return cfg.lambda_bs;
    return cfg.lambda * tiers.probs[k - 1];
  };
  const double area = 4.0 * half_width * half_width;
  if (stage_rx_density(k_total) * area < 10.0)
    dep.warnings.push_back("fewer than 10 expected last-stage aggregators in region");

  dep.stages.resize(k_total);
  for (int k = 1; k <= k_total; ++k) {
    StageGeometry& sg = dep.stages[k - 1];
    const bool rx_is_bs = tiers.last_tier_is_bs && k == k_total;
    for (std::size_t i = 0; i < dep.devices.size(); ++i) {
      const int want_tx = k - 1;  // tier 0 transmits at stage 1, tier k-1 at stage k
      if (dep.tier[i] == want_tx) sg.tx_device.push_back(static_cast<int>(i));
      if (!rx_is_bs && dep.tier[i] == k) {
        sg.rx_device.push_back(static_cast<int>(i));
        sg.rx_pos.push_back(dep.devices[i]);
      }
    }
    if (rx_is_bs) {
      sg.rx_pos = dep.bs;
      sg.rx_device.assign(dep.bs.size(), -1);
    }
    if (sg.rx_pos.empty()) {
      dep.warnings.push_back("stage " + std::to_string(k) + " has no aggregators");
      continue;
    }

    NearestGrid grid(sg.rx_pos, half_width);
    const std::size_t n_tx = sg.tx_device.size();
    sg.tx_x.resize(n_tx);
    sg.tx_y.resize(n_tx);
    sg.tx_power.resize(n_tx);
    sg.tx_dist.resize(n_tx);
    sg.rx_of_tx.resize(n_tx);
    sg.members.assign(sg.rx_pos.size(), {});
    for (std::size_t t = 0; t < n_tx; ++t) {
      const Point p = dep.devices[static_cast<std::size_t>(sg.tx_device[t])];
      sg.tx_x[t] = p.x;
      sg.tx_y[t] = p.y;
      double d = 0.0;
      const int rx = grid.nearest(p, &d);
      sg.rx_of_tx[t] = rx;
      sg.tx_dist[t] = d;
      sg.members[static_cast<std::size_t>(rx)].push_back(static_cast<int>(t));
      const double inv = cfg.p_bar_t * std::pow(d, cfg.alpha);
      sg.tx_power[t] = cfg.infinite_p_t_max() ? inv : std::min(cfg.p_t_max, inv);
      (void)rc;
    }

    sg.guard = guard_scale * 3.0 / std::sqrt(kPi * stage_rx_density(k));
    sg.interior_half_width = half_width - sg.guard;
    if (sg.interior_half_width <= 0.0) {
      dep.warnings.push_back("stage " + std::to_string(k) +
                             " guard region swallows the window");
      sg.interior_half_width = 0.0;
    }
    sg.interior_area = 4.0 * sg.interior_half_width * sg.interior_half_width;
    sg.rx_interior.resize(sg.rx_pos.size());
    for (std::size_t r = 0; r < sg.rx_pos.size(); ++r) {
      const bool inside = std::fabs(sg.rx_pos[r].x) < sg.interior_half_width &&
                          std::fabs(sg.rx_pos[r].y) < sg.interior_half_width;
      sg.rx_interior[r] = inside ? 1 : 0;
      if (inside) ++sg.interior_rx_count;
    }
  }
  return dep;
}

}  // namespace m2m::mc
