#include "m2m/model.hpp"

namespace m2m {

void NetworkConfig::validate() const {
  if (!(lambda > 0.0) || !(lambda_bs > 0.0) || !(lambda > lambda_bs))
    throw std::invalid_argument("NetworkConfig: need lambda > lambda_bs > 0");
  if (!(alpha > 2.0))
    throw std::invalid_argument("NetworkConfig: need alpha > 2");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("NetworkConfig: need eta in (0,1]");
  if (p_lo < 0.0 || p_rx < 0.0 || p_tx < 0.0 || p_o < 0.0)
    throw std::invalid_argument("NetworkConfig: block powers must be >= 0");
  if (!(p_bar_t > 0.0))
    throw std::invalid_argument("NetworkConfig: need p_bar_t > 0");
  if (!std::isinf(p_t_max) && !(p_t_max >= p_bar_t))
    throw std::invalid_argument("NetworkConfig: need p_t_max >= p_bar_t or infinite");
  if (!(w > 0.0) || !(m_payload > 0.0))
    throw std::invalid_argument("NetworkConfig: need w > 0 and m_payload > 0");
}

CriticalDistance critical_distance(const NetworkConfig& cfg) {
  if (cfg.infinite_p_t_max()) return {kInfinitePower};
  return {std::pow(cfg.p_t_max / cfg.p_bar_t, 1.0 / cfg.alpha)};
}

const char* to_string(TransmissionMode mode) {
  switch (mode) {
    case TransmissionMode::Sequential: return "sequential";
    case TransmissionMode::FullDuplexParallel: return "full-duplex";
    case TransmissionMode::HalfDuplexParallel: return "half-duplex";
  }
  return "?";
}

TransmissionMode transmission_mode_from_string(const std::string& name) {
  if (name == "sequential" || name == "seq") return TransmissionMode::Sequential;
  if (name == "full-duplex" || name == "fd") return TransmissionMode::FullDuplexParallel;
  if (name == "half-duplex" || name == "hd") return TransmissionMode::HalfDuplexParallel;
  throw std::invalid_argument("unknown transmission mode: " + name);
}

double min_feasible_gamma(const NetworkConfig& cfg, int k_total) {
  if (k_total <= 1) return 0.0;
  return std::pow(cfg.lambda_bs / cfg.lambda, 1.0 / (k_total - 1));
}

StagePlan build_stage_plan(const NetworkConfig& cfg, double gamma, int k_total) {
  cfg.validate();
  if (k_total < 1) throw std::invalid_argument("build_stage_plan: k_total must be >= 1");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("build_stage_plan: gamma must lie in (0, 0.5)");

  StagePlan plan;
  plan.gamma = gamma;
  plan.k_total = k_total;

  if (k_total == 1) {
    // Direct transmission to the BS tier.
    plan.gamma_bar = 0.0;
    plan.lambda_u = {cfg.lambda};
    plan.lambda_a = {cfg.lambda_bs};
    plan.gamma_last = cfg.lambda_bs / (cfg.lambda + cfg.lambda_bs);
  } else {
    const double last_tx = cfg.lambda * std::pow(gamma, k_total - 1);
    if (last_tx < cfg.lambda_bs)
      throw DegeneratePlanError(
          "build_stage_plan: degenerate plan, lambda*gamma^(K-1) < lambda_bs "
          "(more BSs than last-stage transmitters)");
    double gbar = 0.0;
    for (int k = 1; k <= k_total - 1; ++k) gbar += std::pow(gamma, k);
    plan.gamma_bar = gbar;
    plan.lambda_u.resize(k_total);
    plan.lambda_a.resize(k_total);
    plan.lambda_u[0] = cfg.lambda * (1.0 - gbar);
    plan.lambda_a[0] = cfg.lambda * gamma;
    for (int k = 2; k <= k_total; ++k) {
      plan.lambda_u[k - 1] = cfg.lambda * std::pow(gamma, k - 1);
      plan.lambda_a[k - 1] =
          (k == k_total) ? cfg.lambda_bs : cfg.lambda * std::pow(gamma, k);
    }
    plan.gamma_last = cfg.lambda_bs / (last_tx + cfg.lambda_bs);
  }

  const int K = k_total;
  plan.mean_na.resize(K);
  plan.t_tx.resize(K);
  for (int k = 1; k <= K; ++k)
    plan.mean_na[k - 1] = plan.lambda_u[k - 1] / plan.lambda_a[k - 1];
  plan.t_tx[0] = 1.0;
  for (int k = 2; k <= K; ++k)
    plan.t_tx[k - 1] = plan.t_tx[k - 2] * plan.mean_na[k - 2];
  return plan;
}

}  // namespace m2m
