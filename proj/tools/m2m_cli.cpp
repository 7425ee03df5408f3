#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "m2m/coverage.hpp"
#include "m2m/energy.hpp"
#include "m2m/hops.hpp"
#include "m2m/manifest.hpp"
#include "m2m/mc/measure.hpp"
#include "m2m/model.hpp"
#include "m2m/rate.hpp"

namespace {

using m2m::NetworkConfig;
using m2m::StagePlan;
using m2m::TransmissionMode;
using m2m::cli::format_double;
using m2m::cli::RunManifest;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;  // key=value overrides
  std::string output = "-";
  uint64_t seed = 1;
  bool emit_plot = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_path,
                  "flat key=value config file (or env M2M_CONFIG)");
  cmd->add_option("--set", c.sets, "override a config key, e.g. --set eta=0.35")
      ->take_all();
  cmd->add_option("-o,--output", c.output, "output CSV path ('-' for stdout)");
  cmd->add_option("--seed", c.seed, "root seed for randomized commands");
  cmd->add_flag("--emit-plot", c.emit_plot, "also write a gnuplot script next to the CSV");
}

NetworkConfig make_config(const CommonOpts& c) {
  std::map<std::string, std::string> kv;
  std::string path = c.config_path;
  if (path.empty())
    if (const char* env = std::getenv("M2M_CONFIG")) path = env;
  if (!path.empty()) kv = m2m::cli::load_config_file(path);
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return m2m::cli::config_from_kv(kv);
}

void write_output(const CommonOpts& c, const RunManifest& man, const std::string& body,
                  const std::string& plot_hint) {
  const std::string text = man.header_block() + body;
  if (c.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + c.output);
    out << text;
  }
  if (c.emit_plot && c.output != "-") {
    std::ofstream gp(c.output + ".gp", std::ios::binary);
    gp << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set datafile commentschars '#'\n"
       << plot_hint << " '" << c.output << "'\n";
  }
}

std::string grid_echo(const char* name, double lo, double hi, int n) {
  std::ostringstream os;
  os << name << "=" << format_double(lo) << ":" << format_double(hi) << ":" << n;
  return os.str();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw std::invalid_argument("grid: need 0 < lo < hi and points >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) throw std::invalid_argument("grid: need lo < hi, points >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}

m2m::energy::CoverageVector coverage_from_rate_factors(const std::vector<double>& f) {
  m2m::energy::CoverageVector cov;
  cov.p_cov.resize(f.size());
  double running = 1.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    cov.p_cov[k] = running;  // P_cov(k-1)
    running *= f[k];
  }
  return cov;
}

// ---- energy-sweep ----------------------------------------------------------

int cmd_energy_sweep(const CommonOpts& c, const std::vector<int>& k_list,
                     int gamma_points, const std::string& p_lo_variant) {
  NetworkConfig cfg = make_config(c);
  if (p_lo_variant == "prx4") cfg.p_lo = cfg.p_rx / 4.0;
  else if (p_lo_variant != "fig3")
    throw std::invalid_argument("--p-lo-variant must be fig3 or prx4");

  const auto all_ones = [](const StagePlan& p) {
    return m2m::energy::CoverageVector::ones(p.k_total);
  };
  const double e_direct =
      m2m::energy::optimize_gamma(cfg, 1, all_ones).energy.total;

  std::ostringstream os;
  os << "k,gamma,e_total,is_opt,e_direct\n";
  for (int K : k_list) {
    if (K == 1) {
      os << "1,nan," << format_double(e_direct) << ",1," << format_double(e_direct)
         << "\n";
      continue;
    }
    const auto opt = m2m::energy::optimize_gamma(cfg, K, all_ones);
    std::vector<double> grid =
        lin_grid(opt.bracket_lo * (1.0 + 1e-9), opt.bracket_hi, gamma_points);
    grid.push_back(opt.gamma_opt);
    std::sort(grid.begin(), grid.end());
    for (double g : grid) {
      const StagePlan plan = m2m::build_stage_plan(cfg, g, K);
      const double e =
          m2m::energy::total_energy_density(cfg, plan, all_ones(plan)).total;
      const bool is_opt = g == opt.gamma_opt;
      os << K << ',' << format_double(g) << ',' << format_double(e) << ','
         << (is_opt ? 1 : 0) << ',' << format_double(e_direct) << "\n";
    }
  }

  RunManifest man{"energy-sweep", m2m::cli::config_echo(cfg), c.seed,
                  "variant=" + p_lo_variant + " gamma_points=" +
                      std::to_string(gamma_points)};
  write_output(c, man, os.str(), "plot");
  return 0;
}

// ---- coverage --------------------------------------------------------------

int cmd_coverage(const CommonOpts& c, const std::string& mode_name, int k, double gamma,
                 double t_min, double t_max, int t_points) {
  const NetworkConfig cfg = make_config(c);
  const TransmissionMode mode = m2m::transmission_mode_from_string(mode_name);
  const StagePlan plan = m2m::build_stage_plan(cfg, gamma, k);
  std::ostringstream os;
  os << "t";
  for (int s = 1; s <= k; ++s) os << ",p_stage" << s;
  os << ",joint\n";
  for (double t : log_grid(t_min, t_max, t_points)) {
    const auto cov = m2m::coverage::sir_coverage_mode(cfg, plan, mode, {t});
    os << format_double(t);
    for (double p : cov.per_stage) os << ',' << format_double(p);
    os << ',' << format_double(cov.joint.back()) << "\n";
  }
  RunManifest man{"coverage", m2m::cli::config_echo(cfg), c.seed,
                  "mode=" + mode_name + " k=" + std::to_string(k) +
                      " gamma=" + format_double(gamma) + " " +
                      grid_echo("t", t_min, t_max, t_points)};
  write_output(c, man, os.str(), "set logscale x\nplot");
  return 0;
}

// ---- rate-cdf --------------------------------------------------------------

int cmd_rate_cdf(const CommonOpts& c, const std::string& mode_name,
                 const std::vector<int>& k_list, double rho_min, double rho_max,
                 int rho_points, const std::vector<double>& pmax_ratios, int l_max,
                 double gamma, bool simulate, int n_deployments, double half_width) {
  NetworkConfig base = make_config(c);
  const TransmissionMode mode = m2m::transmission_mode_from_string(mode_name);
  const auto rho_grid = log_grid(rho_min, rho_max, rho_points);

  std::ostringstream os;
  os << "mode,k,pmax_ratio,rho,coverage,pmf_tail";
  if (simulate) os << ",emp_coverage,emp_ci,gap";
  os << "\n";
  for (double ratio : pmax_ratios) {
    NetworkConfig cfg = base;
    cfg.p_t_max = std::isinf(ratio) ? m2m::kInfinitePower : ratio * cfg.p_bar_t;
    for (int K : k_list) {
      const StagePlan plan = m2m::build_stage_plan(cfg, gamma, K);
      double tail = 0.0;
      for (int s = 1; s <= K; ++s)
        tail = std::max(tail, m2m::rate::load_pmf(plan.lambda_u_at(s),
                                                  plan.lambda_a_at(s), l_max, 1.0)
                                  .tail_mass);
      if (tail > 1e-3)
        std::cerr << "warning: load PMF tail mass " << tail << " at l_max=" << l_max
                  << " (k=" << K << "); raise --l-max\n";
      std::vector<m2m::mc::McEstimate> emp(rho_grid.size());
      if (simulate) {
        const auto tiers = m2m::mc::TierSpec::from_plan(plan);
        auto parts = m2m::mc::run_deployments<std::vector<m2m::mc::SumCount>>(
            n_deployments, c.seed, [&](uint64_t seed, int) {
              const auto dep = m2m::mc::sample_deployment(cfg, tiers, half_width, seed);
              m2m::mc::Xoshiro256pp rng(seed ^ 0xabcdef12345ULL);
              m2m::mc::ModeSimOptions opt;
              opt.mode = mode;
              opt.rho_grid = rho_grid;
              opt.measure_energy = false;
              return m2m::mc::simulate_mode(dep, cfg, opt, rng).rate_covered;
            });
        for (std::size_t i = 0; i < rho_grid.size(); ++i) {
          std::vector<m2m::mc::SumCount> col;
          for (const auto& p : parts) col.push_back(p[i]);
          emp[i] = m2m::mc::pool_ratios(col);
        }
      }
      for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        const double cov =
            m2m::rate::rate_coverage(cfg, plan, mode, {rho_grid[i]}, l_max);
        os << mode_name << ',' << K << ',' << format_double(ratio) << ','
           << format_double(rho_grid[i]) << ',' << format_double(cov) << ','
           << format_double(tail);
        if (simulate)
          os << ',' << format_double(emp[i].mean) << ','
             << format_double(emp[i].half_width_95) << ','
             << format_double(cov - emp[i].mean);
        os << "\n";
      }
    }
  }
  RunManifest man{"rate-cdf", m2m::cli::config_echo(base), c.seed,
                  "mode=" + mode_name + " gamma=" + format_double(gamma) +
                      " l_max=" + std::to_string(l_max) + " " +
                      grid_echo("rho", rho_min, rho_max, rho_points) +
                      (simulate ? " simulate=1 n=" + std::to_string(n_deployments)
                                : "")};
  write_output(c, man, os.str(), "set logscale x\nplot");
  return 0;
}

// ---- hops ------------------------------------------------------------------

int cmd_hops(const CommonOpts& c, double eps_min, double eps_max, int eps_points,
             const std::vector<double>& t_list, double p_r_min, double gamma, int k) {
  const NetworkConfig cfg = make_config(c);
  std::ostringstream os;
  os << "epsilon,t,k_upper,k_lower\n";
  const StagePlan plan = m2m::build_stage_plan(cfg, gamma, k);
  for (double eps : lin_grid(eps_min, eps_max, eps_points)) {
    for (double t : t_list) {
      int ku;
      if (cfg.infinite_p_t_max()) {
        ku = m2m::hops::k_upper_bound_limit(cfg, t, eps);
      } else {
        std::vector<double> covs;
        for (int s = 1; s <= k; ++s)
          covs.push_back(m2m::coverage::sir_coverage_single(cfg, plan.lambda_a_at(s), {t}));
        const auto bound = m2m::hops::k_upper_bound(covs, eps);
        ku = bound ? *bound : -1;
      }
      const int kl = m2m::hops::k_lower_bound(cfg, cfg.lambda * (1.0 - gamma),
                                              cfg.lambda * gamma, p_r_min);
      os << format_double(eps) << ',' << format_double(t) << ',' << ku << ',' << kl
         << "\n";
    }
  }
  RunManifest man{"hops", m2m::cli::config_echo(cfg), c.seed,
                  grid_echo("epsilon", eps_min, eps_max, eps_points) +
                      " p_r_min=" + format_double(p_r_min) +
                      " gamma=" + format_double(gamma) + " k=" + std::to_string(k)};
  write_output(c, man, os.str(), "plot");
  return 0;
}

// ---- tradeoff --------------------------------------------------------------

int cmd_tradeoff(const CommonOpts& c, int k, const std::vector<std::string>& mode_names,
                 double rho_min, double rho_max, int rho_points, double gamma,
                 int l_max) {
  const NetworkConfig cfg = make_config(c);
  const StagePlan plan = m2m::build_stage_plan(cfg, gamma, k);
  std::vector<TransmissionMode> modes;
  for (const auto& m : mode_names) modes.push_back(m2m::transmission_mode_from_string(m));
  std::ostringstream os;
  os << "rho";
  for (const auto& m : mode_names) os << ",q_" << m << ",e_" << m;
  os << "\n";
  for (double rho : log_grid(rho_min, rho_max, rho_points)) {
    os << format_double(rho);
    for (auto mode : modes) {
      const auto factors =
          m2m::rate::rate_coverage_stage_factors(cfg, plan, mode, {rho}, l_max);
      double cov = 1.0;
      for (double f : factors) cov *= f;
      const auto e = m2m::energy::total_energy_density(
          cfg, plan, coverage_from_rate_factors(factors));
      os << ',' << format_double(1.0 - cov) << ',' << format_double(e.total);
    }
    os << "\n";
  }
  RunManifest man{"tradeoff", m2m::cli::config_echo(cfg), c.seed,
                  "k=" + std::to_string(k) + " gamma=" + format_double(gamma) + " " +
                      grid_echo("rho", rho_min, rho_max, rho_points)};
  write_output(c, man, os.str(), "plot");
  return 0;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const CommonOpts& c, const std::string& experiment, int n_deployments,
                 double gamma, int k, const std::string& mode_name, double t_sir,
                 double half_width, double rho_min, double rho_max, int rho_points) {
  const NetworkConfig cfg = make_config(c);
  std::ostringstream os;
  std::ostringstream extra;
  extra << "experiment=" << experiment << " n=" << n_deployments
        << " gamma=" << format_double(gamma) << " k=" << k << " r=" << half_width;

  if (experiment == "pa-power") {
    // Single aggregation tier of density gamma*lambda, Theorem-1 target.
    const auto tiers = m2m::mc::TierSpec::pure_thinning(gamma, 1);
    auto parts = m2m::mc::run_deployments<m2m::mc::SumCount>(
        n_deployments, c.seed, [&](uint64_t seed, int) {
          const auto dep = m2m::mc::sample_deployment(cfg, tiers, half_width, seed);
          return m2m::mc::measure_pa_power(dep, cfg, 1);
        });
    const auto est = m2m::mc::pool_ratios(parts);
    const double analytic = m2m::energy::mean_uplink_power(
        cfg, cfg.lambda * (1.0 - gamma), cfg.lambda * gamma);
    os << "quantity,empirical,ci_half_width,n_samples,analytic,rel_err\n";
    os << "pa_power," << format_double(est.mean) << ','
       << format_double(est.half_width_95) << ',' << est.n_samples << ','
       << format_double(analytic) << ','
       << format_double((est.mean - analytic) / analytic) << "\n";
  } else if (experiment == "load") {
    const auto tiers = m2m::mc::TierSpec::pure_thinning(gamma, 1);
    auto parts = m2m::mc::run_deployments<m2m::mc::LoadMoments>(
        n_deployments, c.seed, [&](uint64_t seed, int) {
          const auto dep = m2m::mc::sample_deployment(cfg, tiers, half_width, seed);
          return m2m::mc::measure_load_moments(dep, 1);
        });
    std::vector<m2m::mc::SumCount> mean, second, empty;
    for (const auto& p : parts) {
      mean.push_back(p.mean);
      second.push_back(p.second);
      empty.push_back(p.empty);
    }
    const double mu = (1.0 - gamma) / gamma;
    os << "quantity,empirical,ci_half_width,n_samples,analytic\n";
    const auto row = [&](const char* n, const m2m::mc::McEstimate& e, double a) {
      os << n << ',' << format_double(e.mean) << ',' << format_double(e.half_width_95)
         << ',' << e.n_samples << ',' << format_double(a) << "\n";
    };
    row("mean_na", m2m::mc::pool_ratios(mean), mu);
    row("second_moment_na", m2m::mc::pool_ratios(second),
        m2m::energy::second_moment_na(cfg.lambda * (1.0 - gamma), cfg.lambda * gamma));
    row("p_empty", m2m::mc::pool_ratios(empty), m2m::rate::load_pgf(mu, 0.0));
  } else if (experiment == "coverage") {
    const auto tiers = m2m::mc::TierSpec::pure_thinning(gamma, 1);
    auto parts = m2m::mc::run_deployments<m2m::mc::SumCount>(
        n_deployments, c.seed, [&](uint64_t seed, int) {
          const auto dep = m2m::mc::sample_deployment(cfg, tiers, half_width, seed);
          m2m::mc::Xoshiro256pp rng(seed ^ 0xabcdef12345ULL);
          m2m::mc::ModeSimOptions opt;
          opt.mode = TransmissionMode::Sequential;
          opt.t_sir = t_sir;
          opt.measure_energy = false;
          return m2m::mc::simulate_mode(dep, cfg, opt, rng).stage_sir_success[0];
        });
    const auto est = m2m::mc::pool_ratios(parts);
    const double analytic =
        m2m::coverage::sir_coverage_single(cfg, cfg.lambda * gamma, {t_sir});
    os << "quantity,empirical,ci_half_width,n_samples,analytic,gap\n";
    os << "sir_coverage," << format_double(est.mean) << ','
       << format_double(est.half_width_95) << ',' << est.n_samples << ','
       << format_double(analytic) << ',' << format_double(est.mean - analytic)
       << "\n";
    extra << " t=" << format_double(t_sir);
  } else if (experiment == "correlation") {
    const std::vector<double> gammas = {0.05, 0.1, 0.2, 0.3};
    const auto rows = m2m::mc::measure_stage_correlation(cfg, gammas, 3, n_deployments,
                                                         half_width, c.seed);
    os << "gamma,stage_pair,rho,n_pairs\n";
    for (const auto& r : rows)
      os << format_double(r.gamma) << ',' << r.stage << "-" << r.stage + 1 << ','
         << format_double(r.rho) << ',' << r.n_pairs << "\n";
  } else if (experiment == "energy" || experiment == "rate") {
    const TransmissionMode mode = m2m::transmission_mode_from_string(mode_name);
    const StagePlan plan = m2m::build_stage_plan(cfg, gamma, k);
    const auto tiers = m2m::mc::TierSpec::from_plan(plan);
    const auto rho_grid =
        experiment == "rate" ? log_grid(rho_min, rho_max, rho_points)
                             : std::vector<double>();
    auto parts = m2m::mc::run_deployments<m2m::mc::ModeSimResult>(
        n_deployments, c.seed, [&](uint64_t seed, int) {
          const auto dep = m2m::mc::sample_deployment(cfg, tiers, half_width, seed);
          m2m::mc::Xoshiro256pp rng(seed ^ 0xabcdef12345ULL);
          m2m::mc::ModeSimOptions opt;
          opt.mode = mode;
          opt.t_sir = t_sir;
          opt.rho_grid = rho_grid;
          opt.measure_energy = experiment == "energy";
          return m2m::mc::simulate_mode(dep, cfg, opt, rng);
        });
    extra << " mode=" << mode_name << " t=" << format_double(t_sir);
    if (experiment == "energy") {
      os << "quantity,empirical,ci_half_width,n_samples\n";
      std::vector<double> totals;
      for (const auto& p : parts) totals.push_back(p.total_energy_density);
      const auto tot = m2m::mc::pool_means(totals, n_deployments);
      for (int s = 1; s <= k; ++s) {
        std::vector<double> vals;
        for (const auto& p : parts)
          vals.push_back(p.stage_energy_density[static_cast<std::size_t>(s - 1)]);
        const auto e = m2m::mc::pool_means(vals, n_deployments);
        os << "stage" << s << "_energy_density," << format_double(e.mean) << ','
           << format_double(e.half_width_95) << ',' << e.n_samples << "\n";
      }
      os << "total_energy_density," << format_double(tot.mean) << ','
         << format_double(tot.half_width_95) << ',' << tot.n_samples << "\n";
    } else {
      os << "rho,emp_coverage,ci_half_width,n_samples,analytic,gap\n";
      for (std::size_t i = 0; i < rho_grid.size(); ++i) {
        std::vector<m2m::mc::SumCount> col;
        for (const auto& p : parts) col.push_back(p.rate_covered[i]);
        const auto est = m2m::mc::pool_ratios(col);
        const double analytic =
            m2m::rate::rate_coverage(cfg, plan, mode, {rho_grid[i]});
        os << format_double(rho_grid[i]) << ',' << format_double(est.mean) << ','
           << format_double(est.half_width_95) << ',' << est.n_samples << ','
           << format_double(analytic) << ',' << format_double(analytic - est.mean)
           << "\n";
      }
    }
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }

  RunManifest man{"simulate", m2m::cli::config_echo(cfg), c.seed, extra.str()};
  write_output(c, man, os.str(), "plot");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical M2M data-aggregation model: analytics and Monte Carlo"};
  app.require_subcommand(1);

  CommonOpts c;

  // energy-sweep
  auto* sweep = app.add_subcommand("energy-sweep", "total energy density over gamma");
  std::vector<int> k_list = {1, 2, 3};
  int gamma_points = 60;
  std::string p_lo_variant = "fig3";
  add_common(sweep, c);
  sweep->add_option("--k-list", k_list, "stage counts to sweep");
  sweep->add_option("--gamma-points", gamma_points, "grid size per K");
  sweep->add_option("--p-lo-variant", p_lo_variant, "fig3 (P_LO from config) or prx4");

  // coverage
  auto* cov = app.add_subcommand("coverage", "SIR coverage over a threshold grid");
  std::string mode_name = "sequential";
  int k = 2;
  double gamma = 0.1, t_min = 0.01, t_max = 100.0;
  int t_points = 25;
  add_common(cov, c);
  cov->add_option("--mode", mode_name, "sequential|fd|hd");
  cov->add_option("--k", k, "number of stages");
  cov->add_option("--gamma", gamma, "aggregator fraction");
  cov->add_option("--t-min", t_min);
  cov->add_option("--t-max", t_max);
  cov->add_option("--t-points", t_points);

  // rate-cdf
  auto* rate = app.add_subcommand("rate-cdf", "rate coverage distribution");
  double rho_min = 1e2, rho_max = 1e5;
  int rho_points = 12, l_max = 20, n_deployments = 20;
  double half_width = 2.5;
  std::vector<double> pmax_ratios = {m2m::kInfinitePower};
  bool simulate = false;
  add_common(rate, c);
  rate->add_option("--mode", mode_name, "sequential|fd|hd");
  rate->add_option("--k-list", k_list, "stage counts");
  rate->add_option("--gamma", gamma);
  rate->add_option("--rho-min", rho_min);
  rate->add_option("--rho-max", rho_max);
  rate->add_option("--rho-points", rho_points);
  rate->add_option("--pmax-ratios", pmax_ratios, "P_Tmax/PbarT ratios (inf allowed)");
  rate->add_option("--l-max", l_max, "load truncation");
  rate->add_flag("--simulate", simulate, "append Monte Carlo columns");
  rate->add_option("--n-deployments", n_deployments);
  rate->add_option("--region-half-width", half_width);

  // hops
  auto* hops = app.add_subcommand("hops", "bounds on the number of stages");
  double eps_min = 0.01, eps_max = 0.5, p_r_min = 0.0;
  int eps_points = 25;
  std::vector<double> t_list = {0.01, 0.1, 1.0};
  add_common(hops, c);
  hops->add_option("--epsilon-min", eps_min);
  hops->add_option("--epsilon-max", eps_max);
  hops->add_option("--epsilon-points", eps_points);
  hops->add_option("--t-list", t_list, "SIR thresholds");
  hops->add_option("--p-r-min", p_r_min, "minimum detectable power (mW), required")
      ->required();
  hops->add_option("--gamma", gamma);
  hops->add_option("--k", k);

  // tradeoff
  auto* trade = app.add_subcommand("tradeoff", "rate outage vs energy density");
  std::vector<std::string> mode_names = {"sequential", "fd", "hd"};
  add_common(trade, c);
  trade->add_option("--k", k);
  trade->add_option("--modes", mode_names);
  trade->add_option("--rho-min", rho_min);
  trade->add_option("--rho-max", rho_max);
  trade->add_option("--rho-points", rho_points);
  trade->add_option("--gamma", gamma);
  trade->add_option("--l-max", l_max);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
  std::string experiment = "pa-power";
  double t_sir = 1.0;
  add_common(sim, c);
  sim->add_option("--experiment", experiment,
                  "pa-power|load|coverage|correlation|energy|rate");
  sim->add_option("--n-deployments", n_deployments);
  sim->add_option("--gamma", gamma);
  sim->add_option("--k", k);
  sim->add_option("--mode", mode_name);
  sim->add_option("--t", t_sir, "SIR threshold");
  sim->add_option("--region-half-width", half_width);
  sim->add_option("--rho-min", rho_min);
  sim->add_option("--rho-max", rho_max);
  sim->add_option("--rho-points", rho_points);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_energy_sweep(c, k_list, gamma_points, p_lo_variant);
    if (cov->parsed()) return cmd_coverage(c, mode_name, k, gamma, t_min, t_max, t_points);
    if (rate->parsed())
      return cmd_rate_cdf(c, mode_name, k_list, rho_min, rho_max, rho_points,
                          pmax_ratios, l_max, gamma, simulate, n_deployments,
                          half_width);
    if (hops->parsed())
      return cmd_hops(c, eps_min, eps_max, eps_points, t_list, p_r_min, gamma, k);
    if (trade->parsed())
      return cmd_tradeoff(c, k, mode_names, rho_min, rho_max, rho_points, gamma, l_max);
    if (sim->parsed())
      return cmd_simulate(c, experiment, n_deployments, gamma, k, mode_name, t_sir,
                          half_width, rho_min, rho_max, rho_points);
  } catch (const m2m::DegeneratePlanError& e) {
    std::cerr << "error_category=degenerate_plan: " << e.what() << "\n";
    return 3;
  } catch (const m2m::rate::TruncationError& e) {
    std::cerr << "error_category=truncation: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error_category=config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error_category=numeric: " << e.what() << "\n";
    return 5;
  }
  return 1;
}
