// rse-attack: design and simulate stealthy linear attacks on scalar remote
// state estimation. Subcommands: steady, solve, sweep, simulate, kl.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rse/attack.hpp"
#include "rse/model.hpp"
#include "rse/rng.hpp"
#include "rse/sim.hpp"
#include "rse/stealth.hpp"

namespace {

constexpr int kAnalyticDigits = 12;  // significant digits for analytic values
constexpr int kMonteCarloDigits = 6; // significant digits for Monte Carlo estimates

/// Round to a fixed number of significant digits so JSON output carries the
/// documented precision (the dump of the rounded double is its shortest form).
double round_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string fmt_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

struct SystemFlags {
  rse::SystemParams params{0.4, 1.0, 0.2, 0.5};

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", params.a, "state coefficient a, |a| < 1")->capture_default_str();
    cmd->add_option("--c", params.c, "output coefficient c")->capture_default_str();
    cmd->add_option("--q", params.q, "process-noise variance q >= 0")->capture_default_str();
    cmd->add_option("--r", params.r, "measurement-noise variance r > 0")->capture_default_str();
  }
};

int default_threads() {
  if (const char* env = std::getenv("RSE_ATTACK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // let the simulator pick hardware concurrency
}

nlohmann::ordered_json solution_json(const rse::AttackSolution& sol) {
  nlohmann::ordered_json j;
  j["T"] = round_sig(sol.params.t_coef, kAnalyticDigits);
  j["S"] = round_sig(sol.params.s_coef, kAnalyticDigits);
  j["J"] = round_sig(sol.j_value, kAnalyticDigits);
  j["eta"] = round_sig(sol.eta_analytic, kAnalyticDigits);
  j["kl"] = round_sig(sol.kl, kAnalyticDigits);
  j["strategy"] = rse::strategy_name(sol.strategy);
  return j;
}

rse::AttackSolution solve_by_name(const std::string& strategy, const rse::SystemParams& params,
                                  double epsilon) {
  const rse::StealthBudget budget{epsilon};
  if (strategy == "strict") return rse::solve_strict(params);
  if (strategy == "optimal") return rse::solve_optimal(params, budget);
  if (strategy == "baseline-t0") return rse::solve_baseline_t0(params, budget);
  throw std::invalid_argument("unknown strategy '" + strategy +
                              "' (expected strict, optimal or baseline-t0)");
}

struct EpsilonRange {
  double lo = 0.0, hi = 1.0, step = 0.1;
};

EpsilonRange parse_epsilon_range(const std::string& text) {
  EpsilonRange range;
  char trailing;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &range.lo, &range.hi, &range.step, &trailing) != 3)
    throw std::invalid_argument("--epsilons expects lo:hi:step, e.g. 0:1:0.1");
  if (range.lo < 0.0) throw std::invalid_argument("--epsilons: lo must be >= 0");
  if (!(range.step > 0.0)) throw std::invalid_argument("--epsilons: step must be > 0");
  return range;
}

std::vector<double> expand(const EpsilonRange& range) {
  std::vector<double> out;
  const double slack = 1e-9 * range.step;
  for (long i = 0;; ++i) {
    const double eps = range.lo + static_cast<double>(i) * range.step;
    if (eps > range.hi + slack) break;
    out.push_back(eps);
  }
  return out;
}

int cmd_steady(const SystemFlags& sys, bool as_json) {
  const rse::SteadyState ss = rse::solve_riccati(sys.params);
  if (as_json) {
    nlohmann::ordered_json j;
    j["p"] = round_sig(ss.p, kAnalyticDigits);
    j["k_gain"] = round_sig(ss.k_gain, kAnalyticDigits);
    j["sigma_z2"] = round_sig(ss.sigma_z2, kAnalyticDigits);
    std::cout << j.dump() << "\n";
  } else {
    std::printf("p        = %s\n", fmt_sig(ss.p, kAnalyticDigits).c_str());
    std::printf("k_gain   = %s\n", fmt_sig(ss.k_gain, kAnalyticDigits).c_str());
    std::printf("sigma_z2 = %s\n", fmt_sig(ss.sigma_z2, kAnalyticDigits).c_str());
  }
  return 0;
}

int cmd_solve(const SystemFlags& sys, const std::string& strategy, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("--epsilon must be >= 0");
  std::cout << solution_json(solve_by_name(strategy, sys.params, epsilon)).dump() << "\n";
  return 0;
}

int cmd_kl(double t, double s, std::optional<long> horizon) {
  const rse::AttackParams attack{t, s};
  nlohmann::ordered_json j;
  j["kl_rate"] = round_sig(rse::kl_rate(attack), kAnalyticDigits);
  if (horizon) {
    const rse::SteadyState ss{};  // the rate is scale-free; ss does not enter
    const double total = rse::finite_horizon_kl(attack, ss, *horizon);
    j["horizon"] = *horizon;
    j["finite_horizon_kl"] = round_sig(total, kAnalyticDigits);
    j["per_step"] = round_sig(total / static_cast<double>(*horizon), kAnalyticDigits);
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_simulate(const SystemFlags& sys, std::optional<double> t, std::optional<double> s,
                 std::optional<std::string> strategy, double epsilon, rse::SimConfig config,
                 int threads) {
  rse::AttackParams attack{0.0, -1.0};
  if (strategy) {
    if (t || s)
      throw std::invalid_argument("give either --strategy or the pair --t/--s, not both");
    attack = solve_by_name(*strategy, sys.params, epsilon).params;
  } else if (t && s) {
    attack = rse::AttackParams{*t, *s};
  } else {
    throw std::invalid_argument("attack unspecified: pass --t and --s, or --strategy");
  }

  const rse::SteadyState ss = rse::solve_riccati(sys.params);
  const rse::SimResult res = rse::monte_carlo_eta(sys.params, ss, attack, config, threads);

  nlohmann::ordered_json j;
  j["eta_hat"] = round_sig(res.eta_hat, kMonteCarloDigits);
  j["p_tilde_hat"] = round_sig(res.p_tilde_hat, kMonteCarloDigits);
  j["ztilde_var_hat"] = round_sig(res.ztilde_var_hat, kMonteCarloDigits);
  j["ztilde_ac1_hat"] = round_sig(res.ztilde_ac1_hat, kMonteCarloDigits);
  j["stderr_eta"] = round_sig(res.stderr_eta, kMonteCarloDigits);
  j["T"] = round_sig(attack.t_coef, kAnalyticDigits);
  j["S"] = round_sig(attack.s_coef, kAnalyticDigits);
  j["seed"] = config.seed;
  j["rng_family"] = rse::kRngFamily;
  j["runs"] = config.runs;
  j["horizon"] = config.horizon;
  j["burn_in"] = config.burn_in;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_sweep(const SystemFlags& sys, const std::string& epsilons, const std::string& out_path,
              bool with_mc, rse::SimConfig config, int threads) {
  const std::vector<double> grid = expand(parse_epsilon_range(epsilons));

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file)
      throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out = &file;
  }

  *out << "epsilon,t_opt,s_opt,j_opt,eta_optimal_analytic,eta_baseline_analytic";
  if (with_mc) *out << ",eta_optimal_mc,eta_baseline_mc,stderr_eta_optimal_mc,stderr_eta_baseline_mc";
  *out << "\n";

  const rse::SteadyState ss = rse::solve_riccati(sys.params);
  std::uint64_t row = 0;
  for (const double eps : grid) {
    const rse::StealthBudget budget{eps};
    const rse::AttackSolution opt = rse::solve_optimal(sys.params, budget);
    const rse::AttackSolution base = rse::solve_baseline_t0(sys.params, budget);
    *out << fmt_sig(eps, kAnalyticDigits) << ',' << fmt_sig(opt.params.t_coef, kAnalyticDigits)
         << ',' << fmt_sig(opt.params.s_coef, kAnalyticDigits) << ','
         << fmt_sig(opt.j_value, kAnalyticDigits) << ','
         << fmt_sig(opt.eta_analytic, kAnalyticDigits) << ','
         << fmt_sig(base.eta_analytic, kAnalyticDigits);
    if (with_mc) {
      // Deterministic per-row master seeds keep rows independent but reproducible.
      rse::SimConfig cfg_opt = config;
      cfg_opt.seed = config.seed + 2 * row;
      rse::SimConfig cfg_base = config;
      cfg_base.seed = config.seed + 2 * row + 1;
      const rse::SimResult mc_opt = rse::monte_carlo_eta(sys.params, ss, opt.params, cfg_opt, threads);
      const rse::SimResult mc_base =
          rse::monte_carlo_eta(sys.params, ss, base.params, cfg_base, threads);
      *out << ',' << fmt_sig(mc_opt.eta_hat, kMonteCarloDigits) << ','
           << fmt_sig(mc_base.eta_hat, kMonteCarloDigits) << ','
           << fmt_sig(mc_opt.stderr_eta, kMonteCarloDigits) << ','
           << fmt_sig(mc_base.stderr_eta, kMonteCarloDigits);
    }
    *out << "\n";
    ++row;
  }
  out->flush();
  if (out->fail())
    throw std::runtime_error("writing sweep output failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stealthy linear attack design on scalar remote state estimation"};
  app.require_subcommand(1);

  // steady
  auto* steady = app.add_subcommand("steady", "Steady-state Kalman filter quantities");
  SystemFlags steady_sys;
  steady_sys.attach(steady);
  bool steady_json = false;
  steady->add_flag("--json", steady_json, "emit JSON instead of aligned text");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve for an attack pair under a KL budget");
  SystemFlags solve_sys;
  solve_sys.attach(solve);
  std::string solve_strategy;
  double solve_epsilon = 0.0;
  solve->add_option("--strategy", solve_strategy, "strict | optimal | baseline-t0")->required();
  solve->add_option("--epsilon", solve_epsilon, "KL rate budget (nats/step)")
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV sweep of optimal and baseline attacks over epsilon");
  SystemFlags sweep_sys;
  sweep_sys.attach(sweep);
  std::string sweep_epsilons = "0:1:0.1";
  std::string sweep_out;
  bool sweep_mc = false;
  rse::SimConfig sweep_cfg;
  int sweep_threads = default_threads();
  sweep->add_option("--epsilons", sweep_epsilons, "range lo:hi:step")->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV path (default: stdout)");
  sweep->add_flag("--mc", sweep_mc, "append Monte Carlo eta columns");
  sweep->add_option("--runs", sweep_cfg.runs, "Monte Carlo runs per row")->capture_default_str();
  sweep->add_option("--horizon", sweep_cfg.horizon, "steps per run")->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.seed, "master seed")->capture_default_str();
  sweep->add_option("--burn-in", sweep_cfg.burn_in, "steps excluded from averages")
      ->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "worker threads (env RSE_ATTACK_THREADS)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the degradation ratio");
  SystemFlags sim_sys;
  sim_sys.attach(simulate);
  std::optional<double> sim_t, sim_s;
  std::optional<std::string> sim_strategy;
  double sim_epsilon = 0.0;
  rse::SimConfig sim_cfg;
  int sim_threads = default_threads();
  simulate->add_option("--t", sim_t, "attack coefficient T, |T| < 1");
  simulate->add_option("--s", sim_s, "attack gain S");
  simulate->add_option("--strategy", sim_strategy, "strict | optimal | baseline-t0");
  simulate->add_option("--epsilon", sim_epsilon, "budget for --strategy")->capture_default_str();
  simulate->add_option("--runs", sim_cfg.runs, "independent trajectories")->capture_default_str();
  simulate->add_option("--horizon", sim_cfg.horizon, "steps per trajectory")->capture_default_str();
  simulate->add_option("--seed", sim_cfg.seed, "master seed")->capture_default_str();
  simulate->add_option("--burn-in", sim_cfg.burn_in, "steps excluded from averages")
      ->capture_default_str();
  simulate->add_option("--threads", sim_threads, "worker threads (env RSE_ATTACK_THREADS)");

  // kl
  auto* kl = app.add_subcommand("kl", "KL divergence rate of an attack pair");
  double kl_t = 0.0, kl_s = 0.0;
  std::optional<long> kl_horizon;
  kl->add_option("--t", kl_t, "attack coefficient T")->required();
  kl->add_option("--s", kl_s, "attack gain S")->required();
  kl->add_option("--horizon", kl_horizon, "also report the exact k-step divergence");

  CLI11_PARSE(app, argc, argv);

  try {
    if (steady->parsed()) return cmd_steady(steady_sys, steady_json);
    if (solve->parsed()) return cmd_solve(solve_sys, solve_strategy, solve_epsilon);
    if (sweep->parsed())
      return cmd_sweep(sweep_sys, sweep_epsilons, sweep_out, sweep_mc, sweep_cfg, sweep_threads);
    if (simulate->parsed())
      return cmd_simulate(sim_sys, sim_t, sim_s, sim_strategy, sim_epsilon, sim_cfg, sim_threads);
    if (kl->parsed()) return cmd_kl(kl_t, kl_s, kl_horizon);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
