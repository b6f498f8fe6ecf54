#include "rse/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rse/rng.hpp"

namespace rse {

void SimConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("SimConfig: runs must be >= 1");
  if (horizon < 1) throw std::invalid_argument("SimConfig: horizon must be >= 1");
  if (burn_in < 0 || burn_in >= horizon)
    throw std::invalid_argument("SimConfig: burn_in must satisfy 0 <= burn_in < horizon");
}

RunAccumulators simulate_run(const SystemParams& params, const SteadyState& ss,
                             const AttackParams& attack, long horizon, long burn_in,
                             std::uint64_t master_seed, std::uint64_t run_index) {
  if (!(std::abs(attack.t_coef) < 1.0))
    throw std::domain_error("simulate_run: |T| >= 1 makes the attacker recursion unstable");
  if (horizon < 1) throw std::invalid_argument("simulate_run: horizon must be >= 1");

  const double a = params.a;
  const double c = params.c;
  const double k_gain = ss.k_gain;
  const double t = attack.t_coef;
  const double s = attack.s_coef;
  const double w_std = std::sqrt(params.q);
  const double v_std = std::sqrt(params.r);

  Philox4x64 rng(master_seed, run_index);

  double x = rng.next_gaussian() * std::sqrt(params.q / (1.0 - a * a));  // stationary x_0
  double xhat = 0.0;      // nominal a-priori estimate x^_{k|k-1}
  double xhat_atk = 0.0;  // remote a-priori estimate under attack
  double zt_prev = 0.0;   // z~_{k-1}; zero for k <= 0

  RunAccumulators acc;
  bool prev_in_window = false;
  for (long k = 1; k <= horizon; ++k) {
    x = a * x + w_std * rng.next_gaussian();
    const double y = c * x + v_std * rng.next_gaussian();
    const double z = y - c * xhat;           // sensor-side innovation
    const double zt = t * zt_prev + s * z;   // transmitted innovation

    if (k > burn_in) {
      const double err = x - xhat_atk;
      acc.sum_err2 += err * err;
      acc.sum_zt += zt;
      acc.sum_zt2 += zt * zt;
      ++acc.n_samples;
      if (prev_in_window) {
        acc.sum_zt_lag += zt * zt_prev;
        ++acc.n_pairs;
      }
      prev_in_window = true;
    }

    xhat = a * (xhat + k_gain * z);
    xhat_atk = a * (xhat_atk + k_gain * zt);
    zt_prev = zt;
  }
  return acc;
}

SimResult monte_carlo_eta(const SystemParams& params, const SteadyState& ss,
                          const AttackParams& attack, const SimConfig& config, int threads) {
  params.validate();
  config.validate();
  if (!(std::abs(attack.t_coef) < 1.0))
    throw std::domain_error("monte_carlo_eta: |T| >= 1 makes the attacker recursion unstable");

  const std::uint64_t runs = config.runs;
  std::vector<RunAccumulators> per_run(runs);

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  if (n_threads > runs) n_threads = static_cast<unsigned>(runs);

  const auto worker = [&](std::atomic<std::uint64_t>& next) {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= runs) return;
      per_run[i] =
          simulate_run(params, ss, attack, config.horizon, config.burn_in, config.seed, i);
    }
  };

  if (n_threads <= 1) {
    for (std::uint64_t i = 0; i < runs; ++i)
      per_run[i] = simulate_run(params, ss, attack, config.horizon, config.burn_in, config.seed, i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker, std::ref(next));
    for (std::thread& th : pool) th.join();
  }

  // Ascending-index reduction: bit-identical regardless of scheduling.
  const double window = static_cast<double>(config.horizon - config.burn_in);
  double total_err2 = 0.0, total_zt = 0.0, total_zt2 = 0.0, total_lag = 0.0;
  long n_samples = 0, n_pairs = 0;
  double sum_eta = 0.0, sum_eta2 = 0.0;
  for (std::uint64_t i = 0; i < runs; ++i) {
    const RunAccumulators& acc = per_run[i];
    total_err2 += acc.sum_err2;
    total_zt += acc.sum_zt;
    total_zt2 += acc.sum_zt2;
    total_lag += acc.sum_zt_lag;
    n_samples += acc.n_samples;
    n_pairs += acc.n_pairs;
    const double eta_i = acc.sum_err2 / window / ss.p;
    sum_eta += eta_i;
    sum_eta2 += eta_i * eta_i;
  }

  SimResult result;
  result.config = config;
  result.p_tilde_hat = total_err2 / (static_cast<double>(runs) * window);
  result.eta_hat = result.p_tilde_hat / ss.p;

  const double n = static_cast<double>(n_samples);
  const double zt_mean = total_zt / n;
  result.ztilde_var_hat = total_zt2 / n - zt_mean * zt_mean;
  result.ztilde_ac1_hat =
      n_pairs > 0 && result.ztilde_var_hat > 0.0
          ? (total_lag / static_cast<double>(n_pairs) - zt_mean * zt_mean) / result.ztilde_var_hat
          : 0.0;

  if (runs > 1) {
    const double mean_eta = sum_eta / static_cast<double>(runs);
    const double var_eta =
        std::max(0.0, (sum_eta2 - static_cast<double>(runs) * mean_eta * mean_eta) /
                          (static_cast<double>(runs) - 1.0));
    result.stderr_eta = std::sqrt(var_eta / static_cast<double>(runs));
  } else {
    result.stderr_eta = 0.0;
  }
  return result;
}

ZtildeReport empirical_ztilde_stats(const SimResult& result, const AttackParams& attack,
                                    const SteadyState& ss) {
  const double t = attack.t_coef;
  const double s = attack.s_coef;
  if (s == 0.0)
    throw std::domain_error("empirical_ztilde_stats: S = 0 is a degenerate attack");
  const double t2 = t * t;

  ZtildeReport report;
  report.var_expected = s * s * ss.sigma_z2 / (1.0 - t2);
  report.ac1_expected = t;

  const double n = static_cast<double>(result.config.runs) *
                   static_cast<double>(result.config.horizon - result.config.burn_in);
  // Gaussian AR(1): Var(sample variance) ~ 2 var^2 (1 + T^2) / (n (1 - T^2)),
  // sd(lag-1 autocorrelation) ~ sqrt((1 - T^2) / n).
  const double sd_var = report.var_expected * std::sqrt(2.0 * (1.0 + t2) / (n * (1.0 - t2)));
  const double sd_ac1 = std::sqrt((1.0 - t2) / n);
  report.z_var = (result.ztilde_var_hat - report.var_expected) / sd_var;
  report.z_ac1 = (result.ztilde_ac1_hat - report.ac1_expected) / sd_ac1;
  return report;
}

}  // namespace rse
