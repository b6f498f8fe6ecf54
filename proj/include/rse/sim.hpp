#ifndef RSE_SIM_HPP
#define RSE_SIM_HPP

#include <cstdint>

#include "rse/attack.hpp"
#include "rse/model.hpp"

namespace rse {

/// Monte Carlo configuration. Identical configs produce bit-identical results
/// regardless of thread count.
struct SimConfig {
  std::uint64_t runs = 100000;  ///< independent trajectories
  long horizon = 500;           ///< steps per trajectory
  std::uint64_t seed = 0;       ///< master seed; run j streams from key {seed, j}
  long burn_in = 0;             ///< leading steps excluded from every accumulator

  void validate() const;  ///< runs >= 1, horizon >= 1, 0 <= burn_in < horizon
};

/// Raw per-run sums over the window k = burn_in+1 .. horizon.
struct RunAccumulators {
  double sum_err2 = 0.0;    ///< squared a-priori remote estimation errors
  double sum_zt = 0.0;      ///< transmitted z~
  double sum_zt2 = 0.0;     ///< z~^2
  double sum_zt_lag = 0.0;  ///< z~_k z~_{k-1}, both factors inside the window
  long n_samples = 0;
  long n_pairs = 0;
};

/// Monte Carlo estimates plus the configuration they came from.
struct SimResult {
  double eta_hat;          ///< p_tilde_hat / p
  double p_tilde_hat;      ///< time/ensemble average of squared a-priori remote error
  double ztilde_var_hat;   ///< empirical stationary variance of z~
  double ztilde_ac1_hat;   ///< empirical lag-1 autocorrelation of z~
  double stderr_eta;       ///< standard error of eta_hat across runs
  SimConfig config;
};

/// Consistency report of the empirical z~ moments against the AR(1) closed
/// forms Var = S^2 sigma_z^2 / (1 - T^2) and lag-1 autocorrelation T.
struct ZtildeReport {
  double var_expected;
  double ac1_expected;
  double z_var;  ///< z-score of ztilde_var_hat
  double z_ac1;  ///< z-score of ztilde_ac1_hat
};

/// One trajectory of plant, sensor-side steady-state Kalman filter, attacker
/// recursion and remote estimator, with the exact recursions and
/// x_0 ~ N(0, q / (1 - a^2)). Priors start at zero and z~_0 = 0; the first
/// transmitted innovation is z~_1.
RunAccumulators simulate_run(const SystemParams& params, const SteadyState& ss,
                             const AttackParams& attack, long horizon, long burn_in,
                             std::uint64_t master_seed, std::uint64_t run_index);

/// Averages simulate_run over config.runs trajectories. Per-run streams are
/// keyed by (config.seed, run index); the reduction is performed in ascending
/// run index, so results are bit-identical across repeats and thread counts.
/// threads = 0 picks the hardware concurrency.
SimResult monte_carlo_eta(const SystemParams& params, const SteadyState& ss,
                          const AttackParams& attack, const SimConfig& config, int threads = 0);

/// z-scores of the empirical z~ moments in `result` against their closed
/// forms, under Bartlett-style large-sample standard errors.
ZtildeReport empirical_ztilde_stats(const SimResult& result, const AttackParams& attack,
                                    const SteadyState& ss);

}  // namespace rse

#endif  // RSE_SIM_HPP
