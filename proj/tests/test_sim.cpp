#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "rse/attack.hpp"
#include "rse/model.hpp"
#include "rse/sim.hpp"

using rse::AttackParams;
using rse::SimConfig;
using rse::SimResult;
using rse::SystemParams;

namespace {
const SystemParams kRefSystem{0.4, 1.0, 0.2, 0.5};
}

TEST_CASE("simulate: invalid inputs are rejected") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  CHECK_THROWS_AS(rse::simulate_run(kRefSystem, ss, {1.0, -1.0}, 100, 0, 1, 0),
                  std::domain_error);
  SimConfig bad;
  bad.runs = 0;
  CHECK_THROWS_AS(rse::monte_carlo_eta(kRefSystem, ss, {0.0, 1.0}, bad), std::invalid_argument);
  bad = SimConfig{};
  bad.burn_in = bad.horizon;
  CHECK_THROWS_AS(rse::monte_carlo_eta(kRefSystem, ss, {0.0, 1.0}, bad), std::invalid_argument);
}

TEST_CASE("simulate: noiseless static plant accumulates exactly zero error") {
  const SystemParams sp{0.5, 1.0, 0.0, 0.5};
  const rse::SteadyState ss = rse::solve_riccati(sp);
  CHECK(ss.p == 0.0);
  CHECK(ss.k_gain == 0.0);
  const rse::RunAccumulators acc = rse::simulate_run(sp, ss, {0.3, -0.8}, 200, 0, 42, 0);
  CHECK(acc.sum_err2 == 0.0);
  CHECK(acc.n_samples == 200);
}

TEST_CASE("simulate: bit-identical across repeats and thread counts") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  SimConfig cfg;
  cfg.runs = 300;
  cfg.horizon = 120;
  cfg.seed = 987654321;
  const SimResult r1 = rse::monte_carlo_eta(kRefSystem, ss, {0.3, -1.2}, cfg, 1);
  const SimResult r2 = rse::monte_carlo_eta(kRefSystem, ss, {0.3, -1.2}, cfg, 1);
  const SimResult r3 = rse::monte_carlo_eta(kRefSystem, ss, {0.3, -1.2}, cfg, 3);
  CHECK(r1.eta_hat == r2.eta_hat);
  CHECK(r1.p_tilde_hat == r2.p_tilde_hat);
  CHECK(r1.ztilde_var_hat == r2.ztilde_var_hat);
  CHECK(r1.ztilde_ac1_hat == r2.ztilde_ac1_hat);
  CHECK(r1.stderr_eta == r2.stderr_eta);
  CHECK(r1.eta_hat == r3.eta_hat);
  CHECK(r1.p_tilde_hat == r3.p_tilde_hat);
  CHECK(r1.ztilde_var_hat == r3.ztilde_var_hat);
  CHECK(r1.ztilde_ac1_hat == r3.ztilde_ac1_hat);
  CHECK(r1.stderr_eta == r3.stderr_eta);
}

TEST_CASE("simulate: no attack is statistically indistinguishable from eta = 1") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  SimConfig cfg;
  cfg.runs = 3000;
  cfg.horizon = 320;
  cfg.burn_in = 20;
  cfg.seed = 1111;
  const SimResult res = rse::monte_carlo_eta(kRefSystem, ss, {0.0, 1.0}, cfg);
  CHECK(res.stderr_eta > 0.0);
  CHECK(std::abs(res.eta_hat - 1.0) <= 4.0 * res.stderr_eta);
}

TEST_CASE("simulate: strict attack matches the analytic degradation") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  SimConfig cfg;
  cfg.runs = 4000;
  cfg.horizon = 320;
  cfg.burn_in = 20;
  cfg.seed = 2222;
  const SimResult res = rse::monte_carlo_eta(kRefSystem, ss, {0.0, -1.0}, cfg);
  CHECK(std::abs(res.eta_hat - 1.236317912911087) <= 4.0 * res.stderr_eta);
}

TEST_CASE("simulate: empirical degradation matches 1 + J c0 on random feasible pairs") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  const double c0 = rse::degradation_scale(ss, kRefSystem);
  std::mt19937 gen(3141u);
  std::uniform_real_distribution<double> ut(-0.7, 0.7);
  std::uniform_real_distribution<double> us(0.2, 1.8);
  for (int i = 0; i < 8; ++i) {
    const AttackParams attack{ut(gen), us(gen) * (gen() % 2 ? 1.0 : -1.0)};
    SimConfig cfg;
    cfg.runs = 1200;
    cfg.horizon = 440;
    cfg.burn_in = 40;
    cfg.seed = 5000 + static_cast<std::uint64_t>(i);
    const SimResult res = rse::monte_carlo_eta(kRefSystem, ss, attack, cfg);
    const double eta_analytic = 1.0 + rse::objective_j(attack, kRefSystem.a) * c0;
    CHECK(std::abs(res.eta_hat - eta_analytic) <= 4.0 * res.stderr_eta);
  }
}

TEST_CASE("ztilde stats: sign flip keeps the nominal moments") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  SimConfig cfg;
  cfg.runs = 1500;
  cfg.horizon = 260;
  cfg.burn_in = 10;
  cfg.seed = 777;
  const AttackParams attack{0.0, -1.0};
  const SimResult res = rse::monte_carlo_eta(kRefSystem, ss, attack, cfg);
  const rse::ZtildeReport rep = rse::empirical_ztilde_stats(res, attack, ss);
  CHECK(rep.var_expected == ss.sigma_z2);
  CHECK(rep.ac1_expected == 0.0);
  CHECK(std::abs(rep.z_var) <= 4.0);
  CHECK(std::abs(rep.z_ac1) <= 4.0);
}

TEST_CASE("ztilde stats: AR(1) variance and lag-1 autocorrelation closed forms") {
  const rse::SteadyState ss = rse::solve_riccati(kRefSystem);
  SimConfig cfg;
  cfg.runs = 2000;
  cfg.horizon = 550;
  cfg.burn_in = 50;
  cfg.seed = 424242;
  const AttackParams attack{0.6, -0.5};
  const SimResult res = rse::monte_carlo_eta(kRefSystem, ss, attack, cfg);
  const rse::ZtildeReport rep = rse::empirical_ztilde_stats(res, attack, ss);
  CHECK(rep.var_expected == doctest::Approx(0.28313022689674376).epsilon(1e-12));
  CHECK(rep.ac1_expected == 0.6);
  CHECK(std::abs(rep.z_var) <= 4.0);
  CHECK(std::abs(rep.z_ac1) <= 4.0);
  CHECK(rse::kl_rate(attack) == doctest::Approx(0.38845968055994531).epsilon(1e-13));
}
