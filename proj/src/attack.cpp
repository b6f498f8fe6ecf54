#include "rse/attack.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rse/numerics.hpp"
#include "rse/tolerances.hpp"

namespace rse {

const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::strict: return "strict";
    case Strategy::optimal: return "optimal";
    case Strategy::baseline_t0: return "baseline-t0";
    case Strategy::custom: return "custom";
  }
  return "custom";
}

double objective_j(const AttackParams& attack, double a) {
  const double t = attack.t_coef;
  const double s = attack.s_coef;
  if (!(std::abs(t) < 1.0))
    throw std::domain_error("objective_j: |T| >= 1 is infeasible");
  const double om = 1.0 - t * t;
  return (1.0 - s) * (1.0 - s) + t * t * s * s / om
         - 2.0 * a * t * s * (1.0 - s - t * t) / (om * (1.0 - a * t));
}

double f_of_s(double s, const StealthBudget& budget) {
  budget.validate();
  const double eps = budget.epsilon;
  const double s_right = -std::exp(-eps);  // right end of the bracket
  if (!(s < 0.0) || s > s_right + 1e-12 * std::max(1.0, -s_right))
    throw std::domain_error("f_of_s: S must lie in [-s_large(T=0), -e^(-eps)]");
  const double d = 2.0 * eps + 1.0 + std::log(s * s);  // >= 1 on the bracket
  const double radicand = 1.0 - s * s / d;
  if (radicand < -1e-10)
    throw std::domain_error("f_of_s: S lies left of -s_large(T=0) (negative radicand)");
  return std::sqrt(std::max(0.0, radicand));
}

double j1_of_s(double s, const StealthBudget& budget, double a) {
  const double f = f_of_s(s, budget);
  const double d = 2.0 * budget.epsilon + 1.0 + std::log(s * s);
  const double den = 1.0 - a * f;
  return -(d - 1.0) - 2.0 * s / den + 2.0 * d / den;
}

double dj1_ds(double s, const StealthBudget& budget, double a) {
  const double f = f_of_s(s, budget);
  const double d = 2.0 * budget.epsilon + 1.0 + std::log(s * s);
  const double fp = -(s * (d - 1.0)) / (d * d) / f;  // f'(S); infinite where f = 0
  const double den = s * (1.0 - a * f) * (1.0 - a * f);
  return -2.0 * (a * a * f * f + s - a * s * f - 1.0) / den
         - 2.0 * (s * s - s * d) * a * fp / den;
}

namespace {

AttackSolution make_solution(const SystemParams& params, const SteadyState& ss,
                             const AttackParams& attack, Strategy strategy) {
  const double j = objective_j(attack, params.a);
  return AttackSolution{attack, j, 1.0 + j * degradation_scale(ss, params), kl_rate(attack),
                        strategy};
}

}  // namespace

AttackSolution solve_strict(const SystemParams& params) {
  const SteadyState ss = solve_riccati(params);
  return make_solution(params, ss, AttackParams{0.0, -1.0}, Strategy::strict);
}

AttackSolution solve_baseline_t0(const SystemParams& params, const StealthBudget& budget) {
  const SteadyState ss = solve_riccati(params);
  const SBounds bounds = solve_s_bounds(0.0, budget);
  return make_solution(params, ss, AttackParams{0.0, -bounds.s_large}, Strategy::baseline_t0);
}

AttackSolution solve_optimal(const SystemParams& params, const StealthBudget& budget,
                             int grid_points) {
  params.validate();
  budget.validate();
  if (params.a == 0.0)
    throw std::domain_error("solve_optimal: a = 0 leaves eta = 1 for every attack");
  const SteadyState ss = solve_riccati(params);

  if (budget.epsilon == 0.0) {
    // Zero budget forces the strictly stealthy pair.
    return make_solution(params, ss, AttackParams{0.0, -1.0}, Strategy::optimal);
  }

  // Optimize with |a|; J is invariant under (a, T) -> (-a, -T), so the sign
  // of T is restored afterwards.
  const double a = std::abs(params.a);
  const double lo = -solve_s_bounds(0.0, budget).s_large;
  const double hi = -std::exp(-budget.epsilon);
  const auto deriv = [&](double s) { return dj1_ds(s, budget, a); };

  std::vector<double> candidates{lo, hi};
  for (const Bracket& b : grid_sign_scan(deriv, lo, hi, grid_points))
    candidates.push_back(bisect(deriv, b, kTol.stationary));

  double best_s = lo;
  double best_j1 = -std::numeric_limits<double>::infinity();
  for (const double s : candidates) {
    const double j1 = j1_of_s(s, budget, a);
    if (j1 > best_j1) {
      best_j1 = j1;
      best_s = s;
    }
  }

  const double t_opt = f_of_s(best_s, budget) * (params.a > 0.0 ? 1.0 : -1.0);
  return make_solution(params, ss, AttackParams{t_opt, best_s}, Strategy::optimal);
}

double eta_of(const AttackParams& attack, const SteadyState& ss, const SystemParams& params) {
  return 1.0 + objective_j(attack, params.a) * degradation_scale(ss, params);
}

}  // namespace rse
