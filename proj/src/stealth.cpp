#include "rse/stealth.hpp"

#include <cmath>
#include <stdexcept>

#include "rse/attack.hpp"
#include "rse/numerics.hpp"
#include "rse/tolerances.hpp"

namespace rse {

namespace {

void check_attack_feasible(double t, double s) {
  if (!(std::abs(t) < 1.0))
    throw std::domain_error("kl_rate: |T| >= 1 is not epsilon-stealthy for any budget");
  if (s == 0.0)
    throw std::domain_error("kl_rate: S = 0 degenerates the attacked innovation (KL rate diverges)");
}

}  // namespace

void StealthBudget::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw std::invalid_argument("StealthBudget: epsilon must be finite and >= 0");
}

double kl_rate(const AttackParams& attack) {
  check_attack_feasible(attack.t_coef, attack.s_coef);
  const double t2 = attack.t_coef * attack.t_coef;
  const double s2 = attack.s_coef * attack.s_coef;
  return -0.5 - 0.5 * std::log(s2) + s2 / (2.0 * (1.0 - t2));
}

double finite_horizon_kl(const AttackParams& attack, const SteadyState& /*ss*/, long k) {
  check_attack_feasible(attack.t_coef, attack.s_coef);
  if (k < 1)
    throw std::invalid_argument("finite_horizon_kl: horizon must be >= 1");
  const double t2 = attack.t_coef * attack.t_coef;
  const double s2 = attack.s_coef * attack.s_coef;
  const double log_s2 = std::log(s2);
  double total = 0.0;
  double t2i = 1.0;  // running T^(2i)
  for (long i = 1; i <= k; ++i) {
    t2i *= t2;
    total += 0.5 * (s2 * (1.0 - t2i) / (1.0 - t2) - 1.0 - log_s2);
  }
  return total;
}

double max_feasible_T(const StealthBudget& budget) {
  budget.validate();
  return std::sqrt(-std::expm1(-2.0 * budget.epsilon));
}

SBounds solve_s_bounds(double t, const StealthBudget& budget) {
  budget.validate();
  const double t2 = t * t;
  if (!(t2 < 1.0))
    throw std::domain_error("solve_s_bounds: |T| >= 1 is infeasible for any budget");

  const double om = 1.0 - t2;  // 1 - T^2, the minimizer of g below
  // Boundary in u = S^2:  g(u) = u - om ln(u) = rhs, with rhs = (2 eps + 1) om.
  const double rhs = (2.0 * budget.epsilon + 1.0) * om;
  const double g_min = om * (1.0 - std::log(om));
  const double margin = rhs - g_min;  // = om (2 eps + ln om); >= 0 iff T^2 <= 1 - e^(-2 eps)

  const double feas_tol = 1e-12 * std::max(1.0, rhs);
  if (margin < -feas_tol)
    throw std::domain_error(
        "solve_s_bounds: T^2 exceeds 1 - e^(-2 eps); no S satisfies the budget for this T");
  if (margin <= feas_tol) {
    // Tangent case (epsilon = 0 at T = 0, or T at its maximum): double root at u = om.
    const double s = std::sqrt(om);
    return SBounds{s, s};
  }

  const auto g_residual = [om, rhs](double u) { return u - om * std::log(u) - rhs; };

  // Lower branch: g decreases on (0, om]; walk left until the residual is positive.
  double lo = 0.5 * om;
  while (g_residual(lo) < 0.0) lo *= 0.25;
  const double u_small =
      bisect(g_residual, Bracket{lo, om, g_residual(lo), -margin}, kTol.boundary);

  // Upper branch: g increases on [om, inf); walk right until the residual is positive.
  double hi = 2.0 * om + 1.0;
  while (g_residual(hi) < 0.0) hi *= 2.0;
  const double u_large =
      bisect(g_residual, Bracket{om, hi, -margin, g_residual(hi)}, kTol.boundary);

  return SBounds{std::sqrt(u_small), std::sqrt(u_large)};
}

}  // namespace rse
