#ifndef RSE_ATTACK_HPP
#define RSE_ATTACK_HPP

#include "rse/model.hpp"
#include "rse/stealth.hpp"
#include "rse/tolerances.hpp"

namespace rse {

/// Linear innovation attack z~_k = T z~_{k-1} + S z_k (z~_0 = 0).
struct AttackParams {
  double t_coef;  ///< recursion coefficient T; |T| < 1 for any epsilon-stealthy attack
  double s_coef;  ///< innovation gain S
};

enum class Strategy { strict, optimal, baseline_t0, custom };

/// Stable label: "strict", "optimal", "baseline-t0" or "custom".
const char* strategy_name(Strategy strategy);

/// An attack pair together with its objective value and analytic consequences.
struct AttackSolution {
  AttackParams params;
  double j_value;       ///< degradation objective J(T, S)
  double eta_analytic;  ///< 1 + J * c0, c0 from degradation_scale
  double kl;            ///< achieved KL rate, nats per step
  Strategy strategy;
};

/// Degradation objective
///   J(T, S) = (1 - S)^2 + T^2 S^2 / (1 - T^2)
///             - 2 a T S (1 - S - T^2) / ((1 - T^2)(1 - a T)).
/// eta = 1 + J * c0. Requires |T| < 1.
double objective_j(const AttackParams& attack, double a);

/// T on the constraint boundary as a function of S:
///   f(S) = sqrt(1 - S^2 / (2 eps + 1 + ln S^2)),
/// valid on the bracket -s_large(T=0) <= S <= -e^(-eps) where the radicand
/// lies in [0, 1 - e^(-2 eps)]. Throws std::domain_error outside.
double f_of_s(double s, const StealthBudget& budget);

/// Objective restricted to the constraint boundary, J1(S) = J(f(S), S):
///   J1(S) = -(2 eps + ln S^2) - 2 S / (1 - a f(S)) + 2 (2 eps + 1 + ln S^2) / (1 - a f(S)).
double j1_of_s(double s, const StealthBudget& budget, double a);

/// Closed-form dJ1/dS. Unbounded (positive) at the left end of the bracket,
/// where f -> 0 and f' has a square-root singularity.
double dj1_ds(double s, const StealthBudget& budget, double a);

/// Strictly stealthy optimum: (T, S) = (0, -1), J = 4, KL rate 0.
AttackSolution solve_strict(const SystemParams& params);

/// Best memoryless attack under the budget: T = 0, S = -s_large(T=0, eps),
/// J = (1 - S)^2. Collapses to the strict solution at epsilon = 0.
AttackSolution solve_baseline_t0(const SystemParams& params, const StealthBudget& budget);

/// Constrained optimum over the boundary: scans dJ1/dS for sign changes on a
/// uniform grid over [-s_large(T=0), -e^(-eps)], refines each by bisection,
/// and returns the J1-maximizing candidate (stationary points and endpoints).
/// T_opt carries the sign of a; the KL constraint holds with equality.
/// Requires a != 0 (every attack leaves eta = 1 when a = 0).
AttackSolution solve_optimal(const SystemParams& params, const StealthBudget& budget,
                             int grid_points = kScanGridDefault);

/// Degradation ratio of an arbitrary feasible pair: eta = 1 + J(T, S) * c0.
double eta_of(const AttackParams& attack, const SteadyState& ss, const SystemParams& params);

}  // namespace rse

#endif  // RSE_ATTACK_HPP
