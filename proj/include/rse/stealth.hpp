#ifndef RSE_STEALTH_HPP
#define RSE_STEALTH_HPP

#include "rse/model.hpp"

namespace rse {

struct AttackParams;  // attack.hpp

/// KL-rate budget in nats per transmitted innovation.
struct StealthBudget {
  double epsilon;  ///< >= 0

  void validate() const;  ///< throws std::invalid_argument on epsilon < 0 or non-finite
};

/// The two positive roots in S of the constraint boundary kl_rate(T, S) = epsilon
/// for a fixed T. Always 0 < s_small <= sqrt(1 - T^2) <= s_large.
struct SBounds {
  double s_small;
  double s_large;
};

/// Per-step KL divergence rate of the attacked innovation process from the
/// nominal one:  -1/2 - ln(S^2)/2 + S^2 / (2 (1 - T^2)).
/// Requires |T| < 1 (throws infeasible-T otherwise) and S != 0 (rate diverges).
double kl_rate(const AttackParams& attack);

/// Exact Gaussian KL divergence of the first k attacked innovations from k
/// nominal ones:
///   D_k = (1/2) sum_{i=1..k} [ S^2 (1 - T^(2i)) / (1 - T^2) - 1 - ln S^2 ].
/// D_k / k increases to kl_rate from below; the gap is at most
/// S^2 T^2 / (2 k (1 - T^2)^2). The innovation variance cancels between the
/// two processes, so the SteadyState argument does not affect the value.
double finite_horizon_kl(const AttackParams& attack, const SteadyState& ss, long k);

/// Largest |T| admitting any feasible S under the budget: sqrt(1 - e^(-2 eps)).
double max_feasible_T(const StealthBudget& budget);

/// Solves the boundary equation kl_rate(T, S) = epsilon for its two positive
/// roots in S, by bisection in u = S^2 on the two monotone branches of
/// u - (1 - T^2) ln u on either side of the minimizer u = 1 - T^2.
/// Requires T^2 <= 1 - e^(-2 eps); throws infeasible-T otherwise.
/// At epsilon = 0 (and at the tangent T) the roots coincide and are returned
/// exactly without bisection.
SBounds solve_s_bounds(double t, const StealthBudget& budget);

}  // namespace rse

#endif  // RSE_STEALTH_HPP
