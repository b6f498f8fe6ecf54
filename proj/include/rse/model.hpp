#ifndef RSE_MODEL_HPP
#define RSE_MODEL_HPP

namespace rse {

/// Scalar LTI plant and sensor:
///   x_{k+1} = a x_k + w_k,   w_k ~ N(0, q)
///   y_k     = c x_k + v_k,   v_k ~ N(0, r)
/// Stability (|a| < 1) is required throughout; unstable plants are out of scope.
struct SystemParams {
  double a;  ///< state coefficient, |a| < 1
  double c;  ///< output coefficient, nonzero whenever q > 0
  double q;  ///< process-noise variance, q >= 0
  double r;  ///< measurement-noise variance, r > 0

  /// Throws std::invalid_argument naming the violated assumption.
  void validate() const;
};

/// Steady-state Kalman filter quantities derived from SystemParams.
struct SteadyState {
  double p;         ///< a-priori MMSE error variance (fixed point of the Riccati map)
  double k_gain;    ///< steady Kalman gain p c / (c^2 p + r)
  double sigma_z2;  ///< innovation variance c^2 p + r
};

/// Unique nonnegative fixed point of p = a^2 p r / (c^2 p + r) + q, obtained as
/// the positive root of c^2 p^2 + (r - c^2 q - a^2 r) p - q r = 0 and confirmed
/// against the fixed-point map to kTol.riccati_residual (relative).
SteadyState solve_riccati(const SystemParams& params);

/// Multiplier c0 = a^2 k^2 sigma_z^2 / ((1 - a^2) p) converting the attack
/// objective J into excess degradation: eta = 1 + J * c0. Zero when a == 0
/// (no attack degrades a memoryless plant).
double degradation_scale(const SteadyState& ss, const SystemParams& params);

}  // namespace rse

#endif  // RSE_MODEL_HPP
