#include "rse/model.hpp"

#include <cmath>
#include <stdexcept>

#include "rse/tolerances.hpp"

namespace rse {

void SystemParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(q) || !std::isfinite(r))
    throw std::invalid_argument("SystemParams: all coefficients must be finite");
  if (!(std::abs(a) < 1.0))
    throw std::invalid_argument("SystemParams: |a| must be < 1 (spectral radius of a stable plant)");
  if (!(r > 0.0))
    throw std::invalid_argument("SystemParams: r must be > 0 (measurement-noise variance)");
  if (!(q >= 0.0))
    throw std::invalid_argument("SystemParams: q must be >= 0 (process-noise variance)");
  if (q > 0.0 && c == 0.0)
    throw std::invalid_argument("SystemParams: c must be nonzero when q > 0 (scalar detectability)");
}

SteadyState solve_riccati(const SystemParams& params) {
  params.validate();
  const double a2 = params.a * params.a;
  const double c2 = params.c * params.c;

  double p;
  if (c2 == 0.0) {
    // No usable measurement (q == 0 here): prior variance is the stationary state variance.
    p = params.q / (1.0 - a2);
  } else {
    // Positive root of c^2 p^2 + b p - q r = 0 with b = r - c^2 q - a^2 r.
    const double b = params.r - c2 * params.q - a2 * params.r;
    const double disc = std::sqrt(b * b + 4.0 * c2 * params.q * params.r);
    // Conjugate form avoids cancellation when b > 0.
    p = (b > 0.0) ? 2.0 * params.q * params.r / (b + disc) : (disc - b) / (2.0 * c2);
  }

  // Self-check: the root must also be a fixed point of the Riccati map.
  const double mapped = a2 * p * params.r / (c2 * p + params.r) + params.q;
  if (std::abs(p - mapped) > kTol.riccati_residual * std::max(1.0, p))
    throw std::runtime_error("solve_riccati: closed-form root fails the fixed-point residual check");

  const double sigma_z2 = c2 * p + params.r;
  return SteadyState{p, p * params.c / sigma_z2, sigma_z2};
}

double degradation_scale(const SteadyState& ss, const SystemParams& params) {
  if (params.a == 0.0) return 0.0;
  if (!(ss.p > 0.0))
    throw std::invalid_argument("degradation_scale: requires p > 0 (degenerate noiseless plant)");
  const double a2 = params.a * params.a;
  return a2 * ss.k_gain * ss.k_gain * ss.sigma_z2 / ((1.0 - a2) * ss.p);
}

}  // namespace rse
