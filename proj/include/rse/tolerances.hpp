#ifndef RSE_TOLERANCES_HPP
#define RSE_TOLERANCES_HPP

namespace rse {

/// Central numeric tolerances and scan sizes used across the library.
struct Tolerances {
  double riccati_residual = 1e-10;  ///< relative fixed-point residual for the steady-state variance
  double boundary = 1e-12;          ///< absolute bisection tolerance in u = S^2 for constraint-boundary roots
  double stationary = 1e-12;        ///< absolute bisection tolerance in S for stationary points of J1
  double constraint = 1e-9;         ///< |kl - epsilon| slack required of returned boundary solutions
};

inline constexpr Tolerances kTol{};

/// Default grid size for locating sign changes of dJ1/dS over the S bracket.
inline constexpr int kScanGridDefault = 2048;

}  // namespace rse

#endif  // RSE_TOLERANCES_HPP
