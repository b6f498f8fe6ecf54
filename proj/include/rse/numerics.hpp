#ifndef RSE_NUMERICS_HPP
#define RSE_NUMERICS_HPP

#include <stdexcept>
#include <utility>
#include <vector>

namespace rse {

/// Root bracket: an interval [lo, hi] with the function values at its ends.
/// For root finding the values must not share a strict sign (f_lo * f_hi <= 0).
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Deterministic midpoint bisection on a sign-change bracket. Shrinks the
/// interval to width <= tol and returns its midpoint. Endpoints that are
/// already exact roots are returned as-is.
template <class F>
double bisect(F&& f, const Bracket& b, double tol) {
  if (!(b.lo < b.hi))
    throw std::invalid_argument("bisect: bracket requires lo < hi");
  if (b.f_lo * b.f_hi > 0.0)
    throw std::invalid_argument("bisect: f(lo) and f(hi) must not share a sign");
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;

  double lo = b.lo, hi = b.hi;
  double f_lo = b.f_lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer representable
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) != (f_mid < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Evaluate f on an n-point uniform grid over [lo, hi] and return every
/// adjacent pair where f changes sign or touches zero, in ascending order.
/// A zero at a grid point is reported in exactly one bracket.
template <class F>
std::vector<Bracket> grid_sign_scan(F&& f, double lo, double hi, int n) {
  if (!(lo < hi))
    throw std::invalid_argument("grid_sign_scan: requires lo < hi");
  if (n < 2)
    throw std::invalid_argument("grid_sign_scan: grid needs at least 2 points");

  std::vector<Bracket> out;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i < n; ++i) {
    const double x = (i == n - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    const double fx = f(x);
    const bool crosses = (f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0);
    const bool touches = fx == 0.0 || (f_prev == 0.0 && i == 1);
    if (crosses || touches) out.push_back(Bracket{x_prev, x, f_prev, fx});
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

}  // namespace rse

#endif  // RSE_NUMERICS_HPP
