#pragma once

#include <cmath>
#include <functional>

// Adaptive Simpson quadrature with Richardson extrapolation. Used by the
// oracles and the verification suites; independent of the closed-form
// kernels by construction.

namespace tor::quadrature {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double step(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  // Floor the per-level tolerance near roundoff so the recursion cannot
  // chase unreachable targets on nearly singular integrands.
  const double child_tol =
      std::max(0.5 * tol, 1e-17 * (1.0 + std::abs(left) + std::abs(right)));
  return step(f, a, m, fa, flm, fm, left, child_tol, depth - 1) +
         step(f, m, b, fm, frm, fb, right, child_tol, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return detail::step(f, a, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb), tol, 22);
}

}  // namespace tor::quadrature
