#pragma once

#include <utility>

#include "tor/errors.hpp"

// Closed-form scalar kernels of the planar time-optimal return problem.
//
// The optimal steering law is u*(t) = Q/R with Q = -xi*t + eta, |eta| = 1,
// R = |Q| = (rho^2 t^2 - 2 sigma rho t + 1)^{1/2}, rho = |xi|,
// rho*sigma = (xi, eta). Integrating u* once and twice gives the velocity
// and position as "linear" expressions in xi and eta:
//
//   v(t) = v0 + V_xi(t) xi + V_eta(t) eta
//   x(t) = x0 + v0 t + X_xi(t) xi + X_eta(t) eta
//
// The four kernels and the boundary-condition coefficients a, b, a_zeta,
// a_eta, b_zeta, b_eta below are algebraic/logarithmic functions of
// z = rho*t (or mu = rho*t_f) and sigma. Every formula here divides by a
// power of z, so small z is evaluated through a Legendre series instead:
// 1/R is the Legendre generating function, 1/R = sum_n P_n(sigma) z^n,
// which turns each kernel into a series with simple integer weights.

namespace tor {

// Parameters of the steering radical. When rho == 0 the control is constant
// and sigma is irrelevant to every kernel value.
struct KernelParams {
  double rho = 0.0;    // |xi| >= 0
  double sigma = 0.0;  // (xi, eta)/|xi|, in [-1, 1]
};

// Boundary-condition coefficients evaluated at mu = rho*t_f.
// a_eta == b_zeta identically.
struct CoefficientSet {
  double a = 0.0;       // R(t_f) - 1
  double b = 0.0;       // int_0^{t_f} rho/R dt = log((mu - sigma + R_f)/(1 - sigma))
  double a_zeta = 0.0;
  double a_eta = 0.0;
  double b_zeta = 0.0;
  double b_eta = 0.0;
};

// Scalar forms of the reduced transcendental system.
//   fx2 > 0 and t_f = fx2^{-1/2};
//   f02 >= 0 matches |v0|^2 fx2;
//   f12 is a signed bilinear form with fx2*|v0|*cos(v0,v_f) + f12 = 0
//   at a solution (the name is inherited notation, not a square).
struct FormValues {
  double fx2 = 0.0;
  double f02 = 0.0;
  double f12 = 0.0;
};

// R(t); defined for all |sigma| <= 1, R(0) = 1. Throws KernelDomainError if
// the radicand is negative beyond -1e-12 (corrupted parameters); radicands
// in [-1e-12, 0] are clamped to 0.
double radical_R(const KernelParams& params, double t);

// V(t) = log(rho*t - sigma + R(t)), the antiderivative with dV/dt = rho/R
// and V(0) = log(1 - sigma). Throws for sigma >= 1 - 1e-12 (log singularity;
// collinear geometry belongs to the one-dimensional branch).
double log_V(const KernelParams& params, double t);

// (V_xi, V_eta); both vanish at t = 0, dV_xi/dt = -t/R, dV_eta/dt = 1/R.
std::pair<double, double> velocity_kernels(const KernelParams& params, double t);

// (X_xi, X_eta); both vanish at t = 0, dX_xi/dt = V_xi, dX_eta/dt = V_eta.
std::pair<double, double> position_kernels(const KernelParams& params, double t);

CoefficientSet coefficients(double mu, double sigma);

FormValues scalar_forms(double mu, double sigma);

namespace detail {

enum class EvalPath { Auto, Closed, Series };

// Below this value of z = rho*t the closed forms suffer structural
// cancellation (the X_xi numerator cancels through two orders) and the
// Legendre series is used instead. Both paths agree to ~1e-12 at the
// threshold; tests pin 1e-9.
inline constexpr double kSeriesThreshold = 1e-2;
inline constexpr int kSeriesOrder = 12;

// sigma at or above this is the logarithmic singularity.
inline constexpr double kSigmaLogLimit = 1.0 - 1e-12;

double radicand(double z, double sigma);
double radical(double z, double sigma);
// A(z) = R(z) - 1 without cancellation: z(z - 2 sigma)/(R + 1).
double radical_shift(double z, double sigma);
// W(z) = V(t) - V(0) as a function of z = rho*t.
double log_shift(double z, double sigma);

// Reduced kernels, smooth in z with finite z->0 limits:
//   reduced_W  = W/z                      -> 1      (V_eta =  t   * reduced_W)
//   reduced_G1 = (sigma W + A)/z^2        -> 1/2    (V_xi  = -t^2 * reduced_G1)
//   reduced_G2 = ((z - sigma) W - A)/z^2  -> 1/2    (X_eta =  t^2 * reduced_G2)
//   reduced_G3 (see kernels.cpp)          -> 1/6    (X_xi  = -t^3 * reduced_G3)
double reduced_W(double z, double sigma, EvalPath path = EvalPath::Auto);
double reduced_G1(double z, double sigma, EvalPath path = EvalPath::Auto);
double reduced_G2(double z, double sigma, EvalPath path = EvalPath::Auto);
double reduced_G3(double z, double sigma, EvalPath path = EvalPath::Auto);

}  // namespace detail

}  // namespace tor
