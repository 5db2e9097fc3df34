#pragma once

#include <utility>

// Collinear (scalar) case: motion along the abscissa with v_f = -1, the
// force bound |u| <= 1 and coincident endpoints. The optimal control is
// bang-bang with at most one switch, u(tau) = eta*sign(1 - lambda*tau) in
// normalized time tau = t/t_f, and everything is in closed form.

namespace tor {

struct OneDimSolution {
  double lambda = 1.0;          // switch parameter; switch at tau* = 1/lambda
  int eta_sign = 1;             // control sign before the switch
  double t_f = 0.0;
  double switch_fraction = 1.0; // 1/lambda, in (0, 1]
  bool degenerate = false;      // v0 = +1 (constant control) or v0 = -1 (t_f = 0)
};

// Total function of the signed initial velocity. Picks the root with
// lambda > 1 (switch inside the horizon) minimizing t_f; v0 = +1 and
// v0 = -1 return the degenerate closed answers (t_f = 2 constant control,
// t_f = 0 zero control).
OneDimSolution solve_one_dim(double v0);

// State and control at normalized time tau in [0, 1]; x(0) = 0, v(0) = v0,
// x(1) = 0, v(1) = -1. The control switches sign exactly at tau*.
struct OneDimState {
  double x, v, u;
};
OneDimState one_dim_state(const OneDimSolution& sol, double v0, double tau);

// Phase-plane switching curve x = -+ v^2/2 (exposed as data, not a
// regulator). Upper carries the minus sign.
enum class SwitchingBranch { Upper, Lower };
double switching_curve(double v, SwitchingBranch branch);

// Initial velocities v0+- reaching the origin in exactly t_f >= 2 (one per
// control-sign branch). Throws std::domain_error for t_f < 2.
std::pair<double, double> velocities_for_time(double t_f);

// v* = -sqrt(2) - 2 + sqrt(10 + 8 sqrt(2)), the largest v0 with two
// distinct initial speeds sharing one optimal time.
double v_star();

}  // namespace tor
