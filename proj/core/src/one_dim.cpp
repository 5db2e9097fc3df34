#include "tor/one_dim.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace tor {

OneDimSolution solve_one_dim(double v0) {
  if (v0 == 1.0) {
    // Constant control u = -1 for two time units. lambda = 1 makes the
    // closed-form state expressions reproduce it with no switch inside.
    return {1.0, -1, 2.0, 1.0, true};
  }
  if (v0 == -1.0) {
    // Already moving at the terminal velocity: stay put.
    return {1.0, +1, 0.0, 1.0, true};
  }

  // Of the two quadratic roots exactly one has its switch inside the
  // horizon: lambda+ for v0 < 1 and lambda- for v0 > 1, since
  // lambda+- - 1 = +-(1 + v0 + disc)/(1 - v0) with the minus branch
  // simplifying to (v0 - 1)/(1 + v0 + disc). That root minimizes t_f.
  const double disc = std::sqrt(2.0 + 2.0 * v0 * v0);
  double lam, lam_m2;  // lambda and (lambda - 2), the latter cancellation-free
  if (v0 < 1.0) {
    lam = (2.0 + disc) / (1.0 - v0);
    lam_m2 = (v0 <= 0.0 ? 2.0 * (1.0 - v0) * (1.0 + v0) / (disc - 2.0 * v0)
                        : disc + 2.0 * v0) /
             (1.0 - v0);
  } else {
    lam = 1.0 + (v0 - 1.0) / (1.0 + v0 + disc);
    lam_m2 = -2.0 * (v0 + 1.0) / (2.0 * v0 + disc);
  }

  const double t_f = lam * std::abs(v0 + 1.0) / std::abs(lam_m2);
  const int eta = ((v0 + 1.0 > 0.0) == (lam_m2 > 0.0)) ? +1 : -1;
  return {lam, eta, t_f, 1.0 / lam, false};
}

OneDimState one_dim_state(const OneDimSolution& sol, double v0, double tau) {
  if (sol.degenerate && sol.t_f == 0.0) {
    return {0.0, -1.0, 0.0};
  }
  const double lam = sol.lambda;
  const double t_f = sol.t_f;
  const double eta = static_cast<double>(sol.eta_sign);
  const double m = std::abs(lam * tau - 1.0);
  const double x =
      v0 * tau * t_f +
      eta * (t_f * t_f / (2.0 * lam * lam)) * (m * (1.0 - lam * tau) + 2.0 * lam * tau - 1.0);
  const double v = v0 + eta * (t_f / lam) * (1.0 - m);
  const double u = (tau <= sol.switch_fraction) ? eta : -eta;
  return {x, v, u};
}

double switching_curve(double v, SwitchingBranch branch) {
  const double half = 0.5 * v * v;
  return branch == SwitchingBranch::Upper ? -half : half;
}

std::pair<double, double> velocities_for_time(double t_f) {
  if (!(t_f >= 2.0)) {
    throw std::domain_error("velocities_for_time requires t_f >= 2");
  }
  const double v0_plus = -1.0 + t_f - std::sqrt(2.0 * t_f * t_f - 4.0 * t_f);
  const double v0_minus = -1.0 - t_f + std::sqrt(2.0 * t_f * t_f + 4.0 * t_f);
  return {v0_plus, v0_minus};
}

double v_star() {
  return -std::sqrt(2.0) - 2.0 + std::sqrt(10.0 + 8.0 * std::sqrt(2.0));
}

}  // namespace tor
