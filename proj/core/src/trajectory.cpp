#include "tor/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tor {

namespace {

constexpr double kDeadBand = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector2 one_dim_control(const Solution& sol, double t) {
  const OneDimSolution& od = *sol.one_dim();
  if (od.t_f <= 0.0) return {0.0, 0.0};
  const double tau = std::clamp(t / od.t_f, 0.0, 1.0);
  const OneDimState s = one_dim_state(od, sol.one_dim_v0(), tau);
  return {s.u, 0.0};
}

std::pair<Vector2, Vector2> one_dim_states(const Solution& sol, double t) {
  const OneDimSolution& od = *sol.one_dim();
  if (od.t_f <= 0.0) return {Vector2{0.0, 0.0}, Vector2{-1.0, 0.0}};
  const double tau = std::clamp(t / od.t_f, 0.0, 1.0);
  const OneDimState s = one_dim_state(od, sol.one_dim_v0(), tau);
  return {Vector2{s.x, 0.0}, Vector2{s.v, 0.0}};
}

double dot_vu(const Solution& sol, double t) {
  return dot(state_at(sol, t).second, control_at(sol, t));
}

// Bisect a sign change of (v, u) to 1e-9 in t.
double bisect_zero(const Solution& sol, double lo, double hi) {
  double f_lo = dot_vu(sol, lo);
  for (int i = 0; i < 80 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = dot_vu(sol, mid);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Vector2 control_at(const AdjointSolution& sol, double t) {
  const Vector2 xi = sol.zeta / sol.t_f;
  const Vector2 q = -t * xi + sol.eta;
  const double n = norm(q);
  if (n < 1e-300) return sol.eta;  // only reachable in degenerate collinear limits
  return q / n;
}

std::pair<Vector2, Vector2> state_at(const AdjointSolution& sol,
                                     const CanonicalProblem& problem, double t) {
  const KernelParams kp{sol.mu / sol.t_f, sol.sigma};
  const Vector2 xi = sol.zeta / sol.t_f;
  const Vector2 v0 = problem.initial_velocity();
  const auto [v_xi, v_eta] = velocity_kernels(kp, t);
  const auto [x_xi, x_eta] = position_kernels(kp, t);
  const Vector2 x = t * v0 + x_xi * xi + x_eta * sol.eta;
  const Vector2 v = v0 + v_xi * xi + v_eta * sol.eta;
  return {x, v};
}

Vector2 control_at(const Solution& sol, double t) {
  if (sol.is_one_dim()) return one_dim_control(sol, t);
  return control_at(*sol.adjoint(), t);
}

std::pair<Vector2, Vector2> state_at(const Solution& sol, double t) {
  if (sol.is_one_dim()) return one_dim_states(sol, t);
  return state_at(*sol.adjoint(), sol.problem, t);
}

bool angle_in_arc(double angle, double lo, double hi, double tol) {
  auto wrap = [](double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
  };
  const double d = wrap(angle - lo);
  const double width = wrap(hi - lo);
  return d <= width + tol || d >= kTwoPi - tol;
}

std::pair<double, double> control_angles(const Solution& sol) {
  const double t_f = sol.t_f();
  const Vector2 u0 = control_at(sol, 0.0);
  const Vector2 u1 = control_at(sol, t_f);
  // The zero-control degenerate case has no direction; report the terminal
  // deceleration axis for both.
  if (norm(u0) < 0.5) return {std::numbers::pi, std::numbers::pi};
  return {angle_of(u0), angle_of(u1)};
}

TrajectoryReport sample_trajectory(const Solution& sol, int n) {
  if (n < 2) throw std::invalid_argument("sample_trajectory requires n >= 2");
  const double t_f = sol.t_f();

  TrajectoryReport rep;
  rep.samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = t_f * static_cast<double>(i) / (n - 1);
    const auto [x, v] = state_at(sol, t);
    const Vector2 u = control_at(sol, t);
    rep.samples.push_back({t, x, v, u, norm(v)});
  }

  const auto [x_end, v_end] = state_at(sol, t_f);
  rep.terminal_position_error = norm(x_end);
  rep.terminal_velocity_error = norm(v_end - CanonicalProblem::terminal_velocity());
  std::tie(rep.phi, rep.psi) = control_angles(sol);

  // Interior polar angles; skip samples too close to the origin for the
  // angle to mean anything.
  double x_scale = 0.0;
  for (const auto& s : rep.samples) x_scale = std::max(x_scale, norm(s.x));
  const double x_cut = std::max(1e-12, 1e-9 * x_scale);

  if (sol.is_one_dim()) {
    // Collinear: the arc lies on a boundary ray of the sector.
    rep.polar_angle_monotone = true;
    rep.in_angle_sector = true;
    for (const auto& s : rep.samples) {
      if (std::abs(s.x.y) > x_cut) rep.in_angle_sector = false;
      if (sol.problem.alpha < 1.0 && s.x.x < -x_cut) rep.in_angle_sector = false;
    }
  } else {
    std::vector<double> theta;
    for (size_t i = 1; i + 1 < rep.samples.size(); ++i) {
      const Vector2& x = rep.samples[i].x;
      if (norm(x) > x_cut) theta.push_back(angle_of(x));
    }
    bool nondec = true, noninc = true;
    for (size_t i = 1; i < theta.size(); ++i) {
      double d = theta[i] - theta[i - 1];  // shortest-arc continuation
      if (d > std::numbers::pi) d -= kTwoPi;
      if (d < -std::numbers::pi) d += kTwoPi;
      if (d < -1e-9) nondec = false;
      if (d > 1e-9) noninc = false;
    }
    rep.polar_angle_monotone = nondec || noninc;

    rep.in_angle_sector = true;
    for (const auto& t : theta) {
      if (!angle_in_arc(t, 0.0, sol.problem.alpha, 1e-9)) {
        rep.in_angle_sector = false;
        break;
      }
    }
  }

  rep.speed_extrema = speed_regimes(sol, std::max(64, n)).extrema;
  return rep;
}

RegimeReport speed_regimes(const Solution& sol, int n) {
  if (n < 16) throw std::invalid_argument("speed_regimes requires n >= 16");
  const double t_f = sol.t_f();
  RegimeReport rep;
  if (t_f <= 0.0) return rep;

  // Scan (v, u); classify each node, resolving dead-band nodes forward.
  std::vector<double> ts(n), s(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = t_f * static_cast<double>(i) / (n - 1);
    s[i] = dot_vu(sol, ts[i]);
  }

  auto sign_of = [](double v) { return v > kDeadBand ? +1 : (v < -kDeadBand ? -1 : 0); };
  std::vector<int> sign(n);
  for (int i = 0; i < n; ++i) sign[i] = sign_of(s[i]);
  for (int i = n - 2; i >= 0; --i) {
    if (sign[i] == 0) sign[i] = sign[i + 1];
  }
  for (int i = 1; i < n; ++i) {
    if (sign[i] == 0) sign[i] = sign[i - 1];
  }
  if (std::all_of(sign.begin(), sign.end(), [](int v) { return v == 0; })) return rep;

  double seg_start = 0.0;
  int cur = sign.front();
  for (int i = 1; i < n; ++i) {
    if (sign[i] == cur || sign[i] == 0) continue;
    const double t_switch = bisect_zero(sol, ts[i - 1], ts[i]);
    rep.segments.push_back({seg_start, t_switch,
                            cur > 0 ? Regime::Accelerating : Regime::Decelerating});
    const double sp = norm(state_at(sol, t_switch).second);
    rep.extrema.push_back({t_switch, sp, cur > 0});
    seg_start = t_switch;
    cur = sign[i];
  }
  rep.segments.push_back({seg_start, t_f,
                          cur > 0 ? Regime::Accelerating : Regime::Decelerating});
  return rep;
}

namespace {

template <typename Control>
void rk4_leg(Control&& control, double t0, double t1, int steps, Vector2& x, Vector2& v) {
  const double h = (t1 - t0) / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / steps;
    const Vector2 u1 = control(t);
    const Vector2 u2 = control(t + 0.5 * h);
    const Vector2 u4 = control(t + h);
    // xdot = v, vdot = u(t): k2 and k3 share the midpoint control sample.
    const Vector2 k1x = v;
    const Vector2 k2x = v + 0.5 * h * u1;
    const Vector2 k3x = v + 0.5 * h * u2;
    const Vector2 k4x = v + h * u2;
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (u1 + 4.0 * u2 + u4);
  }
}

}  // namespace

std::pair<double, double> forward_verify(const Solution& sol, int steps) {
  if (steps < 100) throw std::invalid_argument("forward_verify requires steps >= 100");
  const double t_f = sol.t_f();
  Vector2 x{0.0, 0.0};
  Vector2 v = sol.problem.initial_velocity();
  const auto u_of = [&](double t) { return control_at(sol, t); };
  if (t_f > 0.0) {
    // The bang-bang branch has a control discontinuity at the switch; a step
    // boundary is placed there so each leg integrates a smooth field (the
    // second leg samples the right-hand limit at the break).
    double t_break = t_f;
    if (sol.is_one_dim()) {
      const double frac = sol.one_dim()->switch_fraction;
      if (frac > 0.0 && frac < 1.0) t_break = frac * t_f;
    }
    if (t_break < t_f) {
      const int n1 = std::clamp(static_cast<int>(std::lround(steps * t_break / t_f)), 1,
                                steps - 1);
      // Nudge the endpoint samples off the switch by a relative amount that
      // survives the t/t_f rounding inside the control evaluation.
      const double nudge = 1e-12 * t_f;
      rk4_leg([&](double t) { return control_at(sol, std::min(t, t_break - nudge)); },
              0.0, t_break, n1, x, v);
      rk4_leg([&](double t) { return control_at(sol, std::max(t, t_break + nudge)); },
              t_break, t_f, steps - n1, x, v);
    } else {
      rk4_leg(u_of, 0.0, t_f, steps, x, v);
    }
  }
  return {norm(x), norm(v - CanonicalProblem::terminal_velocity())};
}

}  // namespace tor
