#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tor/solver.hpp"
#include "tor/trajectory.hpp"

using namespace tor;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain RK4 up to an arbitrary time, for midpoint comparisons.
std::pair<Vector2, Vector2> rk4_to(const Solution& sol, double t_end, int steps) {
  Vector2 x{0.0, 0.0};
  Vector2 v = sol.problem.initial_velocity();
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = t_end * static_cast<double>(i) / steps;
    const Vector2 u1 = control_at(sol, t);
    const Vector2 u2 = control_at(sol, t + 0.5 * h);
    const Vector2 u4 = control_at(sol, t + h);
    const Vector2 k1x = v;
    const Vector2 k2x = v + 0.5 * h * u1;
    const Vector2 k3x = v + 0.5 * h * u2;
    const Vector2 k4x = v + h * u2;
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (u1 + 4.0 * u2 + u4);
  }
  return {x, v};
}

}  // namespace

TEST_CASE("control law basics") {
  const Solution s = solve({3.0, 0.25 * kPi});
  const AdjointSolution& a = *s.adjoint();

  // u(0) = eta up to the unit normalization of the recovered eta itself.
  const Vector2 u0 = control_at(a, 0.0);
  CHECK(norm(u0 - a.eta) < 1e-12);

  double prev_angle = angle_of(u0);
  for (int i = 1; i < 1000; ++i) {
    const double t = a.t_f * i / 999.0;
    const Vector2 u = control_at(a, t);
    CHECK(std::abs(norm(u) - 1.0) < 1e-12);
    // Smooth steering: no sign chatter, small angular increments.
    double d = angle_of(u) - prev_angle;
    if (d > kPi) d -= 2.0 * kPi;
    if (d < -kPi) d += 2.0 * kPi;
    CHECK(std::abs(d) < 0.1);
    prev_angle = angle_of(u);
  }

  // Constant-control limit: xi = 0 freezes the direction.
  AdjointSolution frozen;
  frozen.mu = 0.0;
  frozen.sigma = 0.0;
  frozen.t_f = 2.0;
  frozen.zeta = {0.0, 0.0};
  frozen.eta = {-1.0, 0.0};
  for (double t : {0.0, 0.5, 1.7}) {
    CHECK(norm(control_at(frozen, t) - frozen.eta) == 0.0);
  }
}

TEST_CASE("state evaluation endpoints and midpoint") {
  const CanonicalProblem p{3.0, 0.25 * kPi};
  const Solution s = solve(p);

  const auto [x0, v0] = state_at(s, 0.0);
  CHECK(norm(x0) == 0.0);
  CHECK(norm(v0 - p.initial_velocity()) < 1e-15);

  const auto [xf, vf] = state_at(s, s.t_f());
  CHECK(norm(xf) < 1e-8);
  CHECK(norm(vf - CanonicalProblem::terminal_velocity()) < 1e-8);

  const double tm = 0.5 * s.t_f();
  const auto [xm, vm] = state_at(s, tm);
  const auto [xr, vr] = rk4_to(s, tm, 10000);
  CHECK(norm(xm - xr) < 1e-6);
  CHECK(norm(vm - vr) < 1e-6);
}

TEST_CASE("trajectory report: family panels keep their geometry flags") {
  for (double a : {0.1 * kPi, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, 0.9 * kPi}) {
    const TrajectoryReport rep = sample_trajectory(solve({3.0, a}), 512);
    CHECK(rep.samples.size() == 512);
    CHECK(rep.samples.front().t == 0.0);
    CHECK(norm(rep.samples.front().x) == 0.0);
    for (size_t i = 1; i < rep.samples.size(); ++i) {
      CHECK(rep.samples[i].t > rep.samples[i - 1].t);
    }
    CHECK(rep.terminal_position_error < 1e-8);
    CHECK(rep.terminal_velocity_error < 1e-8);
    CHECK(rep.in_angle_sector);
    CHECK(rep.polar_angle_monotone);
  }
  for (double speed : {0.3, 0.7, 1.0, 1.3}) {
    const TrajectoryReport rep = sample_trajectory(solve({speed, 0.75 * kPi}), 512);
    CHECK(rep.in_angle_sector);
    CHECK(rep.polar_angle_monotone);
  }
  // Collinear case: the sector collapses to the abscissa ray.
  const TrajectoryReport deg = sample_trajectory(solve({0.5, 0.0}), 128);
  CHECK(deg.in_angle_sector);
  CHECK(deg.polar_angle_monotone);
}

TEST_CASE("control angles") {
  const Solution unit = solve({1.0, 0.0});
  const auto [phi_u, psi_u] = control_angles(unit);
  CHECK(phi_u == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(psi_u == doctest::Approx(kPi).epsilon(1e-12));

  const Solution s = solve({3.0, 0.25 * kPi});
  const auto [phi, psi] = control_angles(s);
  CHECK(angle_in_arc(phi, s.problem.alpha + kPi, 2.0 * kPi, 1e-9));
  CHECK(angle_in_arc(psi, s.problem.alpha, kPi, 1e-9));
}

TEST_CASE("speed regimes: constant-control case has one minimum") {
  const Solution s = solve({1.0, 0.0});
  const RegimeReport r = speed_regimes(s, 128);
  REQUIRE(r.segments.size() == 2);
  CHECK(r.segments[0].regime == Regime::Decelerating);
  CHECK(r.segments[1].regime == Regime::Accelerating);
  REQUIRE(r.extrema.size() == 1);
  CHECK(r.extrema[0].t == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.extrema[0].speed == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(!r.extrema[0].is_max);
}

TEST_CASE("speed regimes: scalar accelerate/flip/decelerate/accelerate") {
  const Solution s = solve({0.5, 0.0});
  REQUIRE(s.is_one_dim());
  const double t_f = s.t_f();
  const double t_switch = s.one_dim()->switch_fraction * t_f;

  const RegimeReport r = speed_regimes(s, 256);
  REQUIRE(r.segments.size() == 3);
  CHECK(r.segments[0].regime == Regime::Accelerating);
  CHECK(r.segments[1].regime == Regime::Decelerating);
  CHECK(r.segments[2].regime == Regime::Accelerating);
  REQUIRE(r.extrema.size() == 2);
  // Speed peaks at the control switch, bottoms out where v crosses zero
  // (one peak-speed interval later).
  const double v_peak = 0.7905694150420948;
  CHECK(r.extrema[0].t == doctest::Approx(t_switch).epsilon(1e-6));
  CHECK(r.extrema[0].is_max);
  CHECK(r.extrema[0].speed == doctest::Approx(v_peak).epsilon(1e-6));
  CHECK(r.extrema[1].t == doctest::Approx(t_switch + v_peak).epsilon(1e-6));
  CHECK(!r.extrema[1].is_max);
  CHECK(r.extrema[1].speed == doctest::Approx(0.0).epsilon(1e-6));

  // The interior minimum is a genuine zero of (v, u); the maximum sits at
  // the control jump, where (v, u) flips sign instead of vanishing.
  const auto [x1, v1] = state_at(s, r.extrema[1].t);
  (void)x1;
  CHECK(std::abs(dot(v1, control_at(s, r.extrema[1].t))) < 1e-6);
  CHECK(t_f == doctest::Approx(t_switch + v_peak + 1.0).epsilon(1e-12));
}

TEST_CASE("initial regime matches the control-angle rule") {
  for (double speed : {0.3, 0.7, 1.3, 3.0}) {
    for (double a : {0.15 * kPi, 0.4 * kPi, 0.7 * kPi}) {
      const Solution s = solve({speed, a});
      const RegimeReport r = speed_regimes(s, 128);
      REQUIRE(!r.segments.empty());
      const auto [phi, psi] = control_angles(s);
      (void)psi;
      // Unwrap phi into the triangle's natural range [alpha+pi, alpha+3 pi)
      // and apply the initial-acceleration threshold at alpha + 1.5 pi.
      const double phi_tri = phi < s.problem.alpha + kPi ? phi + 2.0 * kPi : phi;
      const bool accel_rule = phi_tri >= s.problem.alpha + 1.5 * kPi;
      CHECK((r.segments.front().regime == Regime::Accelerating) == accel_rule);
    }
  }
}

TEST_CASE("initial regime flips at most once as alpha grows (slow speeds)") {
  for (double speed : {0.3, 0.7}) {
    int flips = 0;
    bool have_prev = false;
    Regime prev = Regime::Accelerating;
    for (int i = 1; i < 32; ++i) {
      const Solution s = solve({speed, kPi * i / 32.0});
      const RegimeReport r = speed_regimes(s, 128);
      if (r.segments.empty()) continue;
      const Regime cur = r.segments.front().regime;
      if (have_prev && cur != prev) ++flips;
      prev = cur;
      have_prev = true;
    }
    CHECK(flips <= 1);
  }
}

TEST_CASE("forward verification: accuracy and order") {
  const auto [pe0, ve0] = forward_verify(solve({0.0, 0.0}), 10000);
  CHECK(pe0 < 1e-6);
  CHECK(ve0 < 1e-6);

  const Solution s = solve({3.0, 0.5 * kPi});
  const auto [pe, ve] = forward_verify(s, 10000);
  CHECK(pe < 1e-6);
  CHECK(ve < 1e-6);

  // Quadrupling the step count should cut the error by roughly 4^4; demand
  // at least 8x to stay clear of roundoff noise.
  const auto [pe_c, ve_c] = forward_verify(s, 100);
  const auto [pe_f, ve_f] = forward_verify(s, 400);
  const double coarse = pe_c + ve_c, fine = pe_f + ve_f;
  if (fine > 1e-13) {
    CHECK(coarse / fine >= 8.0);
  }

  CHECK_THROWS_AS(forward_verify(s, 50), std::invalid_argument);
}
