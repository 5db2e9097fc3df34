#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tor/one_dim.hpp"

using namespace tor;

namespace {

constexpr double kTf0 = 2.414213562373095;  // 1 + sqrt(2)

// Quadratic satisfied by the switch parameter.
double lambda_quadratic(double lam, double v0) {
  return lam * lam * (1.0 - v0) - 4.0 * lam + 2.0 * v0 + 2.0;
}

}  // namespace

TEST_CASE("rest-to-target anchor") {
  const OneDimSolution s = solve_one_dim(0.0);
  CHECK(s.t_f == doctest::Approx(kTf0).epsilon(1e-14));
  CHECK(s.lambda == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s.eta_sign == 1);
  CHECK(!s.degenerate);
  CHECK(s.switch_fraction == doctest::Approx(1.0 / s.lambda));
}

TEST_CASE("degenerate anchors at v0 = +-1") {
  const OneDimSolution unit = solve_one_dim(1.0);
  CHECK(unit.degenerate);
  CHECK(unit.t_f == 2.0);
  CHECK(unit.eta_sign == -1);

  const OneDimSolution arrived = solve_one_dim(-1.0);
  CHECK(arrived.degenerate);
  CHECK(arrived.t_f == 0.0);

  // Just off the degenerate points the closed form is continuous toward the
  // constant-control value (at +1) and the nonoptimal-branch value (at -1).
  CHECK(solve_one_dim(1.0 - 1e-9).t_f == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(solve_one_dim(1.0 + 1e-9).t_f == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(solve_one_dim(-1.0 + 1e-9).t_f == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(solve_one_dim(-1.0 - 1e-9).t_f == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("frozen mid-range solutions") {
  const OneDimSolution s = solve_one_dim(0.5);
  CHECK(s.lambda == doctest::Approx(7.162277660168379).epsilon(1e-14));
  CHECK(s.t_f == doctest::Approx(2.0811388300841897).epsilon(1e-14));
  CHECK(s.eta_sign == 1);
  // Unnormalized switch time t_f/lambda.
  CHECK(s.switch_fraction * s.t_f == doctest::Approx(0.29056941504209483).epsilon(1e-13));

  const OneDimSolution neg = solve_one_dim(-2.0);
  CHECK(neg.lambda == doctest::Approx(1.7207592200561265).epsilon(1e-14));
  CHECK(neg.t_f == doctest::Approx(6.162277660168379).epsilon(1e-14));

  const OneDimSolution fast = solve_one_dim(3.0);
  CHECK(fast.lambda == doctest::Approx(1.2360679774997896).epsilon(1e-14));
  CHECK(fast.t_f == doctest::Approx(6.472135954999579).epsilon(1e-14));
  CHECK(fast.eta_sign == -1);  // starts by decelerating
}

TEST_CASE("switch parameter solves its quadratic with lambda > 1") {
  for (int i = 0; i <= 60; ++i) {
    const double v0 = -3.0 + 0.1 * i;
    if (std::abs(std::abs(v0) - 1.0) < 1e-12) continue;
    const OneDimSolution s = solve_one_dim(v0);
    CHECK(s.lambda > 1.0);
    CHECK(std::abs(lambda_quadratic(s.lambda, v0)) < 1e-10 * std::max(1.0, s.lambda * s.lambda));
  }
}

TEST_CASE("state satisfies the boundary conditions") {
  for (int i = 0; i <= 60; ++i) {
    const double v0 = -3.0 + 0.1 * i;
    if (std::abs(std::abs(v0) - 1.0) < 1e-12) continue;
    const OneDimSolution s = solve_one_dim(v0);
    const OneDimState at0 = one_dim_state(s, v0, 0.0);
    CHECK(at0.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at0.v == doctest::Approx(v0).epsilon(1e-12));
    const OneDimState at1 = one_dim_state(s, v0, 1.0);
    CHECK(std::abs(at1.x) < 1e-10);
    CHECK(std::abs(at1.v + 1.0) < 1e-10);

    // The control flips sign exactly at the switch fraction.
    const double ts = s.switch_fraction;
    if (ts < 1.0) {
      CHECK(one_dim_state(s, v0, ts).u == s.eta_sign);
      CHECK(one_dim_state(s, v0, std::nextafter(ts, 1.0)).u == -s.eta_sign);
    }
  }
}

TEST_CASE("state anchors") {
  const OneDimSolution rest = solve_one_dim(0.0);
  const OneDimState a = one_dim_state(rest, 0.0, 0.0);
  CHECK(a.x == 0.0);
  CHECK(a.v == 0.0);
  CHECK(a.u == 1.0);
  const OneDimState b = one_dim_state(rest, 0.0, 1.0);
  CHECK(std::abs(b.x) < 1e-10);
  CHECK(b.v == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(b.u == -1.0);

  // Peak speed at the switch for v0 = 0.5.
  const OneDimSolution s = solve_one_dim(0.5);
  const OneDimState peak = one_dim_state(s, 0.5, s.switch_fraction);
  CHECK(peak.v == doctest::Approx(0.7905694150420948).epsilon(1e-13));
  CHECK(peak.v > one_dim_state(s, 0.5, s.switch_fraction - 0.01).v);
  CHECK(peak.v > one_dim_state(s, 0.5, s.switch_fraction + 0.01).v);
}

TEST_CASE("constant-control degenerate state uses the same closed form") {
  const OneDimSolution s = solve_one_dim(1.0);
  for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const OneDimState st = one_dim_state(s, 1.0, tau);
    const double t = 2.0 * tau;
    CHECK(st.x == doctest::Approx(t - 0.5 * t * t).epsilon(1e-13));
    CHECK(st.v == doctest::Approx(1.0 - t).epsilon(1e-13));
    CHECK(st.u == -1.0);
  }
}

TEST_CASE("switching curve branches") {
  CHECK(switching_curve(0.0, SwitchingBranch::Upper) == 0.0);
  CHECK(switching_curve(0.0, SwitchingBranch::Lower) == 0.0);
  CHECK(switching_curve(1.0, SwitchingBranch::Upper) == -0.5);
  CHECK(switching_curve(-2.0, SwitchingBranch::Lower) == 2.0);
}

TEST_CASE("velocities_for_time anchors and round trips") {
  const auto [vp2, vm2] = velocities_for_time(2.0);
  CHECK(vp2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vm2 == doctest::Approx(1.0).epsilon(1e-12));

  const auto [vp0, vm0] = velocities_for_time(kTf0);
  CHECK(std::abs(vp0) < 1e-12);
  CHECK(vm0 == doctest::Approx(v_star()).epsilon(1e-12));

  for (double tf : {2.5, 3.0, 5.0, 8.0}) {
    const auto [vp, vm] = velocities_for_time(tf);
    CHECK(solve_one_dim(vp).t_f == doctest::Approx(tf).epsilon(1e-9));
    CHECK(solve_one_dim(vm).t_f == doctest::Approx(tf).epsilon(1e-9));
  }

  CHECK_THROWS_AS(velocities_for_time(1.9), std::domain_error);

  // Two distinct nonnegative velocities share each time in (2, t_f0);
  // beyond t_f0 the plus branch goes negative.
  for (double tf : {2.1, 2.2, 2.3, 2.4}) {
    const auto [vp, vm] = velocities_for_time(tf);
    CHECK(vp >= 0.0);
    CHECK(vm >= 0.0);
    CHECK(vp != vm);
  }
  for (double tf : {2.5, 3.0, 6.0}) {
    CHECK(velocities_for_time(tf).first < 0.0);
  }
}

TEST_CASE("v_star value and round trip") {
  CHECK(v_star() == doctest::Approx(1.202463651704662).epsilon(1e-14));
  CHECK(velocities_for_time(kTf0).second == doctest::Approx(v_star()).epsilon(1e-12));
  CHECK(solve_one_dim(v_star()).t_f == doctest::Approx(kTf0).epsilon(1e-9));
}

TEST_CASE("nonoptimal return branch at v0 = -1 is rejected but feasible") {
  // The alternate extremal: t_f = 4, u(tau) = sign(1 - 2 tau). Forward
  // integration (exact per phase) meets the boundary conditions.
  const double t_f = 4.0, ts = 2.0;
  double v = -1.0, x = 0.0;
  x += v * ts + 0.5 * ts * ts;  // u = +1 leg
  v += ts;
  x += v * (t_f - ts) - 0.5 * (t_f - ts) * (t_f - ts);  // u = -1 leg
  v -= (t_f - ts);
  CHECK(x == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));

  // The solver still returns the optimal zero-control answer.
  CHECK(solve_one_dim(-1.0).t_f == 0.0);
}
