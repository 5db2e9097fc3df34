#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tor/one_dim.hpp"
#include "tor/oracle.hpp"
#include "tor/solver.hpp"

using namespace tor;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTf0 = 2.414213562373095;
}  // namespace

TEST_CASE("bang-bang oracle anchors") {
  const auto rest = oracle::bang_oracle_1d(0.0);
  CHECK(rest.t_f == doctest::Approx(kTf0).epsilon(1e-14));
  CHECK(rest.t_switch == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  CHECK(oracle::bang_oracle_1d(0.5).t_f ==
        doctest::Approx(2.0811388300841897).epsilon(1e-13));
  CHECK(oracle::bang_oracle_1d(-1.0).t_f == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(oracle::bang_oracle_1d(1.0).t_f == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("bang-bang oracle agrees with the switch-root solution") {
  for (int i = 0; i <= 60; ++i) {
    const double v0 = -3.0 + 0.1 * i;
    CHECK(std::abs(oracle::bang_oracle_1d(v0).t_f - solve_one_dim(v0).t_f) < 1e-10);
  }
}

TEST_CASE("grid oracle anchors") {
  // Rest case: the residual minimum pins the scalar optimum through the
  // first reduced equation.
  const auto g0 = oracle::grid_oracle({0.0, 0.0}, 100, 100, 50.0);
  CHECK(std::abs(g0.t_f - kTf0) < 0.05);

  const auto g1 = oracle::grid_oracle({1.0, 0.01}, 100, 100, 50.0);
  CHECK(std::abs(g1.t_f - 2.0) < 0.05);
}

TEST_CASE("grid oracle matches the solver on the reference case") {
  const CanonicalProblem p{3.0, 0.25 * kPi};
  const Solution s = solve(p);
  const auto g = oracle::grid_oracle(p, 120, 120, 50.0);
  CHECK(std::abs(s.t_f() - g.t_f) < 1e-3);
  CHECK(std::abs(s.t_f() - g.t_f) <= g.t_f_resolution);
  // Newton refines past the oracle's localization.
  CHECK(g.residual_norm >= s.adjoint()->residual_norm);
}

TEST_CASE("direct transcription oracle anchors") {
  const auto rest = oracle::direct_oracle({0.0, 0.0}, 64);
  CHECK(std::abs(rest.t_f - kTf0) / kTf0 < 0.02);

  const auto unit = oracle::direct_oracle({1.0, 0.0}, 64);
  CHECK(std::abs(unit.t_f - 2.0) / 2.0 < 0.02);
}

TEST_CASE("direct oracle refinement is nested and upper-bounds the solver") {
  const CanonicalProblem p{3.0, 0.5 * kPi};
  const auto c64 = oracle::direct_oracle(p, 64);
  const auto c128 = oracle::direct_oracle(p, 128);
  CHECK(c128.t_f <= c64.t_f + 1e-9);

  const double tf = solve(p).t_f();
  const auto tight = oracle::direct_oracle(p, 128, 1e-5);
  CHECK(tf <= tight.t_f + 1e-9);
  CHECK((tight.t_f - tf) / tf < 0.02);
}
