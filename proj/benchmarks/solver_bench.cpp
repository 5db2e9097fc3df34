#include <benchmark/benchmark.h>

#include <numbers>
#include <optional>

#include "tor/kernels.hpp"
#include "tor/one_dim.hpp"
#include "tor/oracle.hpp"
#include "tor/solver.hpp"
#include "tor/trajectory.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_ScalarForms(benchmark::State& state) {
  double mu = 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::scalar_forms(mu, 0.42));
    mu = mu < 5.0 ? mu + 1e-9 : 1.3;  // defeat caching of a fixed input
  }
}
BENCHMARK(BM_ScalarForms);

void BM_Residuals(benchmark::State& state) {
  const tor::CanonicalProblem p{3.0, 0.25 * kPi};
  double mu = 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::residuals(mu, 0.9, p));
    mu = mu < 5.0 ? mu + 1e-9 : 1.3;
  }
}
BENCHMARK(BM_Residuals);

void BM_OneDim(benchmark::State& state) {
  double v0 = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::solve_one_dim(v0));
    v0 = v0 < 2.0 ? v0 + 1e-9 : 0.5;
  }
}
BENCHMARK(BM_OneDim);

void BM_SolveColdStart(benchmark::State& state) {
  const tor::CanonicalProblem p{3.0, 0.25 * kPi};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::solve(p));
  }
}
BENCHMARK(BM_SolveColdStart);

void BM_SolveContinuation(benchmark::State& state) {
  const tor::CanonicalProblem p{3.0, 0.25 * kPi};
  const tor::Solution base = tor::solve(p);
  const auto hint = std::make_pair(base.adjoint()->mu, base.adjoint()->sigma);
  const tor::CanonicalProblem next{3.0, 0.25 * kPi + kPi / 64.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::solve(next, {}, hint));
  }
}
BENCHMARK(BM_SolveContinuation);

void BM_SampleTrajectory(benchmark::State& state) {
  const tor::Solution s = tor::solve({3.0, 0.25 * kPi});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::sample_trajectory(s, 512));
  }
}
BENCHMARK(BM_SampleTrajectory);

void BM_ForwardVerify(benchmark::State& state) {
  const tor::Solution s = tor::solve({3.0, 0.25 * kPi});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::forward_verify(s, 1000));
  }
}
BENCHMARK(BM_ForwardVerify);

void BM_GridOracle(benchmark::State& state) {
  const tor::CanonicalProblem p{3.0, 0.25 * kPi};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tor::oracle::grid_oracle(p, 40, 40, 50.0));
  }
}
BENCHMARK(BM_GridOracle);

}  // namespace

BENCHMARK_MAIN();
