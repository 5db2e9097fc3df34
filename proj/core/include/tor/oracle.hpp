#pragma once

#include "tor/problem.hpp"

// Slow, brute-force reference solvers used as ground truth against the
// Newton solver. Deliberately independent: the boundary-condition
// coefficients are rebuilt here by adaptive quadrature of the steering-law
// integrals (no closed-form kernels), and the direct oracle never sees the
// maximum-principle structure at all.

namespace tor::oracle {

struct GridOracleResult {
  double mu = 0.0;
  double sigma = 0.0;
  double t_f = 0.0;
  double residual_norm = 0.0;
  // Bounds from the final refinement cell: its diagonal in (mu, sigma) and
  // the spread of t_f over its corners.
  double resolution = 0.0;
  double t_f_resolution = 0.0;
};

// Exhaustive residual-norm minimization over an (n_mu x n_sigma) grid,
// refined by golden-section descent along each axis in turn.
GridOracleResult grid_oracle(const CanonicalProblem& problem, int n_mu, int n_sigma,
                             double mu_max = 50.0);

struct DirectOracleResult {
  double t_f = 0.0;       // certified-feasible horizon (upper bound)
  double violation = 0.0; // terminal violation achieved at t_f
  int segments = 0;
};

// Discretized-control transcription: piecewise-constant unit steering over
// `segments` equal slices, a quasi-Newton inner fit of the segment angles,
// and bisection on the horizon. Deterministic; `segments` is halved
// recursively down to 32 so refinements are nested and the returned horizon
// is nonincreasing in `segments`. Throws NoConvergence if no feasible
// horizon exists below 10*(1 + speed).
DirectOracleResult direct_oracle(const CanonicalProblem& problem, int segments,
                                 double tol = 1e-4);

struct BangSolution {
  double t_f = 0.0;
  double t_switch = 0.0;
};

// Scalar two-phase bang-bang closed form (independent of the switch-root
// parameterization used by solve_one_dim): enumerate both phase orders,
// solve each quadratic for nonnegative durations, return the feasible
// minimum.
BangSolution bang_oracle_1d(double v0);

}  // namespace tor::oracle
