#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "tor/errors.hpp"
#include "tor/kernels.hpp"
#include "tor/one_dim.hpp"
#include "tor/problem.hpp"
#include "tor/vector2.hpp"

// Two-point boundary value solver. The maximum-principle unknowns are
// reduced to (mu, sigma) with mu = |zeta| = |xi|*t_f; the two residual
// equations are solved by damped Newton from ranked grid seeds (plus an
// optional continuation hint), t_f follows from t_f = fx2^{-1/2}, and the
// adjoint directions zeta, eta are recovered from a 2x2 linear system.
// Converged roots are forward-verified against the boundary conditions
// before anything is returned; among several verified roots the one with
// minimal t_f wins (the necessary conditions admit nonoptimal branches).

namespace tor {

struct SolverConfig {
  double newton_tol = 1e-12;     // on the residual norm
  int max_iters = 60;
  double damping_factor = 0.5;   // backtracking factor
  double min_step = 1e-6;        // smallest backtracking fraction
  int n_mu_seeds = 40;
  int n_sigma_seeds = 39;
  double mu_max = 50.0;
  double mu_min = 1e-10;         // iterate clamp
  // Iterates clamped to |sigma| <= 1 - sigma_margin. Near-collinear roots
  // live in a boundary layer with 1 - sigma down to ~1e-10, so the margin
  // sits just above the kernel's logarithmic cutoff.
  double sigma_margin = 1e-11;
  double collinear_sin = 1e-8;   // sin(alpha) below this dispatches to 1D
  double collinear_speed = 1e-12;
  int continuation_steps = 16;   // fallback homotopy steps in alpha
  int max_seed_trials = 128;     // Newton attempts among ranked seeds
};

struct AdjointSolution {
  double mu = 0.0;
  double sigma = 0.0;
  double t_f = 0.0;
  Vector2 zeta{};  // |zeta| = mu
  Vector2 eta{};   // |eta| = 1
  double residual_norm = 0.0;
  int newton_iters = 0;
};

// Outcome of solve() with the problem echoed back. Collinear inputs carry
// the one-dimensional branch (embedded on the abscissa with signed
// v0 = +-speed); everything else carries the planar adjoint solution.
struct Solution {
  CanonicalProblem problem;
  std::variant<AdjointSolution, OneDimSolution> branch;

  bool is_one_dim() const { return std::holds_alternative<OneDimSolution>(branch); }
  const AdjointSolution* adjoint() const { return std::get_if<AdjointSolution>(&branch); }
  const OneDimSolution* one_dim() const { return std::get_if<OneDimSolution>(&branch); }

  double t_f() const {
    return is_one_dim() ? std::get<OneDimSolution>(branch).t_f
                        : std::get<AdjointSolution>(branch).t_f;
  }
  // Signed scalar v0 Used by the one-dimensional embedding.
  double one_dim_v0() const {
    return problem.alpha < 1.5707963267948966 ? problem.speed : -problem.speed;
  }
};

// Residuals of the reduced system at (mu, sigma):
//   r1 = speed^2 * fx2 - f02
//   r2 = fx2 * speed * c + f12,  c = cos(v0, v_f) = -cos(alpha).
std::pair<double, double> residuals(double mu, double sigma, const CanonicalProblem& problem);

// Grid seeds ranked by ascending residual norm; a continuation hint, when
// given, is ranked first.
std::vector<std::pair<double, double>> seed_candidates(
    const CanonicalProblem& problem, const SolverConfig& config,
    std::optional<std::pair<double, double>> hint = std::nullopt);

// Solve the 2x2 linear vector system for (zeta, eta) given a root.
// Throws SingularRecovery when the coefficient matrix is degenerate.
std::pair<Vector2, Vector2> recover_adjoint(double mu, double sigma, double t_f,
                                            const CanonicalProblem& problem);

// Throws NoConvergence when every seed (and the continuation fallback)
// fails; the exception carries the best residual seen.
Solution solve(const CanonicalProblem& problem, const SolverConfig& config = {},
               std::optional<std::pair<double, double>> hint = std::nullopt);

}  // namespace tor
