#include "tor/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tor {

namespace {

constexpr double kVerifyTol = 1e-8;      // terminal residuals and norm recovery
constexpr double kNearTol = 1e-7;        // accept near-converged roots that verify
constexpr double kRootDedupe = 1e-6;

struct Box {
  double mu_lo, mu_hi, sg_lo, sg_hi;
  void clamp(double& mu, double& sg) const {
    mu = std::clamp(mu, mu_lo, mu_hi);
    sg = std::clamp(sg, sg_lo, sg_hi);
  }
};

double res_norm(std::pair<double, double> r) {
  return std::hypot(r.first, r.second);
}

std::optional<std::pair<double, double>> try_residuals(double mu, double sg,
                                                       const CanonicalProblem& p) {
  try {
    auto r = residuals(mu, sg, p);
    if (!std::isfinite(r.first) || !std::isfinite(r.second)) return std::nullopt;
    return r;
  } catch (const KernelDomainError&) {
    return std::nullopt;
  }
}

struct NewtonResult {
  double mu, sigma, residual_norm;
  int iters;
};

// Damped Newton on the 2-vector residual with a finite-difference Jacobian.
std::optional<NewtonResult> newton_from(double mu, double sg, const CanonicalProblem& p,
                                        const SolverConfig& cfg, const Box& box) {
  auto f = try_residuals(mu, sg, p);
  if (!f) return std::nullopt;
  double fn = res_norm(*f);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (fn <= cfg.newton_tol) return NewtonResult{mu, sg, fn, it - 1};

    // Central differences, step scaled per variable and kept inside the box.
    // The sigma step shrinks near |sigma| = 1: roots sit inside a boundary
    // layer there and the residual curvature grows like 1/(1 - sigma).
    const double h_mu = 1e-7 * std::max(1.0, std::abs(mu));
    const double h_sg =
        std::max(1e-15, std::min(1e-7 * std::max(1.0, std::abs(sg)),
                                 0.25 * (1.0 - std::abs(sg))));
    double mu_a = std::min(mu + h_mu, box.mu_hi), mu_b = std::max(mu - h_mu, box.mu_lo);
    double sg_a = std::min(sg + h_sg, box.sg_hi), sg_b = std::max(sg - h_sg, box.sg_lo);
    auto f_mu_a = try_residuals(mu_a, sg, p), f_mu_b = try_residuals(mu_b, sg, p);
    auto f_sg_a = try_residuals(mu, sg_a, p), f_sg_b = try_residuals(mu, sg_b, p);
    if (!f_mu_a || !f_mu_b || !f_sg_a || !f_sg_b) return std::nullopt;
    const double dmu = mu_a - mu_b, dsg = sg_a - sg_b;
    const double j11 = (f_mu_a->first - f_mu_b->first) / dmu;
    const double j21 = (f_mu_a->second - f_mu_b->second) / dmu;
    const double j12 = (f_sg_a->first - f_sg_b->first) / dsg;
    const double j22 = (f_sg_a->second - f_sg_b->second) / dsg;

    const double det = j11 * j22 - j12 * j21;
    const double scale = std::max({std::abs(j11), std::abs(j12), std::abs(j21),
                                   std::abs(j22), 1e-300});
    if (std::abs(det) < 1e-14 * scale * scale) return std::nullopt;

    const double step_mu = (-f->first * j22 + f->second * j12) / det;
    const double step_sg = (-f->second * j11 + f->first * j21) / det;

    // Backtracking line search on the residual norm.
    bool accepted = false;
    for (double t = 1.0; t >= cfg.min_step; t *= cfg.damping_factor) {
      double mu_n = mu + t * step_mu, sg_n = sg + t * step_sg;
      box.clamp(mu_n, sg_n);
      auto f_n = try_residuals(mu_n, sg_n, p);
      if (!f_n) continue;
      const double fn_n = res_norm(*f_n);
      if (fn_n < fn * (1.0 - 1e-4 * t)) {
        mu = mu_n;
        sg = sg_n;
        f = f_n;
        fn = fn_n;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Stalled; report the point anyway if it is already essentially a root.
      return NewtonResult{mu, sg, fn, it};
    }
  }
  return NewtonResult{mu, sg, fn, cfg.max_iters};
}

struct VerifiedRoot {
  AdjointSolution sol;
};

// Closed-form terminal check: a returned solution must actually satisfy the
// boundary conditions, not merely zero the reduced residuals.
std::optional<VerifiedRoot> verify_root(const NewtonResult& root,
                                        const CanonicalProblem& p) {
  FormValues f;
  try {
    f = scalar_forms(root.mu, root.sigma);
  } catch (const KernelDomainError&) {
    return std::nullopt;
  }
  if (!(f.fx2 > 0.0) || !std::isfinite(f.fx2)) return std::nullopt;
  const double t_f = 1.0 / std::sqrt(f.fx2);

  Vector2 zeta, eta;
  try {
    std::tie(zeta, eta) = recover_adjoint(root.mu, root.sigma, t_f, p);
  } catch (const SingularRecovery&) {
    return std::nullopt;
  }
  if (std::abs(norm(eta) - 1.0) > kVerifyTol) return std::nullopt;
  if (std::abs(norm(zeta) - root.mu) > kVerifyTol) return std::nullopt;

  // Terminal state through the closed-form kernels.
  const KernelParams kp{root.mu / t_f, root.sigma};
  const Vector2 xi = zeta / t_f;
  const Vector2 v0 = p.initial_velocity();
  std::pair<double, double> vk, xk;
  try {
    vk = velocity_kernels(kp, t_f);
    xk = position_kernels(kp, t_f);
  } catch (const KernelDomainError&) {
    return std::nullopt;
  }
  const Vector2 v_end = v0 + vk.first * xi + vk.second * eta;
  const Vector2 x_end = t_f * v0 + xk.first * xi + xk.second * eta;
  if (norm(x_end) > kVerifyTol) return std::nullopt;
  if (norm(v_end - CanonicalProblem::terminal_velocity()) > kVerifyTol) return std::nullopt;

  AdjointSolution s;
  s.mu = root.mu;
  s.sigma = root.sigma;
  s.t_f = t_f;
  s.zeta = zeta;
  s.eta = eta;
  s.residual_norm = root.residual_norm;
  s.newton_iters = root.iters;
  return VerifiedRoot{s};
}

// One full pass: rank seeds, run Newton, verify, keep the minimal-t_f root.
std::optional<AdjointSolution> attempt(const CanonicalProblem& p, const SolverConfig& cfg,
                                       std::optional<std::pair<double, double>> hint,
                                       double& best_residual, int& tried) {
  const Box box{cfg.mu_min, cfg.mu_max, -1.0 + cfg.sigma_margin, 1.0 - cfg.sigma_margin};
  auto seeds = seed_candidates(p, cfg, hint);

  std::vector<NewtonResult> roots;
  const int limit = std::min<int>(cfg.max_seed_trials, static_cast<int>(seeds.size()));
  for (int i = 0; i < limit; ++i) {
    ++tried;
    auto r = newton_from(seeds[i].first, seeds[i].second, p, cfg, box);
    if (!r) continue;
    best_residual = std::min(best_residual, r->residual_norm);
    if (r->residual_norm > kNearTol) continue;
    const bool dup = std::any_of(roots.begin(), roots.end(), [&](const NewtonResult& q) {
      return std::abs(q.mu - r->mu) <= kRootDedupe * std::max(1.0, std::abs(q.mu)) &&
             std::abs(q.sigma - r->sigma) <= kRootDedupe;
    });
    if (!dup) roots.push_back(*r);
  }

  std::optional<AdjointSolution> best;
  for (const auto& r : roots) {
    // Roots that only nearly met the Newton tolerance must still verify.
    if (r.residual_norm > cfg.newton_tol && r.residual_norm > kNearTol) continue;
    auto v = verify_root(r, p);
    if (!v) continue;
    if (!best || v->sol.t_f < best->t_f) best = v->sol;
  }
  return best;
}

}  // namespace

std::pair<double, double> residuals(double mu, double sigma, const CanonicalProblem& p) {
  const FormValues f = scalar_forms(mu, sigma);
  const double c = -std::cos(p.alpha);  // cos of the angle between v0 and v_f
  const double r1 = p.speed * p.speed * f.fx2 - f.f02;
  const double r2 = f.fx2 * p.speed * c + f.f12;
  return {r1, r2};
}

std::vector<std::pair<double, double>> seed_candidates(
    const CanonicalProblem& p, const SolverConfig& cfg,
    std::optional<std::pair<double, double>> hint) {
  struct Ranked {
    double mu, sg, fn;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(static_cast<size_t>(cfg.n_mu_seeds) * cfg.n_sigma_seeds);

  for (int i = 0; i < cfg.n_mu_seeds; ++i) {
    // Quadratic spacing: the interesting small-mu region gets finer coverage.
    const double frac = static_cast<double>(i + 1) / cfg.n_mu_seeds;
    const double mu = cfg.mu_max * frac * frac;
    for (int j = 0; j < cfg.n_sigma_seeds; ++j) {
      // Chebyshev-extrema spacing: clusters toward sigma = +-1 where the
      // near-collinear boundary layers sit, stays dense in the middle.
      const double sg =
          cfg.n_sigma_seeds == 1
              ? 0.0
              : -(1.0 - cfg.sigma_margin) *
                    std::cos(std::numbers::pi * static_cast<double>(j) /
                             (cfg.n_sigma_seeds - 1));
      auto r = try_residuals(mu, sg, p);
      if (!r) continue;
      ranked.push_back({mu, sg, res_norm(*r)});
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const Ranked& a, const Ranked& b) { return a.fn < b.fn; });

  std::vector<std::pair<double, double>> out;
  out.reserve(ranked.size() + 1);
  if (hint) out.push_back(*hint);
  for (const auto& r : ranked) out.emplace_back(r.mu, r.sg);
  return out;
}

std::pair<Vector2, Vector2> recover_adjoint(double mu, double sigma, double t_f,
                                            const CanonicalProblem& p) {
  const CoefficientSet c = coefficients(mu, sigma);
  const double det = c.a_zeta * c.b_eta - c.a_eta * c.b_zeta;
  const double scale = std::max({std::abs(c.a_zeta), std::abs(c.a_eta),
                                 std::abs(c.b_zeta), std::abs(c.b_eta), 1.0});
  if (std::abs(det) < 1e-12 * scale * scale) throw SingularRecovery(det);

  const Vector2 v_f = CanonicalProblem::terminal_velocity();
  const Vector2 rhs1 = v_f / t_f;
  const Vector2 rhs2 = (p.initial_velocity() - v_f) / t_f;
  const Vector2 zeta = (c.b_eta * rhs1 - c.a_eta * rhs2) / det;
  const Vector2 eta = (c.a_zeta * rhs2 - c.b_zeta * rhs1) / det;
  return {zeta, eta};
}

Solution solve(const CanonicalProblem& problem, const SolverConfig& cfg,
               std::optional<std::pair<double, double>> hint) {
  if (!(problem.speed >= 0.0) || !std::isfinite(problem.speed) ||
      !std::isfinite(problem.alpha) || problem.alpha < 0.0 ||
      problem.alpha > std::numbers::pi) {
    throw std::invalid_argument("canonical problem outside its domain");
  }

  // Collinear geometry (including speed ~ 0) degenerates to the scalar case.
  if (problem.speed < cfg.collinear_speed ||
      std::sin(problem.alpha) < cfg.collinear_sin) {
    const double v0 =
        problem.alpha < std::numbers::pi / 2.0 ? problem.speed : -problem.speed;
    return Solution{problem, solve_one_dim(v0)};
  }

  double best_residual = std::numeric_limits<double>::infinity();
  int tried = 0;
  if (auto s = attempt(problem, cfg, hint, best_residual, tried)) {
    return Solution{problem, *s};
  }

  // Continuation fallback: walk alpha in from an easier interior problem,
  // reseeding each step with the previous root.
  const double a0 = std::numbers::pi / 2.0;
  std::optional<std::pair<double, double>> walk_hint;
  const int n = std::max(1, cfg.continuation_steps);
  for (int k = 0; k <= n; ++k) {
    const double a = a0 + (problem.alpha - a0) * static_cast<double>(k) / n;
    const CanonicalProblem q{problem.speed, a};
    auto s = attempt(q, cfg, walk_hint, best_residual, tried);
    if (!s) break;
    walk_hint = std::make_pair(s->mu, s->sigma);
    if (k == n) return Solution{problem, *s};
  }

  throw NoConvergence("Newton failed from every seed and continuation path",
                      best_residual, tried);
}

}  // namespace tor
