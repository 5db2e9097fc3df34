#include "tor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "tor/errors.hpp"
#include "tor/quadrature.hpp"

namespace tor::oracle {

namespace {

using quadrature::integrate;

// ---------------------------------------------------------------------------
// Residuals of the reduced system rebuilt from quadrature alone.
//
// With the horizon normalized to 1 and rho = mu, the four steering
// integrals over tau in [0, 1] give the coefficient set directly:
//   b_zeta = -int -tau/R    b_eta = -int 1/R
//   a_zeta = int -tau/R - int -(1-tau) tau/R ... assembled below.

struct QuadForms {
  double fx2, f02, f12;
};

QuadForms quad_forms(double mu, double sigma) {
  const auto r = [mu, sigma](double tau) {
    return std::sqrt(mu * mu * tau * tau - 2.0 * sigma * mu * tau + 1.0);
  };
  const double v_xi = integrate([&](double tau) { return -tau / r(tau); }, 0.0, 1.0);
  const double v_eta = integrate([&](double tau) { return 1.0 / r(tau); }, 0.0, 1.0);
  // Repeated integral collapsed with the (t - tau) weight.
  const double x_xi =
      integrate([&](double tau) { return -(1.0 - tau) * tau / r(tau); }, 0.0, 1.0);
  const double x_eta =
      integrate([&](double tau) { return (1.0 - tau) / r(tau); }, 0.0, 1.0);

  const double a_z = v_xi - x_xi;
  const double a_e = v_eta - x_eta;
  const double b_z = -v_xi;
  const double b_e = -v_eta;

  QuadForms q;
  q.fx2 = a_z * a_z * mu * mu + 2.0 * a_z * a_e * mu * sigma + a_e * a_e;
  const double sz = a_z + b_z, se = a_e + b_e;
  q.f02 = sz * sz * mu * mu + 2.0 * mu * sigma * sz * se + se * se;
  const double ab = a_z * b_z * mu * mu + (a_z * b_e + a_e * b_z) * mu * sigma + a_e * b_e;
  q.f12 = -(q.fx2 + ab);
  return q;
}

double quad_residual_norm(double mu, double sigma, const CanonicalProblem& p) {
  const QuadForms q = quad_forms(mu, sigma);
  const double c = -std::cos(p.alpha);
  const double r1 = p.speed * p.speed * q.fx2 - q.f02;
  const double r2 = q.fx2 * p.speed * c + q.f12;
  return std::hypot(r1, r2);
}

// Golden-section minimization of a 1-d slice.
template <typename F>
std::pair<double, double> golden_min(F f, double lo, double hi, int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// ---------------------------------------------------------------------------
// Direct transcription machinery.

struct Transcription {
  // Exact per-segment integration of piecewise-constant unit controls:
  //   v(T) = v0 + h * sum u_k
  //   x(T) = T v0 + sum c_k u_k,  c_k = h*(h/2 + T - (k+1) h).
  int m;
  double T, h;
  std::vector<double> c;

  Transcription(int segments, double horizon, double /*speed*/)
      : m(segments), T(horizon), h(horizon / segments), c(segments) {
    for (int k = 0; k < m; ++k) c[k] = h * (0.5 * h + T - (k + 1) * h);
  }
};

struct FitResult {
  double violation;
  std::vector<double> angles;
};

// Terminal-violation objective and analytic gradient in the segment angles.
double objective(const Transcription& tr, const CanonicalProblem& p,
                 const std::vector<double>& th, std::vector<double>* grad) {
  const Vector2 v0 = p.initial_velocity();
  const Vector2 v_goal = CanonicalProblem::terminal_velocity();
  Vector2 x{tr.T * v0.x, tr.T * v0.y};
  Vector2 v = v0;
  std::vector<Vector2> u(tr.m);
  for (int k = 0; k < tr.m; ++k) {
    u[k] = {std::cos(th[k]), std::sin(th[k])};
    x += tr.c[k] * u[k];
    v += tr.h * u[k];
  }
  const Vector2 dv = v - v_goal;
  if (grad) {
    for (int k = 0; k < tr.m; ++k) {
      const Vector2 perp{-u[k].y, u[k].x};
      (*grad)[k] = 2.0 * (tr.c[k] * dot(x, perp) + tr.h * dot(dv, perp));
    }
  }
  return norm2(x) + norm2(dv);
}

// Barzilai-Borwein gradient descent. The iteration is non-monotone, so the
// best iterate seen is what gets returned (a feasible warm start must never
// come back infeasible).
FitResult fit_angles(const Transcription& tr, const CanonicalProblem& p,
                     std::vector<double> th, double stop_violation) {
  const int n = tr.m;
  std::vector<double> g(n), g_prev(n), th_prev(n);
  double f = objective(tr, p, th, &g);
  std::vector<double> th_best = th;
  double f_best = f;
  double step = 1e-2;
  for (int it = 0; it < 800; ++it) {
    if (std::sqrt(f_best) < stop_violation) break;
    th_prev = th;
    g_prev = g;
    for (int k = 0; k < n; ++k) th[k] -= step * g[k];
    f = objective(tr, p, th, &g);
    if (f < f_best) {
      f_best = f;
      th_best = th;
    }
    double sy = 0.0, ss = 0.0;
    for (int k = 0; k < n; ++k) {
      const double s = th[k] - th_prev[k];
      const double y = g[k] - g_prev[k];
      sy += s * y;
      ss += s * s;
    }
    step = (std::abs(sy) > 1e-300) ? std::abs(ss / sy) : 1e-2;
    step = std::clamp(step, 1e-6, 10.0);
  }
  return {std::sqrt(f_best), std::move(th_best)};
}

std::vector<double> split_angles(const std::vector<double>& coarse, int m) {
  std::vector<double> fine(m);
  for (int k = 0; k < m; ++k) {
    fine[k] = coarse[std::min<size_t>(k / 2, coarse.size() - 1)];
  }
  return fine;
}

// Best violation achievable at horizon T; seeds: warm starts, a split parent
// solution, and a deterministic batch of random restarts.
FitResult best_fit(const Transcription& tr, const CanonicalProblem& p,
                   const std::vector<std::vector<double>>& seeds, double tol,
                   std::mt19937& rng, int random_restarts) {
  std::optional<FitResult> best;
  auto consider = [&](std::vector<double> th) {
    FitResult r = fit_angles(tr, p, std::move(th), 0.3 * tol);
    if (!best || r.violation < best->violation) best = std::move(r);
  };
  for (const auto& s : seeds) {
    if (static_cast<int>(s.size()) == tr.m) consider(s);
    if (best && best->violation < tol) return *best;
  }
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  for (int r = 0; r < random_restarts; ++r) {
    std::vector<double> th(tr.m);
    for (auto& a : th) a = dist(rng);
    consider(std::move(th));
    if (best && best->violation < tol) return *best;
  }
  return *best;
}

struct DirectInternal {
  DirectOracleResult result;
  std::vector<double> angles;  // feasible angles at result.t_f
};

DirectInternal direct_oracle_impl(const CanonicalProblem& p, int segments, double tol) {
  // Nested refinement: the coarse solution seeds (and upper-bounds) this one,
  // which makes the returned horizon nonincreasing in `segments`.
  std::optional<DirectInternal> coarse;
  if (segments > 32) coarse = direct_oracle_impl(p, segments / 2, tol);

  std::mt19937 rng(0x5eed ^ static_cast<uint32_t>(segments));
  const Vector2 dv = p.initial_velocity() - CanonicalProblem::terminal_velocity();
  const double dv_norm = norm(dv);
  if (dv_norm < 1e-12) return {{0.0, 0.0, segments}, std::vector<double>(segments, 0.0)};

  const double t_cap = 10.0 * (1.0 + p.speed);
  std::vector<std::vector<double>> warm;  // angle seeds carried across probes
  if (coarse) warm.push_back(split_angles(coarse->angles, segments));

  std::vector<double> hi_angles;
  auto probe = [&](double T) -> FitResult {
    Transcription tr(segments, T, p.speed);
    std::vector<std::vector<double>> seeds = warm;
    // A straight "turn the velocity around" profile is a decent generic seed.
    seeds.emplace_back(segments, angle_of(-1.0 * unit(dv)));
    FitResult r = best_fit(tr, p, seeds, tol, rng, 8);
    warm.push_back(r.angles);
    if (warm.size() > 4) warm.erase(warm.begin() + (coarse ? 1 : 0));
    return r;
  };

  // Establish a feasible upper end of the bracket.
  double lo = std::max(dv_norm * 0.5, 1e-6);
  double hi = std::numeric_limits<double>::quiet_NaN();
  double hi_violation = 0.0;
  if (coarse) {
    FitResult r = probe(coarse->result.t_f);
    if (r.violation < tol) {
      hi = coarse->result.t_f;
      hi_violation = r.violation;
      hi_angles = r.angles;
    }
  }
  if (!std::isfinite(hi)) {
    for (double T = std::max(dv_norm, 1.0); T <= t_cap; T *= 1.5) {
      FitResult r = probe(T);
      if (r.violation < tol) {
        hi = T;
        hi_violation = r.violation;
        hi_angles = r.angles;
        break;
      }
      lo = T;
    }
  }
  if (!std::isfinite(hi)) {
    throw NoConvergence("direct oracle: no feasible horizon below the cap", 0.0, 0);
  }

  // Bisect down; `hi` stays certified feasible throughout.
  for (int i = 0; i < 48 && (hi - lo) > 1e-5 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    FitResult r = probe(mid);
    if (r.violation < tol) {
      hi = mid;
      hi_violation = r.violation;
      hi_angles = r.angles;
    } else {
      lo = mid;
    }
  }
  return {{hi, hi_violation, segments}, std::move(hi_angles)};
}

}  // namespace

GridOracleResult grid_oracle(const CanonicalProblem& p, int n_mu, int n_sigma,
                             double mu_max) {
  if (n_mu < 2 || n_sigma < 2) {
    throw std::invalid_argument("grid_oracle needs at least a 2x2 grid");
  }
  // Solutions crowd into a boundary layer at sigma -> 1, so the sigma axis
  // is worked in the stretched coordinate w with sigma = 1 - 2*exp(-w)
  // (w uniform covers sigma from -1 up to 1 - 2e-12).
  const double w_lo = std::log(1.0), w_hi = std::log(2.0 / 2e-12);
  auto sg_of_w = [](double w) { return 1.0 - 2.0 * std::exp(-w); };

  auto mu_of = [&](int idx) {
    const double frac = static_cast<double>(idx + 1) / n_mu;
    return mu_max * frac * frac;
  };

  double best = std::numeric_limits<double>::infinity();
  double best_mu = mu_max, best_w = w_lo;
  int best_i = 0;
  for (int i = 0; i < n_mu; ++i) {
    const double mu = mu_of(i);
    for (int j = 0; j < n_sigma; ++j) {
      const double w = w_lo + (w_hi - w_lo) * static_cast<double>(j) / (n_sigma - 1);
      const double fn = quad_residual_norm(mu, sg_of_w(w), p);
      if (fn < best) {
        best = fn;
        best_mu = mu;
        best_w = w;
        best_i = i;
      }
    }
  }

  // The residual valley is narrow and curved, so locate the basin with a
  // Nelder-Mead descent in (mu, w) before the per-axis golden polish
  // (coordinate descent alone zigzags and stalls off-valley here).
  {
    auto eval = [&](double m, double w) {
      m = std::clamp(m, 1e-12, mu_max);
      w = std::clamp(w, w_lo, w_hi);
      return quad_residual_norm(m, sg_of_w(w), p);
    };
    struct Vtx {
      double m, w, f;
    };
    const double dm = (best_i + 1 < n_mu ? mu_of(best_i + 1) : mu_max) - best_mu;
    const double dw = (w_hi - w_lo) / (n_sigma - 1);
    std::vector<Vtx> s{{best_mu, best_w, best},
                       {best_mu + (dm != 0.0 ? dm : 0.1), best_w,
                        eval(best_mu + (dm != 0.0 ? dm : 0.1), best_w)},
                       {best_mu, best_w + dw, eval(best_mu, best_w + dw)}};
    for (int it = 0; it < 300; ++it) {
      std::sort(s.begin(), s.end(), [](const Vtx& a, const Vtx& b) { return a.f < b.f; });
      if (std::hypot(s[2].m - s[0].m, s[2].w - s[0].w) < 1e-12) break;
      const double cm = 0.5 * (s[0].m + s[1].m), cw = 0.5 * (s[0].w + s[1].w);
      Vtx r{cm + (cm - s[2].m), cw + (cw - s[2].w), 0.0};
      r.f = eval(r.m, r.w);
      if (r.f < s[0].f) {
        Vtx e{cm + 2.0 * (cm - s[2].m), cw + 2.0 * (cw - s[2].w), 0.0};
        e.f = eval(e.m, e.w);
        s[2] = e.f < r.f ? e : r;
      } else if (r.f < s[1].f) {
        s[2] = r;
      } else {
        Vtx c{cm + 0.5 * (s[2].m - cm), cw + 0.5 * (s[2].w - cw), 0.0};
        c.f = eval(c.m, c.w);
        if (c.f < s[2].f) {
          s[2] = c;
        } else {
          for (int k = 1; k < 3; ++k) {
            s[k].m = 0.5 * (s[k].m + s[0].m);
            s[k].w = 0.5 * (s[k].w + s[0].w);
            s[k].f = eval(s[k].m, s[k].w);
          }
        }
      }
    }
    std::sort(s.begin(), s.end(), [](const Vtx& a, const Vtx& b) { return a.f < b.f; });
    best_mu = std::clamp(s[0].m, 1e-12, mu_max);
    best_w = std::clamp(s[0].w, w_lo, w_hi);
    best = s[0].f;
  }

  // Final golden-section polish along each axis.
  double mu_w = std::max(1e-9, 1e-3 * std::max(1.0, best_mu));
  double w_w = 1e-3;
  for (int pass = 0; pass < 2; ++pass) {
    const double mu_lo = std::max(1e-12, best_mu - 0.5 * mu_w);
    const double mu_hi = std::min(mu_max, best_mu + 0.5 * mu_w);
    best_mu = golden_min(
                  [&](double m) { return quad_residual_norm(m, sg_of_w(best_w), p); },
                  mu_lo, mu_hi, 32)
                  .first;
    const double wl = std::max(w_lo, best_w - 0.5 * w_w);
    const double wh = std::min(w_hi, best_w + 0.5 * w_w);
    auto [w_ref, f_ref] = golden_min(
        [&](double w) { return quad_residual_norm(best_mu, sg_of_w(w), p); }, wl, wh, 32);
    best_w = w_ref;
    best = f_ref;
    mu_w *= 0.02;
    w_w *= 0.02;
  }

  const double best_sg = sg_of_w(best_w);
  GridOracleResult out;
  out.mu = best_mu;
  out.sigma = best_sg;
  out.residual_norm = best;
  out.t_f = 1.0 / std::sqrt(quad_forms(best_mu, best_sg).fx2);
  const double s_lo = sg_of_w(std::max(w_lo, best_w - 0.5 * w_w));
  const double s_hi = sg_of_w(std::min(w_hi, best_w + 0.5 * w_w));
  out.resolution = std::hypot(mu_w, s_hi - s_lo);
  double tf_min = out.t_f, tf_max = out.t_f;
  for (double m : {std::max(1e-12, best_mu - 0.5 * mu_w), best_mu + 0.5 * mu_w}) {
    for (double s : {s_lo, s_hi}) {
      const double tf = 1.0 / std::sqrt(quad_forms(m, s).fx2);
      tf_min = std::min(tf_min, tf);
      tf_max = std::max(tf_max, tf);
    }
  }
  // Honest floor for quadrature noise in the refined location.
  out.t_f_resolution = (tf_max - tf_min) + 1e-8;
  return out;
}

DirectOracleResult direct_oracle(const CanonicalProblem& p, int segments, double tol) {
  if (segments < 32) throw std::invalid_argument("direct_oracle needs >= 32 segments");
  if (!(tol > 0.0)) throw std::invalid_argument("direct_oracle tol must be positive");
  return direct_oracle_impl(p, segments, tol).result;
}

BangSolution bang_oracle_1d(double v0) {
  // Phase 1: u = s for t1; phase 2: u = -s for t2 = t1 + s(1 + v0).
  // The position condition reduces to t1^2 + 2 v0 s t1 + (v0^2 - 1)/2 = 0.
  BangSolution best{std::numeric_limits<double>::infinity(), 0.0};
  for (int s : {+1, -1}) {
    const double disc = (v0 * v0 + 1.0) / 2.0;
    const double root = std::sqrt(disc);
    for (int pm : {+1, -1}) {
      const double t1 = -v0 * s + pm * root;
      if (t1 < 0.0) continue;
      const double t2 = t1 + s * (1.0 + v0);
      if (t2 < 0.0) continue;
      const double t_f = t1 + t2;
      if (t_f < best.t_f) best = {t_f, t1};
    }
  }
  return best;
}

}  // namespace tor::oracle
