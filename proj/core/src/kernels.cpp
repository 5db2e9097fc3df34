#include "tor/kernels.hpp"

#include <array>
#include <cmath>

namespace tor {
namespace detail {

namespace {

void check_params(const KernelParams& p) {
  if (!(p.rho >= 0.0) || !std::isfinite(p.rho)) {
    throw KernelDomainError("kernel rho must be finite and >= 0");
  }
  if (!(std::abs(p.sigma) <= 1.0 + 1e-9) || !std::isfinite(p.sigma)) {
    throw KernelDomainError("kernel sigma must be finite and within [-1, 1]");
  }
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw KernelDomainError("kernel time must be finite and >= 0");
  }
}

void check_sigma_log(double sigma) {
  if (sigma >= kSigmaLogLimit) {
    throw KernelDomainError(
        "sigma at the logarithmic singularity; collinear geometry must use "
        "the one-dimensional branch");
  }
}

// Partial sums of the Legendre expansions of all four reduced kernels.
struct SeriesSums {
  double w, g1, g2, g3;
};

SeriesSums series_sums(double z, double sigma) {
  // 1/R = sum_n P_n(sigma) z^n, so
  //   W/z   = sum P_n z^n / (n+1)
  //   G1    = sum P_n z^n / (n+2)
  //   G2    = sum P_n z^n / ((n+1)(n+2))
  //   G3    = sum P_n z^n / ((n+2)(n+3))
  double p_prev = 1.0;   // P_0
  double p = sigma;      // P_1
  double zn = 1.0;
  SeriesSums s{1.0, 0.5, 0.5, 1.0 / 6.0};
  for (int n = 1; n <= kSeriesOrder; ++n) {
    zn *= z;
    const double d1 = n + 1.0, d2 = n + 2.0, d3 = n + 3.0;
    s.w += p * zn / d1;
    s.g1 += p * zn / d2;
    s.g2 += p * zn / (d1 * d2);
    s.g3 += p * zn / (d2 * d3);
    const double p_next = ((2.0 * n + 1.0) * sigma * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
  }
  return s;
}

bool use_series(double z, EvalPath path) {
  if (path == EvalPath::Series) return true;
  if (path == EvalPath::Closed) return false;
  return z < kSeriesThreshold;
}

}  // namespace

double radicand(double z, double sigma) {
  // (z - sigma)^2 + (1 - sigma)(1 + sigma); exact rewrite of
  // z^2 - 2 sigma z + 1 that stays accurate for sigma near +-1.
  return (z - sigma) * (z - sigma) + (1.0 - sigma) * (1.0 + sigma);
}

double radical(double z, double sigma) {
  if (z == 0.0) return 1.0;  // constant-control limit, exactly
  double q = radicand(z, sigma);
  if (q < 0.0) {
    if (q < -1e-12) {
      throw KernelDomainError("negative radicand: corrupted kernel parameters");
    }
    q = 0.0;
  }
  return std::sqrt(q);
}

double radical_shift(double z, double sigma) {
  return z * (z - 2.0 * sigma) / (radical(z, sigma) + 1.0);
}

double log_shift(double z, double sigma) {
  const double r = radical(z, sigma);
  if (z >= sigma) {
    return std::log((z - sigma + r) / (1.0 - sigma));
  }
  // z - sigma + R = (1 - sigma^2)/(R + sigma - z) avoids cancellation.
  return std::log((1.0 + sigma) / (r + sigma - z));
}

double reduced_W(double z, double sigma, EvalPath path) {
  if (use_series(z, path)) return series_sums(z, sigma).w;
  return log_shift(z, sigma) / z;
}

double reduced_G1(double z, double sigma, EvalPath path) {
  if (use_series(z, path)) return series_sums(z, sigma).g1;
  return (sigma * log_shift(z, sigma) + radical_shift(z, sigma)) / (z * z);
}

double reduced_G2(double z, double sigma, EvalPath path) {
  if (use_series(z, path)) return series_sums(z, sigma).g2;
  return ((z - sigma) * log_shift(z, sigma) - radical_shift(z, sigma)) / (z * z);
}

double reduced_G3(double z, double sigma, EvalPath path) {
  if (use_series(z, path)) return series_sums(z, sigma).g3;
  const double a = radical_shift(z, sigma);
  const double w = log_shift(z, sigma);
  return -((3.0 * sigma - z) * a + z + (3.0 * sigma * sigma - 1.0 - 2.0 * z * sigma) * w) /
         (2.0 * z * z * z);
}

}  // namespace detail

double radical_R(const KernelParams& params, double t) {
  detail::check_params(params);
  detail::check_time(t);
  return detail::radical(params.rho * t, params.sigma);
}

double log_V(const KernelParams& params, double t) {
  detail::check_params(params);
  detail::check_time(t);
  detail::check_sigma_log(params.sigma);
  return detail::log_shift(params.rho * t, params.sigma) + std::log1p(-params.sigma);
}

std::pair<double, double> velocity_kernels(const KernelParams& params, double t) {
  detail::check_params(params);
  detail::check_time(t);
  detail::check_sigma_log(params.sigma);
  const double z = params.rho * t;
  const double v_xi = -t * t * detail::reduced_G1(z, params.sigma);
  const double v_eta = t * detail::reduced_W(z, params.sigma);
  return {v_xi, v_eta};
}

std::pair<double, double> position_kernels(const KernelParams& params, double t) {
  detail::check_params(params);
  detail::check_time(t);
  detail::check_sigma_log(params.sigma);
  const double z = params.rho * t;
  const double x_xi = -t * t * t * detail::reduced_G3(z, params.sigma);
  const double x_eta = t * t * detail::reduced_G2(z, params.sigma);
  return {x_xi, x_eta};
}

CoefficientSet coefficients(double mu, double sigma) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw KernelDomainError("mu must be finite and >= 0");
  }
  if (!std::isfinite(sigma) || std::abs(sigma) > 1.0) {
    throw KernelDomainError("sigma must be finite and within [-1, 1]");
  }
  detail::check_sigma_log(sigma);

  CoefficientSet c;
  c.a = detail::radical_shift(mu, sigma);
  c.b = mu * detail::reduced_W(mu, sigma);
  c.a_eta = detail::reduced_G1(mu, sigma);
  c.b_zeta = c.a_eta;
  c.b_eta = -detail::reduced_W(mu, sigma);
  c.a_zeta = detail::reduced_G3(mu, sigma) - c.a_eta;
  return c;
}

FormValues scalar_forms(double mu, double sigma) {
  const CoefficientSet c = coefficients(mu, sigma);
  const double sz = c.a_zeta + c.b_zeta;
  const double se = c.a_eta + c.b_eta;

  FormValues f;
  f.fx2 = c.a_zeta * c.a_zeta * mu * mu + 2.0 * c.a_zeta * c.a_eta * mu * sigma +
          c.a_eta * c.a_eta;
  f.f02 = sz * sz * mu * mu + 2.0 * mu * sigma * sz * se + se * se;
  // Bilinear form of the two coefficient vectors under the (zeta, eta) Gram
  // matrix; f12 is minus (fx2 + that), so that fx2*|v0|*cos(v0,v_f) + f12
  // vanishes at a solution.
  const double ab = c.a_zeta * c.b_zeta * mu * mu +
                    (c.a_zeta * c.b_eta + c.a_eta * c.b_zeta) * mu * sigma +
                    c.a_eta * c.b_eta;
  f.f12 = -(f.fx2 + ab);
  return f;
}

}  // namespace tor
