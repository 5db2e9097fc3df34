#include "tor/normalize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tor/kernels.hpp"

namespace tor {

std::pair<CanonicalProblem, NormalizationMap> canonicalize(const GeneralProblem& gp) {
  if (!(gp.mass > 0.0) || !(gp.u_max > 0.0)) {
    throw std::invalid_argument("mass and force bound must be positive");
  }
  if (!is_finite(gp.x0) || !is_finite(gp.v0) || !is_finite(gp.v_f)) {
    throw std::invalid_argument("problem data must be finite");
  }
  const double vf_norm = norm(gp.v_f);
  if (!(vf_norm > 0.0)) {
    throw std::invalid_argument("terminal velocity must be nonzero");
  }

  NormalizationMap map;
  map.velocity_scale = vf_norm;
  map.time_scale = gp.mass * vf_norm / gp.u_max;
  map.length_scale = map.velocity_scale * map.time_scale;
  map.control_scale = gp.u_max;
  map.origin = gp.x0;
  map.t0 = gp.t0;
  // Rotate v_f onto (-1, 0); reflect v0 into the upper half-plane.
  map.rotation = std::numbers::pi - std::atan2(gp.v_f.y, gp.v_f.x);

  Vector2 w = rotated(gp.v0, map.rotation) / map.velocity_scale;
  if (w.y < 0.0) {
    map.reflection = true;
    w = reflected_y(w);
  }

  const double speed = norm(gp.v0) / vf_norm;
  double alpha = speed > 0.0 ? std::atan2(w.y, w.x) : 0.0;
  if (alpha < 0.0) alpha = 0.0;  // w is in the closed upper half-plane
  return {CanonicalProblem{speed, alpha}, map};
}

PhysicalSampler::PhysicalSampler(Solution sol, NormalizationMap map)
    : sol_(std::move(sol)), map_(map) {}

double PhysicalSampler::t_end() const {
  return map_.t0 + map_.time_scale * sol_.t_f();
}

PhysicalSampler::State PhysicalSampler::state(double t_physical) const {
  const double t = (t_physical - map_.t0) / map_.time_scale;
  auto [x, v] = state_at(sol_, t);
  Vector2 u = control_at(sol_, t);
  if (map_.reflection) {
    x = reflected_y(x);
    v = reflected_y(v);
    u = reflected_y(u);
  }
  const double undo = -map_.rotation;
  x = rotated(x, undo);
  v = rotated(v, undo);
  u = rotated(u, undo);
  return {map_.origin + map_.length_scale * x, map_.velocity_scale * v,
          map_.control_scale * u};
}

PhysicalSampler map_back(const Solution& sol, const NormalizationMap& map) {
  return PhysicalSampler(sol, map);
}

std::pair<CanonicalProblem, DualMap> dualize(const CanonicalProblem& p) {
  if (!(p.speed > 0.0)) {
    throw std::invalid_argument("dualize requires speed > 0");
  }
  return {CanonicalProblem{1.0 / p.speed, p.alpha}, DualMap{p.speed}};
}

std::pair<double, double> dual_parameters(double mu, double sigma) {
  const double r_f = detail::radical(mu, sigma);
  if (!(r_f > 0.0)) {
    throw std::domain_error("dual_parameters undefined where the radical vanishes");
  }
  return {mu / r_f, (mu - sigma) / r_f};
}

}  // namespace tor
