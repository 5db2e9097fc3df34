#pragma once

#include <utility>

#include "tor/problem.hpp"
#include "tor/trajectory.hpp"
#include "tor/vector2.hpp"

// Reduction of a general return problem (mass, force bound, arbitrary
// terminal velocity, start time, coincident endpoints) to the canonical
// form, the inverse map for solutions, and the high/low speed duality
// v0' = v0/|v0|^2.

namespace tor {

struct GeneralProblem {
  double mass = 1.0;
  double u_max = 1.0;   // force bound
  Vector2 x0{};         // start position == required final position
  Vector2 v0{};
  Vector2 v_f{};        // |v_f| > 0
  double t0 = 0.0;
};

// Invertible affine/similarity map between the general frame and the
// canonical one. length_scale == velocity_scale * time_scale.
struct NormalizationMap {
  double rotation = 0.0;      // applied to (x - origin) after translation
  bool reflection = false;    // y-flip applied after the rotation
  double time_scale = 1.0;    // mass*|v_f|/u_max
  double velocity_scale = 1.0;  // |v_f|
  double length_scale = 1.0;
  double control_scale = 1.0;   // force bound u_max in original units
  Vector2 origin{};
  double t0 = 0.0;
  bool dualized = false;
};

// Rejects |v_f| = 0 (the canonical form pins a unit terminal velocity).
std::pair<CanonicalProblem, NormalizationMap> canonicalize(const GeneralProblem& gp);

// Trajectory/control sampler in the original frame and units.
class PhysicalSampler {
 public:
  PhysicalSampler(Solution sol, NormalizationMap map);

  double t_start() const { return map_.t0; }
  double t_end() const;  // t0 + time_scale * t_f

  struct State {
    Vector2 x, v, u;
  };
  State state(double t_physical) const;

 private:
  Solution sol_;
  NormalizationMap map_;
};

PhysicalSampler map_back(const Solution& sol, const NormalizationMap& map);

// Duality v0' = v0/|v0|^2: speed' = 1/speed at the same alpha, with
// t_f = speed * t_f'. Requires speed > 0.
struct DualMap {
  double primal_speed = 1.0;
  double primal_time(double dual_t_f) const { return primal_speed * dual_t_f; }
};
std::pair<CanonicalProblem, DualMap> dualize(const CanonicalProblem& p);

// Parameter transform between a solution of a problem and the solution of
// its dual: with R_f = (mu^2 - 2 mu sigma + 1)^{1/2},
//   mu'    = mu / R_f
//   sigma' = (mu - sigma) / R_f.
// An involution; the fixed locus mu = 2 sigma is the self-dual unit-speed
// family. (The dual optimal trajectory is the time-reversed, rescaled,
// re-aligned image of the primal one.)
std::pair<double, double> dual_parameters(double mu, double sigma);

}  // namespace tor
