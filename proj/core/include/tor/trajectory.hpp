#pragma once

#include <utility>
#include <vector>

#include "tor/solver.hpp"

// Trajectory evaluation and qualitative analysis: closed-form sampling,
// control direction angles phi/psi, acceleration/deceleration segmentation
// from the sign of d|v|^2/dt = 2 (v, u), and an independent RK4 check.

namespace tor {

struct TrajectorySample {
  double t = 0.0;
  Vector2 x{}, v{}, u{};
  double speed = 0.0;  // |v|
};

enum class Regime { Accelerating, Decelerating };

struct RegimeSegment {
  double t_begin = 0.0, t_end = 0.0;
  Regime regime = Regime::Accelerating;
};

struct SpeedExtremum {
  double t = 0.0;
  double speed = 0.0;
  bool is_max = false;
};

struct RegimeReport {
  std::vector<RegimeSegment> segments;
  std::vector<SpeedExtremum> extrema;
};

struct TrajectoryReport {
  std::vector<TrajectorySample> samples;  // strictly increasing in t
  double terminal_position_error = 0.0;
  double terminal_velocity_error = 0.0;
  double phi = 0.0;  // direction angle of u(0), in [0, 2*pi)
  double psi = 0.0;  // direction angle of u(t_f), in [0, 2*pi)
  bool polar_angle_monotone = false;
  bool in_angle_sector = false;
  std::vector<SpeedExtremum> speed_extrema;
};

// Steering law u = Q/|Q|, Q = -xi t + eta; a smooth unit vector.
Vector2 control_at(const AdjointSolution& sol, double t);
std::pair<Vector2, Vector2> state_at(const AdjointSolution& sol,
                                     const CanonicalProblem& problem, double t);

// Solution-level variants dispatching between the planar steering law and
// the one-dimensional bang-bang branch embedded on the abscissa.
Vector2 control_at(const Solution& sol, double t);
std::pair<Vector2, Vector2> state_at(const Solution& sol, double t);

// n >= 2 equally spaced samples plus report fields. The polar-angle and
// sector flags evaluate the interior arc (the endpoints sit at the origin);
// collinear solutions live on a boundary ray of the sector and pass
// vacuously.
TrajectoryReport sample_trajectory(const Solution& sol, int n);

// (phi, psi) in [0, 2*pi).
std::pair<double, double> control_angles(const Solution& sol);

// Regime segmentation with n >= 16 scan samples; boundaries are refined by
// bisection on (v, u) and adjacent equal regimes merged. A dead band of
// 1e-12 on (v, u) suppresses chatter at tangencies.
RegimeReport speed_regimes(const Solution& sol, int n);

// Classical fixed-step RK4 of xdot = v, vdot = u(t) from (0, v0); returns
// terminal position and velocity errors against the canonical targets.
std::pair<double, double> forward_verify(const Solution& sol, int steps);

// True when `angle` lies on the counterclockwise arc from `lo` to `hi`
// (all in radians), within `tol`. Used for the phi/psi range checks where
// values wrap at 2*pi.
bool angle_in_arc(double angle, double lo, double hi, double tol);

}  // namespace tor
