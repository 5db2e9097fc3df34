#pragma once

#include <cmath>

#include "tor/vector2.hpp"

namespace tor {

// Canonical return problem: unit force bound, start and target position at
// the origin, terminal velocity v_f = (-1, 0). The initial velocity is
// speed*(cos alpha, sin alpha) with alpha in [0, pi]; directions below the
// abscissa are equivalent by mirror symmetry.
struct CanonicalProblem {
  double speed = 0.0;  // |v0| >= 0
  double alpha = 0.0;  // angle between v0 and the positive abscissa, [0, pi]

  Vector2 initial_velocity() const {
    return {speed * std::cos(alpha), speed * std::sin(alpha)};
  }
  static constexpr Vector2 terminal_velocity() { return {-1.0, 0.0}; }
};

// Reduce an arbitrary direction angle into [0, pi] by the mirror symmetry;
// `reflected` records whether the y-flip was applied.
struct CanonicalInput {
  CanonicalProblem problem;
  bool reflected = false;
};
CanonicalInput make_canonical(double speed, double alpha);

}  // namespace tor
