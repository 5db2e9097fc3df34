#include "tor/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tor {

CanonicalInput make_canonical(double speed, double alpha) {
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw std::invalid_argument("speed must be finite and >= 0");
  }
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  bool reflected = false;
  if (a > std::numbers::pi) {
    a = two_pi - a;
    reflected = true;
  }
  return {CanonicalProblem{speed, a}, reflected};
}

}  // namespace tor
