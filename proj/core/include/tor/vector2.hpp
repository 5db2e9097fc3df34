#pragma once

#include <cmath>

namespace tor {

// Planar vector used for positions, velocities, controls and adjoint
// directions alike. Plain aggregate, value semantics.
struct Vector2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vector2 operator+(Vector2 a, Vector2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vector2 operator-(Vector2 a, Vector2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vector2 operator-(Vector2 a) { return {-a.x, -a.y}; }
constexpr Vector2 operator*(double s, Vector2 v) { return {s * v.x, s * v.y}; }
constexpr Vector2 operator*(Vector2 v, double s) { return {s * v.x, s * v.y}; }
constexpr Vector2 operator/(Vector2 v, double s) { return {v.x / s, v.y / s}; }

constexpr Vector2& operator+=(Vector2& a, Vector2 b) { a.x += b.x; a.y += b.y; return a; }
constexpr Vector2& operator-=(Vector2& a, Vector2 b) { a.x -= b.x; a.y -= b.y; return a; }

constexpr double dot(Vector2 a, Vector2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vector2 a, Vector2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vector2 v) { return dot(v, v); }

inline double norm(Vector2 v) { return std::hypot(v.x, v.y); }

inline bool is_finite(Vector2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Direction angle measured counterclockwise from the positive abscissa
// axis, wrapped into [0, 2*pi).
inline double angle_of(Vector2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += 2.0 * M_PI;
  return a;
}

inline Vector2 rotated(Vector2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Mirror across the abscissa axis.
constexpr Vector2 reflected_y(Vector2 v) { return {v.x, -v.y}; }

inline Vector2 unit(Vector2 v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vector2{0.0, 0.0};
}

}  // namespace tor
