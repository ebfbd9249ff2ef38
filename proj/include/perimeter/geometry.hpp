#pragma once

#include <cmath>
#include <utility>

#include "perimeter/params.hpp"

namespace perimeter {

inline constexpr double kPi = 3.14159265358979323846;

/// Trigonometric arguments within this distance of [-1, 1] are clamped;
/// anything further out is treated as a logic error.
inline constexpr double kClampSlack = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  static Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
  static Point2 polar(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  double angle() const { return std::atan2(y, x); }
  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double cross(const Point2& o) const { return x * o.y - y * o.x; }

  Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
  Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }
  Point2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend Point2 operator+(Point2 a, const Point2& b) { return a += b; }
  friend Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
  friend Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
  friend Point2 operator*(Point2 a, double s) { return a *= s; }
  friend Point2 operator*(double s, Point2 a) { return a *= s; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

/// Rotates `p` counter-clockwise by `angle` about the origin.
inline Point2 rotate(const Point2& p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

inline Point2 mirror_y(const Point2& p) { return {p.x, -p.y}; }

/// Maps an angle to (-pi, pi].
double wrap_angle(double angle);

/// Clamps `value` to [-1, 1] if it is within kClampSlack of the interval,
/// otherwise throws DomainError naming `what`.
double clamp_unit(double value, const char* what);

/// Locus of points x with |x - x_A| = nu |x - x_D|.
struct ApolloniusCircle {
  Point2 center;
  double radius = 0.0;
  double nu = 0.0;
};

enum class CircleClass {
  kCaptureGuaranteed,
  kBreachPossible,
  kExitPossible,
  kBreachAndExit,
};

const char* to_string(CircleClass c);

ApolloniusCircle apollonius(const Point2& x_A, const Point2& x_D, const GameParams& params);

/// Sign tests against the target disc and the outer sensing boundary.
/// Tangency on either side counts as capture-safe.
CircleClass classify(const ApolloniusCircle& circle, const GameParams& params);

inline bool breach_possible(CircleClass c) {
  return c == CircleClass::kBreachPossible || c == CircleClass::kBreachAndExit;
}

struct BreachMargin {
  double margin;  // max over the target boundary of nu|x - x_D| - |x - x_A|
  Point2 point;   // maximizer on the target boundary
};

/// Number of uniformly spaced boundary samples used by the coarse scan.
inline constexpr int kBreachScanSamples = 2048;

/// Best breach aim point for an intruder at x_A facing a defender at x_D.
/// margin > 0 iff some point of the target boundary lies strictly inside the
/// intruder's dominance region.
BreachMargin breach_margin_point(const Point2& x_A, const Point2& x_D, const GameParams& params);

/// Point of the circle farthest from the origin.
Point2 farthest_point_from_origin(const ApolloniusCircle& circle);

}  // namespace perimeter
