#include "perimeter/geometry.hpp"

#include <array>
#include <vector>

#include "perimeter/kernels.hpp"

namespace perimeter {

double wrap_angle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double clamp_unit(double value, const char* what) {
  if (value >= -1.0 && value <= 1.0) return value;
  if (value > 1.0 && value <= 1.0 + kClampSlack) return 1.0;
  if (value < -1.0 && value >= -1.0 - kClampSlack) return -1.0;
  throw DomainError(std::string(what) + ": argument " + std::to_string(value) +
                    " outside [-1, 1]");
}

const char* to_string(CircleClass c) {
  switch (c) {
    case CircleClass::kCaptureGuaranteed: return "capture_guaranteed";
    case CircleClass::kBreachPossible: return "breach_possible";
    case CircleClass::kExitPossible: return "exit_possible";
    case CircleClass::kBreachAndExit: return "breach_and_exit";
  }
  return "unknown";
}

ApolloniusCircle apollonius(const Point2& x_A, const Point2& x_D, const GameParams& params) {
  return {
      params.alpha() * x_A - params.beta() * x_D,
      params.gamma() * distance(x_A, x_D),
      params.nu(),
  };
}

CircleClass classify(const ApolloniusCircle& circle, const GameParams& params) {
  const double d = circle.center.norm();
  const bool breach = d < params.r_T() + circle.radius;
  const bool exit = d > params.outer_radius() - circle.radius;
  if (breach && exit) return CircleClass::kBreachAndExit;
  if (breach) return CircleClass::kBreachPossible;
  if (exit) return CircleClass::kExitPossible;
  return CircleClass::kCaptureGuaranteed;
}

namespace {

struct UnitCircleTable {
  std::array<double, kBreachScanSamples> c;
  std::array<double, kBreachScanSamples> s;
  UnitCircleTable() {
    for (int i = 0; i < kBreachScanSamples; ++i) {
      const double a = -kPi + 2.0 * kPi * i / kBreachScanSamples;
      c[i] = std::cos(a);
      s[i] = std::sin(a);
    }
  }
};

const UnitCircleTable& unit_table() {
  static const UnitCircleTable table;
  return table;
}

double margin_at(double angle, const Point2& x_A, const Point2& x_D, double nu, double r_T) {
  const Point2 p = Point2::polar(r_T, angle);
  return nu * distance(p, x_D) - distance(p, x_A);
}

}  // namespace

BreachMargin breach_margin_point(const Point2& x_A, const Point2& x_D, const GameParams& params) {
  const double r_T = params.r_T();
  const double nu = params.nu();
  const auto& table = unit_table();

  thread_local std::vector<double> xs(kBreachScanSamples), ys(kBreachScanSamples),
      margins(kBreachScanSamples);
  for (int i = 0; i < kBreachScanSamples; ++i) {
    xs[i] = r_T * table.c[i];
    ys[i] = r_T * table.s[i];
  }
  kernels::breach_margins(xs, ys, x_A, x_D, nu, margins);

  int best = 0;
  for (int i = 1; i < kBreachScanSamples; ++i) {
    if (margins[i] > margins[best]) best = i;
  }

  // Golden-section refinement within one sample spacing of the best sample.
  const double step = 2.0 * kPi / kBreachScanSamples;
  const double center = -kPi + step * best;
  double lo = center - step;
  double hi = center + step;
  constexpr double kInvPhi = 0.6180339887498949;
  double a = hi - kInvPhi * (hi - lo);
  double b = lo + kInvPhi * (hi - lo);
  double fa = margin_at(a, x_A, x_D, nu, r_T);
  double fb = margin_at(b, x_A, x_D, nu, r_T);
  while (hi - lo > 1e-10) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kInvPhi * (hi - lo);
      fa = margin_at(a, x_A, x_D, nu, r_T);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kInvPhi * (hi - lo);
      fb = margin_at(b, x_A, x_D, nu, r_T);
    }
  }

  double best_angle = center;
  double best_margin = margins[best];
  const double refined = 0.5 * (lo + hi);
  if (const double m = margin_at(refined, x_A, x_D, nu, r_T); m > best_margin) {
    best_margin = m;
    best_angle = refined;
  }
  // The radial projection of the intruder is the exact maximizer whenever the
  // intruder stands on the boundary; the margin has a kink there.
  if (x_A.squared_norm() > 0.0) {
    const double radial = x_A.angle();
    if (const double m = margin_at(radial, x_A, x_D, nu, r_T); m >= best_margin) {
      best_margin = m;
      best_angle = radial;
    }
  }
  return {best_margin, Point2::polar(r_T, best_angle)};
}

Point2 farthest_point_from_origin(const ApolloniusCircle& circle) {
  const double d = circle.center.norm();
  if (d == 0.0) {
    throw DegenerateCenter("farthest point is undefined for a circle centered at the origin");
  }
  return circle.center + (circle.radius / d) * circle.center;
}

}  // namespace perimeter
