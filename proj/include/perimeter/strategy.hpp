#pragma once

#include "perimeter/geometry.hpp"
#include "perimeter/params.hpp"

namespace perimeter {

// All engagement quantities are expressed in the canonical frame: the
// intruder appears at (r_T + rho_T, 0) at time 0 and runs radially inward at
// speed nu, and the defender approaches from the upper half-plane
// (theta in [0, pi]). Callers mirror and rotate into the world frame.

/// Radius of the circle on which every equilibrium capture happens.
double capture_circle_radius(const GameParams& params);
double capture_circle_radius(double r_T, double rho_A, double nu);

/// Maximal arrival-angle separation a defender at radius r can guard.
/// Returns pi when r <= rho_T/nu - r_T. Throws OutOfRange if r is negative
/// or beyond the outer sensing radius.
double guarded_arc(double r, const GameParams& params);

struct EngagementDomain {
  double tau_min;  // tangency straight ahead (theta = 0)
  double tau_max;  // tangency from directly inside (theta = pi)
};

/// Interval of engagement times for which the tangency condition has a real
/// bearing solution and the intruder is still outside the target.
EngagementDomain engagement_domain(const GameParams& params);

/// Right-hand side of the engagement-surface relation sin^2(theta/2) = rhs(tau).
double engagement_rhs(double tau, const GameParams& params);

/// Engagement bearing on [0, pi] for engagement time tau.
double engagement_theta(double tau, const GameParams& params);

struct EngagementCandidate {
  double tau = 0.0;
  double theta = 0.0;
  Point2 x_A_eng;  // intruder at engagement
  Point2 x_D_eng;  // defender at engagement, on the intruder's sensing circle
};

/// Candidate on the engagement surface at time tau.
EngagementCandidate engagement_candidate(double tau, const GameParams& params);

/// |sin^2(theta/2) - rhs(tau)|; zero for members of the engagement surface.
double surface_residual(double tau, double theta, const GameParams& params);

/// | |x_C| - (r_T + gamma rho_A) | at engagement.
double tangency_residual(const EngagementCandidate& candidate, const GameParams& params);

/// Residual bound for engagement-surface membership.
inline constexpr double kSurfaceTolerance = 1e-9;

/// Norm of the engagement point, in closed form.
double engagement_radius(double tau, double theta, const GameParams& params);

/// Bearing of the engagement point.
double engagement_bearing(double tau, double theta, const GameParams& params);

/// Largest initial angular separation from which a defender at radius r can
/// reach the engagement point (tau, theta) by time tau along a straight line.
/// Throws InvalidCandidate if (tau, theta) is off the engagement surface.
double theta_max_at(double tau, double theta, double r, const GameParams& params);

struct EngagementSolution {
  EngagementCandidate candidate;
  double theta_max = 0.0;
  double r_eng = 0.0;
  double phi_eng = 0.0;
  Point2 x_p;        // capture point
  double phi = 0.0;  // bearing of the Apollonius center and of x_p
};

/// Grid resolution and stopping tolerance of optimize_engagement().
inline constexpr int kEngagementGridPoints = 1024;
inline constexpr double kEngagementTauTolerance = 1e-9;

/// Engagement point maximizing theta_max for a defender at radius r.
/// Deterministic; ties resolve toward the smaller engagement time.
EngagementSolution optimize_engagement(double r, const GameParams& params);

/// A defender at radius r reaches any engagement point it can reach in time
/// without being detected on the way.
bool sufficiency_holds(double r, const GameParams& params);

struct EvasionPoint {
  Point2 x_p;
  double phi;
};

/// Farthest point from the origin on the (tangent) Apollonius circle the
/// intruder sees at engagement.
EvasionPoint evasion_point(const EngagementCandidate& candidate, const GameParams& params);

/// Where the defender sits when an intruder appears.
class DefenderState {
 public:
  static DefenderState at_center() { return DefenderState(false, 0.0); }
  static DefenderState on_capture_circle(double angle) {
    return DefenderState(true, wrap_angle(angle));
  }

  bool at_center_p() const noexcept { return !on_circle_; }
  bool on_capture_circle_p() const noexcept { return on_circle_; }
  double angle() const noexcept { return angle_; }

  Point2 position(const GameParams& params) const {
    return on_circle_ ? Point2::polar(capture_circle_radius(params), angle_) : Point2{};
  }

  friend bool operator==(const DefenderState&, const DefenderState&) = default;

 private:
  DefenderState(bool on_circle, double angle) : on_circle_(on_circle), angle_(angle) {}

  bool on_circle_;
  double angle_;
};

}  // namespace perimeter
