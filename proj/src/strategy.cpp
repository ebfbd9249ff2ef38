#include "perimeter/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "perimeter/kernels.hpp"

namespace perimeter {

double capture_circle_radius(double r_T, double rho_A, double nu) {
  const double gamma = nu / (1.0 - nu * nu);
  return r_T + 2.0 * gamma * rho_A;
}

double capture_circle_radius(const GameParams& params) {
  return params.r_T() + 2.0 * params.gamma() * params.rho_A();
}

double guarded_arc(double r, const GameParams& params) {
  const double r_T = params.r_T();
  const double nu = params.nu();
  const double outer = params.outer_radius();
  if (!(r >= 0.0 && r <= outer)) {
    throw OutOfRange("guarded_arc: radius " + std::to_string(r) + " outside [0, r_T + rho_T]");
  }
  if (r <= params.rho_T() / nu - r_T) return kPi;

  const double f1 = (r_T + nu * r) * (r_T + nu * r) - (outer - nu * r_T) * (outer - nu * r_T);
  const double f2 = (outer + nu * r_T) * (outer + nu * r_T) - (nu * r - r_T) * (nu * r - r_T);
  const double q = clamp_unit(f1 * f2 / (16.0 * nu * nu * r_T * r_T * r * outer), "guarded_arc");
  return 2.0 * std::acos(std::sqrt(std::max(q, 0.0)));
}

EngagementDomain engagement_domain(const GameParams& params) {
  const double nu = params.nu();
  const double rho_A = params.rho_A();
  const double beta = params.beta();
  const double gamma = params.gamma();
  // The tangency relation is a quadratic in the intruder radius a; its
  // right-hand side is 0 at a = r_T + (beta+gamma) rho_A and 1 at
  // a = r_T + (gamma-beta) rho_A.
  const double tau_min = std::max(0.0, (params.rho_T() - (beta + gamma) * rho_A) / nu);
  double tau_max = (params.rho_T() - (gamma - beta) * rho_A) / nu;
  const double tangent = params.r_T() + gamma * rho_A;
  // Second root of rhs = 0 (a = beta rho_A - tangent) only binds for exotic
  // parameter ratios.
  tau_max = std::min(tau_max, (params.outer_radius() - (beta * rho_A - tangent)) / nu);
  // The intruder must still be outside the target.
  tau_max = std::min(tau_max, params.rho_T() / nu);
  if (!(tau_min <= tau_max)) {
    throw EmptyDomain("engagement surface is empty for these parameters");
  }
  for (const double tau : {tau_min, tau_max}) {
    const double rhs = engagement_rhs(tau, params);
    if (rhs < -kClampSlack || rhs > 1.0 + kClampSlack) {
      throw EmptyDomain("engagement domain endpoint fails the feasibility check");
    }
  }
  return {tau_min, tau_max};
}

double engagement_rhs(double tau, const GameParams& params) {
  const double rho_A = params.rho_A();
  const double beta_rho = params.beta() * rho_A;
  const double a = params.outer_radius() - tau * params.nu();
  const double tangent = params.r_T() + params.gamma() * rho_A;
  return (tangent * tangent - (a - beta_rho) * (a - beta_rho)) / (4.0 * beta_rho * a);
}

double engagement_theta(double tau, const GameParams& params) {
  const double rhs = engagement_rhs(tau, params);
  if (!(rhs >= -kClampSlack && rhs <= 1.0 + kClampSlack)) {
    throw InfeasibleTau("engagement time " + std::to_string(tau) +
                        " has no engagement bearing (sin^2 = " + std::to_string(rhs) + ")");
  }
  const double s2 = std::clamp(rhs, 0.0, 1.0);
  return 2.0 * std::asin(std::sqrt(s2));
}

EngagementCandidate engagement_candidate(double tau, const GameParams& params) {
  EngagementCandidate c;
  c.tau = tau;
  c.theta = engagement_theta(tau, params);
  c.x_A_eng = {params.outer_radius() - tau * params.nu(), 0.0};
  c.x_D_eng = c.x_A_eng + params.rho_A() * Point2::unit(c.theta);
  return c;
}

double surface_residual(double tau, double theta, const GameParams& params) {
  const double s = std::sin(0.5 * theta);
  return std::abs(s * s - engagement_rhs(tau, params));
}

double tangency_residual(const EngagementCandidate& candidate, const GameParams& params) {
  const ApolloniusCircle circle = apollonius(candidate.x_A_eng, candidate.x_D_eng, params);
  return std::abs(circle.center.norm() - (params.r_T() + params.gamma() * params.rho_A()));
}

double engagement_radius(double tau, double theta, const GameParams& params) {
  const double rho_A = params.rho_A();
  const double a = params.outer_radius() - tau * params.nu();
  const double c = std::cos(0.5 * theta);
  return std::sqrt((a - rho_A) * (a - rho_A) + 4.0 * a * rho_A * c * c);
}

double engagement_bearing(double tau, double theta, const GameParams& params) {
  const double rho_A = params.rho_A();
  const double r_eng = engagement_radius(tau, theta, params);
  const double phi = std::asin(clamp_unit(rho_A * std::sin(theta) / r_eng, "engagement_bearing"));
  // asin only covers the right half-plane.
  const double a = params.outer_radius() - tau * params.nu();
  return a + rho_A * std::cos(theta) < 0.0 ? kPi - phi : phi;
}

namespace {

// Separation bound from the law of cosines; reach_cos is the cosine of the
// widest angle between the defender's start and the engagement point.
double separation_bound(double reach_cos, double phi_eng) {
  if (reach_cos < -1.0 - kClampSlack) return kPi;
  if (reach_cos > 1.0 + kClampSlack) return 0.0;
  return std::clamp(std::acos(std::clamp(reach_cos, -1.0, 1.0)) + phi_eng, 0.0, kPi);
}

double objective(double tau, double r, const GameParams& params) {
  const double theta = engagement_theta(tau, params);
  return theta_max_at(tau, theta, r, params);
}

}  // namespace

double theta_max_at(double tau, double theta, double r, const GameParams& params) {
  if (!(r > 0.0 && r <= params.outer_radius())) {
    throw OutOfRange("theta_max_at: radius " + std::to_string(r) + " outside (0, r_T + rho_T]");
  }
  if (surface_residual(tau, theta, params) > kSurfaceTolerance) {
    throw InvalidCandidate("theta_max_at: (tau, theta) is not on the engagement surface");
  }
  const double r_eng = engagement_radius(tau, theta, params);
  const double phi_eng = engagement_bearing(tau, theta, params);
  return separation_bound((r_eng * r_eng + r * r - tau * tau) / (2.0 * r_eng * r), phi_eng);
}

EngagementSolution optimize_engagement(double r, const GameParams& params) {
  if (!(r > 0.0 && r <= params.outer_radius() - params.rho_A())) {
    throw OutOfRange("optimize_engagement: radius " + std::to_string(r) +
                     " outside (0, r_T + rho_T - rho_A]");
  }
  const EngagementDomain dom = engagement_domain(params);

  constexpr int n = kEngagementGridPoints;
  std::vector<double> taus(n), ex(n), ey(n), reach(n);
  const double h = (dom.tau_max - dom.tau_min) / (n - 1);
  for (int i = 0; i < n; ++i) taus[i] = dom.tau_min + h * i;
  taus[n - 1] = dom.tau_max;

  const kernels::EngagementGridConstants k{
      params.outer_radius(),
      params.nu(),
      params.rho_A(),
      params.beta() * params.rho_A(),
      params.r_T() + params.gamma() * params.rho_A(),
      r,
  };
  kernels::engagement_grid(k, taus, {ex, ey, reach});

  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < n; ++i) {
    const double v = separation_bound(reach[i], std::atan2(ey[i], ex[i]));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  double tau_star = taus[best];
  double value = objective(tau_star, r, params);

  if (best_value >= kPi) {
    // Flat top: take the largest engagement time that still achieves pi, so
    // the engagement point sits on the inward side of the intruder.
    int last = n - 1;
    while (last > best &&
           separation_bound(reach[last], std::atan2(ey[last], ex[last])) < kPi) {
      --last;
    }
    tau_star = taus[last];
    if (last < n - 1) {
      double lo = taus[last];
      double hi = taus[last + 1];
      while (hi - lo > kEngagementTauTolerance) {
        const double mid = 0.5 * (lo + hi);
        (objective(mid, r, params) >= kPi ? lo : hi) = mid;
      }
      tau_star = lo;
    }
    value = objective(tau_star, r, params);
  } else {
    double lo = taus[std::max(best - 1, 0)];
    double hi = taus[std::min(best + 1, n - 1)];
    constexpr double kInvPhi = 0.6180339887498949;
    double a = hi - kInvPhi * (hi - lo);
    double b = lo + kInvPhi * (hi - lo);
    double fa = objective(a, r, params);
    double fb = objective(b, r, params);
    while (hi - lo > kEngagementTauTolerance) {
      if (fa >= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - kInvPhi * (hi - lo);
        fa = objective(a, r, params);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + kInvPhi * (hi - lo);
        fb = objective(b, r, params);
      }
    }
    const double mid = 0.5 * (lo + hi);
    if (const double v = objective(mid, r, params); v > value) {
      value = v;
      tau_star = mid;
    }
  }

  EngagementSolution s;
  s.candidate = engagement_candidate(tau_star, params);
  s.theta_max = value;
  s.r_eng = engagement_radius(tau_star, s.candidate.theta, params);
  s.phi_eng = engagement_bearing(tau_star, s.candidate.theta, params);
  const EvasionPoint ep = evasion_point(s.candidate, params);
  s.x_p = ep.x_p;
  s.phi = ep.phi;
  return s;
}

bool sufficiency_holds(double r, const GameParams& params) {
  if (r < 0.0) throw OutOfRange("sufficiency_holds: negative radius");
  return r <= params.outer_radius() - params.rho_A();
}

EvasionPoint evasion_point(const EngagementCandidate& candidate, const GameParams& params) {
  const Point2 center = apollonius(candidate.x_A_eng, candidate.x_D_eng, params).center;
  const double phi = std::atan2(center.y, center.x);
  return {center + params.gamma() * params.rho_A() * Point2::unit(phi), phi};
}

}  // namespace perimeter
