#pragma once

#include "perimeter/errors.hpp"

namespace perimeter {

/// Validated game parameters with the derived Apollonius constants.
///
/// Lengths are in units where the defender speed is 1; `nu` is the
/// intruder/defender speed ratio. Instances can only be obtained through
/// validate_params(), so every GameParams in circulation satisfies the
/// parametric regime assumption.
class GameParams {
 public:
  double r_T() const noexcept { return r_T_; }
  double rho_T() const noexcept { return rho_T_; }
  double rho_A() const noexcept { return rho_A_; }
  double nu() const noexcept { return nu_; }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }

  /// Outer radius of the target sensing region.
  double outer_radius() const noexcept { return r_T_ + rho_T_; }

  friend bool operator==(const GameParams&, const GameParams&) = default;

 private:
  friend GameParams validate_params(double, double, double, double);

  GameParams(double r_T, double rho_T, double rho_A, double nu);

  double r_T_;
  double rho_T_;
  double rho_A_;
  double nu_;
  double alpha_;
  double beta_;
  double gamma_;
};

/// Left- and right-hand values of the two regime clauses.
struct AssumptionClauses {
  double first;   // (1 + 2nu/(1-nu^2)) * rho_A
  double second;  // nu*r_T + 2*rho_A*nu^2/(1-nu^2)
  double bound;   // rho_T
};

AssumptionClauses assumption_clauses(double r_T, double rho_T, double rho_A, double nu);

/// Checks the speed bound, the lengths, then the second and first regime
/// clauses, in that order, throwing AssumptionViolated naming the first
/// failure.
GameParams validate_params(double r_T, double rho_T, double rho_A, double nu);

/// Non-throwing feasibility probe used by sweeps.
bool params_feasible(double r_T, double rho_T, double rho_A, double nu) noexcept;

}  // namespace perimeter
