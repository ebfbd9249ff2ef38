#include "perimeter/params.hpp"

#include <cmath>
#include <sstream>

namespace perimeter {

GameParams::GameParams(double r_T, double rho_T, double rho_A, double nu)
    : r_T_(r_T), rho_T_(rho_T), rho_A_(rho_A), nu_(nu) {
  alpha_ = 1.0 / (1.0 - nu * nu);
  gamma_ = nu * alpha_;
  beta_ = nu * gamma_;
}

AssumptionClauses assumption_clauses(double r_T, double rho_T, double rho_A, double nu) {
  const double one_minus = 1.0 - nu * nu;
  return {
      (1.0 + 2.0 * nu / one_minus) * rho_A,
      nu * r_T + 2.0 * rho_A * nu * nu / one_minus,
      rho_T,
  };
}

namespace {

using Clause = AssumptionViolated::Clause;

// Returns the first failing clause, if any.
bool first_failure(double r_T, double rho_T, double rho_A, double nu, Clause* which,
                   std::string* detail) {
  auto fmt = [](auto&&... parts) {
    std::ostringstream os;
    os.precision(12);
    (os << ... << parts);
    return os.str();
  };
  if (!(std::isfinite(nu) && nu > 0.0 && nu < 1.0)) {
    *which = Clause::kSpeed;
    if (detail) *detail = fmt("speed ratio nu=", nu, " must lie in (0, 1)");
    return true;
  }
  if (!(std::isfinite(r_T) && r_T > 0.0 && std::isfinite(rho_T) && rho_T > 0.0 &&
        std::isfinite(rho_A) && rho_A > 0.0)) {
    *which = Clause::kLength;
    if (detail) {
      *detail = fmt("lengths must be positive and finite (r_T=", r_T, ", rho_T=", rho_T,
                    ", rho_A=", rho_A, ")");
    }
    return true;
  }
  const AssumptionClauses c = assumption_clauses(r_T, rho_T, rho_A, nu);
  if (c.second > c.bound) {
    *which = Clause::kSecond;
    if (detail) {
      *detail = fmt("nu r_T + 2 rho_A nu^2/(1-nu^2) = ", c.second, " exceeds rho_T = ", c.bound);
    }
    return true;
  }
  if (c.first > c.bound) {
    *which = Clause::kFirst;
    if (detail) {
      *detail = fmt("(1 + 2nu/(1-nu^2)) rho_A = ", c.first, " exceeds rho_T = ", c.bound);
    }
    return true;
  }
  return false;
}

}  // namespace

GameParams validate_params(double r_T, double rho_T, double rho_A, double nu) {
  Clause which{};
  std::string detail;
  if (first_failure(r_T, rho_T, rho_A, nu, &which, &detail)) {
    throw AssumptionViolated(which, detail);
  }
  return GameParams(r_T, rho_T, rho_A, nu);
}

bool params_feasible(double r_T, double rho_T, double rho_A, double nu) noexcept {
  Clause which{};
  return !first_failure(r_T, rho_T, rho_A, nu, &which, nullptr);
}

}  // namespace perimeter
