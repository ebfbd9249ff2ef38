#pragma once

#include <optional>
#include <string>
#include <vector>

namespace perimeter {

enum class SweepParam { kRT, kRhoT, kRhoA, kNu };

const char* to_string(SweepParam p);

/// Parses "r_T", "rho_T", "rho_A", "nu" (also "r-t", "rho-t", "rho-a").
std::optional<SweepParam> parse_sweep_param(const std::string& name);

struct GridAxis {
  SweepParam param = SweepParam::kRhoA;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;  // number of grid values, endpoints inclusive

  double value(int i) const;
};

/// Parses "<param>=<lo>:<hi>:<steps>".
GridAxis parse_grid_axis(const std::string& spec);

struct RawParams {
  double r_T = 5.0;
  double rho_T = 10.0;
  double rho_A = 1.0;
  double nu = 0.8;

  double get(SweepParam p) const;
  void set(SweepParam p, double v);
};

struct SweepSpec {
  GridAxis outer;  // slow axis
  GridAxis inner;  // fast axis
  RawParams base;
  std::vector<long> horizons;  // finite N values
  unsigned threads = 0;
};

struct SweepRow {
  double outer_value = 0.0;
  double inner_value = 0.0;
  bool feasible = false;
  double theta_max = 0.0;
  double p_star = 0.0;
  std::vector<double> percentages;  // one per horizon
  double asymptotic = 0.0;
};

/// Capture statistics on a two-parameter grid in row-major (outer, inner)
/// order. Grid points violating the parameter regime are flagged infeasible
/// and carry no percentages.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct LevelSetFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double relative_residual = 0.0;  // max_residual / span of contour values
  std::vector<double> xs;          // rho_A at contour points
  std::vector<double> ys;          // rho_T at contour points
};

/// Iso-percentage contour rho_T(rho_A) of a rho_A x rho_T sweep, one point
/// per rho_A column located by bisection in rho_T, with a least-squares line
/// fit. `horizon` selects a finite N; empty means the asymptotic percentage.
/// Throws ContourNotFound if fewer than three columns bracket the target.
LevelSetFit level_set_slope(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                            double target_percentage, std::optional<long> horizon = {});

}  // namespace perimeter
