#include "perimeter/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "perimeter/analytics.hpp"
#include "perimeter/engine.hpp"
#include "perimeter/strategy.hpp"

namespace perimeter {

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::kRT: return "r_T";
    case SweepParam::kRhoT: return "rho_T";
    case SweepParam::kRhoA: return "rho_A";
    case SweepParam::kNu: return "nu";
  }
  return "unknown";
}

std::optional<SweepParam> parse_sweep_param(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '-', '_');
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "r_t") return SweepParam::kRT;
  if (n == "rho_t") return SweepParam::kRhoT;
  if (n == "rho_a") return SweepParam::kRhoA;
  if (n == "nu") return SweepParam::kNu;
  return std::nullopt;
}

double GridAxis::value(int i) const {
  if (steps <= 1) return lo;
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

double parse_double(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw DomainError("malformed grid '" + spec + "': bad number '" + s + "'");
  }
  return v;
}

}  // namespace

GridAxis parse_grid_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw DomainError("malformed grid '" + spec + "': expected <param>=<lo>:<hi>:<steps>");
  }
  const auto param = parse_sweep_param(spec.substr(0, eq));
  if (!param) throw DomainError("malformed grid '" + spec + "': unknown parameter");
  const std::string rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string::npos || rest.find(':', c2 + 1) != std::string::npos) {
    throw DomainError("malformed grid '" + spec + "': expected <param>=<lo>:<hi>:<steps>");
  }
  GridAxis axis;
  axis.param = *param;
  axis.lo = parse_double(rest.substr(0, c1), spec);
  axis.hi = parse_double(rest.substr(c1 + 1, c2 - c1 - 1), spec);
  const std::string steps = rest.substr(c2 + 1);
  const auto res = std::from_chars(steps.data(), steps.data() + steps.size(), axis.steps);
  if (res.ec != std::errc() || res.ptr != steps.data() + steps.size() || axis.steps < 0) {
    throw DomainError("malformed grid '" + spec + "': steps must be a non-negative integer");
  }
  return axis;
}

double RawParams::get(SweepParam p) const {
  switch (p) {
    case SweepParam::kRT: return r_T;
    case SweepParam::kRhoT: return rho_T;
    case SweepParam::kRhoA: return rho_A;
    case SweepParam::kNu: return nu;
  }
  return 0.0;
}

void RawParams::set(SweepParam p, double v) {
  switch (p) {
    case SweepParam::kRT: r_T = v; break;
    case SweepParam::kRhoT: rho_T = v; break;
    case SweepParam::kRhoA: rho_A = v; break;
    case SweepParam::kNu: nu = v; break;
  }
}

namespace {

SweepRow evaluate_point(const RawParams& raw, const std::vector<long>& horizons) {
  SweepRow row;
  row.feasible = params_feasible(raw.r_T, raw.rho_T, raw.rho_A, raw.nu);
  if (!row.feasible) return row;
  const GameParams params = validate_params(raw.r_T, raw.rho_T, raw.rho_A, raw.nu);
  row.theta_max = optimize_engagement(capture_circle_radius(params), params).theta_max;
  row.p_star = p_star_from_theta(row.theta_max);
  row.percentages.reserve(horizons.size());
  for (const long n : horizons) row.percentages.push_back(expected_percentage(n, row.p_star));
  row.asymptotic = asymptotic_percentage(row.p_star);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.outer.param == spec.inner.param) {
    throw DomainError("sweep: the two grid axes must vary different parameters");
  }
  const int n_outer = std::max(spec.outer.steps, 0);
  const int n_inner = std::max(spec.inner.steps, 0);
  std::vector<SweepRow> rows(static_cast<std::size_t>(n_outer) * n_inner);
  parallel_for(static_cast<int>(rows.size()), spec.threads, [&](int idx) {
    const int i = idx / n_inner;
    const int j = idx % n_inner;
    RawParams raw = spec.base;
    raw.set(spec.outer.param, spec.outer.value(i));
    raw.set(spec.inner.param, spec.inner.value(j));
    SweepRow row = evaluate_point(raw, spec.horizons);
    row.outer_value = spec.outer.value(i);
    row.inner_value = spec.inner.value(j);
    rows[static_cast<std::size_t>(idx)] = std::move(row);
  });
  return rows;
}

LevelSetFit level_set_slope(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                            double target_percentage, std::optional<long> horizon) {
  const bool rho_a_outer =
      spec.outer.param == SweepParam::kRhoA && spec.inner.param == SweepParam::kRhoT;
  const bool rho_t_outer =
      spec.outer.param == SweepParam::kRhoT && spec.inner.param == SweepParam::kRhoA;
  if (!rho_a_outer && !rho_t_outer) {
    throw DomainError("level_set_slope: sweep must vary rho_A and rho_T");
  }
  const GridAxis& x_axis = rho_a_outer ? spec.outer : spec.inner;
  const GridAxis& y_axis = rho_a_outer ? spec.inner : spec.outer;
  const std::size_t n_inner = static_cast<std::size_t>(std::max(spec.inner.steps, 0));
  if (rows.size() != static_cast<std::size_t>(std::max(spec.outer.steps, 0)) * n_inner) {
    throw LengthMismatch("level_set_slope: rows do not match the sweep grid");
  }

  auto row_at = [&](int xi, int yi) -> const SweepRow& {
    const std::size_t i = rho_a_outer ? static_cast<std::size_t>(xi) : static_cast<std::size_t>(yi);
    const std::size_t j = rho_a_outer ? static_cast<std::size_t>(yi) : static_cast<std::size_t>(xi);
    return rows[i * n_inner + j];
  };
  auto row_value = [&](const SweepRow& r) {
    if (!horizon) return r.asymptotic;
    const auto it = std::find(spec.horizons.begin(), spec.horizons.end(), *horizon);
    if (it == spec.horizons.end()) {
      throw DomainError("level_set_slope: horizon not part of the sweep");
    }
    return r.percentages[static_cast<std::size_t>(it - spec.horizons.begin())];
  };
  auto exact_value = [&](double rho_A, double rho_T) {
    RawParams raw = spec.base;
    raw.rho_A = rho_A;
    raw.rho_T = rho_T;
    const GameParams params = validate_params(raw.r_T, raw.rho_T, raw.rho_A, raw.nu);
    const double p = p_star(params);
    return horizon ? expected_percentage(*horizon, p) : asymptotic_percentage(p);
  };

  LevelSetFit fit;
  for (int xi = 0; xi < x_axis.steps; ++xi) {
    const double rho_A = x_axis.value(xi);
    for (int yi = 0; yi + 1 < y_axis.steps; ++yi) {
      const SweepRow& a = row_at(xi, yi);
      const SweepRow& b = row_at(xi, yi + 1);
      if (!a.feasible || !b.feasible) continue;
      const double fa = row_value(a) - target_percentage;
      const double fb = row_value(b) - target_percentage;
      if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
        double lo = y_axis.value(yi);
        double hi = y_axis.value(yi + 1);
        const bool increasing = fa < fb;
        for (int it = 0; it < 100 && hi - lo > 1e-11; ++it) {
          const double mid = 0.5 * (lo + hi);
          const bool below = exact_value(rho_A, mid) < target_percentage;
          (below == increasing ? lo : hi) = mid;
        }
        fit.xs.push_back(rho_A);
        fit.ys.push_back(0.5 * (lo + hi));
        break;
      }
    }
  }
  if (fit.xs.size() < 3) {
    throw ContourNotFound("level_set_slope: target percentage is bracketed in fewer than three "
                          "columns");
  }

  const double n = static_cast<double>(fit.xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < fit.xs.size(); ++i) {
    sx += fit.xs[i];
    sy += fit.ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit.xs.size(); ++i) {
    sxx += (fit.xs[i] - mx) * (fit.xs[i] - mx);
    sxy += (fit.xs[i] - mx) * (fit.ys[i] - my);
  }
  if (sxx == 0.0) throw ContourNotFound("level_set_slope: contour points share one rho_A value");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < fit.xs.size(); ++i) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(fit.ys[i] - (fit.slope * fit.xs[i] + fit.intercept)));
  }
  const auto [ymin, ymax] = std::minmax_element(fit.ys.begin(), fit.ys.end());
  const double span = *ymax - *ymin;
  fit.relative_residual =
      span > 0.0 ? fit.max_residual / span : std::numeric_limits<double>::infinity();
  return fit;
}

}  // namespace perimeter
