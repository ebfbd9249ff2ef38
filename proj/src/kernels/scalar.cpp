#include <cmath>

#include "perimeter/kernels.hpp"

namespace perimeter::kernels::detail {

void breach_margins_scalar(const double* xs, const double* ys, std::size_t n, Point2 x_A,
                           Point2 x_D, double nu, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dxd = xs[i] - x_D.x;
    const double dyd = ys[i] - x_D.y;
    const double dxa = xs[i] - x_A.x;
    const double dya = ys[i] - x_A.y;
    out[i] = nu * std::sqrt(dxd * dxd + dyd * dyd) - std::sqrt(dxa * dxa + dya * dya);
  }
}

void engagement_grid_scalar(const EngagementGridConstants& k, const double* taus, std::size_t n,
                            double* eng_x, double* eng_y, double* reach_cos) {
  const double tangent_sq = k.tangent_radius * k.tangent_radius;
  const double four_beta_rho = 4.0 * k.beta_rho;
  const double r_sq = k.defender_radius * k.defender_radius;
  const double two_r = 2.0 * k.defender_radius;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = taus[i];
    const double a = k.outer_radius - tau * k.nu;
    const double off = a - k.beta_rho;
    double s2 = (tangent_sq - off * off) / (four_beta_rho * a);
    s2 = s2 < 0.0 ? 0.0 : (s2 > 1.0 ? 1.0 : s2);
    const double cos_theta = 1.0 - 2.0 * s2;
    const double sin_theta = 2.0 * std::sqrt(s2 * (1.0 - s2));
    const double ex = a + k.rho_A * cos_theta;
    const double ey = k.rho_A * sin_theta;
    const double r2 = ex * ex + ey * ey;
    const double reng = std::sqrt(r2);
    eng_x[i] = ex;
    eng_y[i] = ey;
    reach_cos[i] = (r2 + r_sq - tau * tau) / (two_r * reng);
  }
}

}  // namespace perimeter::kernels::detail
