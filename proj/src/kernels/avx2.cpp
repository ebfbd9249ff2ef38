// Compiled with -mavx2. Only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "perimeter/kernels.hpp"

namespace perimeter::kernels::detail {

void breach_margins_avx2(const double* xs, const double* ys, std::size_t n, Point2 x_A,
                         Point2 x_D, double nu, double* out) {
  const __m256d vxd = _mm256_set1_pd(x_D.x);
  const __m256d vyd = _mm256_set1_pd(x_D.y);
  const __m256d vxa = _mm256_set1_pd(x_A.x);
  const __m256d vya = _mm256_set1_pd(x_A.y);
  const __m256d vnu = _mm256_set1_pd(nu);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    const __m256d dxd = _mm256_sub_pd(x, vxd);
    const __m256d dyd = _mm256_sub_pd(y, vyd);
    const __m256d dxa = _mm256_sub_pd(x, vxa);
    const __m256d dya = _mm256_sub_pd(y, vya);
    const __m256d dd = _mm256_add_pd(_mm256_mul_pd(dxd, dxd), _mm256_mul_pd(dyd, dyd));
    const __m256d da = _mm256_add_pd(_mm256_mul_pd(dxa, dxa), _mm256_mul_pd(dya, dya));
    const __m256d m = _mm256_sub_pd(_mm256_mul_pd(vnu, _mm256_sqrt_pd(dd)), _mm256_sqrt_pd(da));
    _mm256_storeu_pd(out + i, m);
  }
  if (i < n) breach_margins_scalar(xs + i, ys + i, n - i, x_A, x_D, nu, out + i);
}

void engagement_grid_avx2(const EngagementGridConstants& k, const double* taus, std::size_t n,
                          double* eng_x, double* eng_y, double* reach_cos) {
  const __m256d outer = _mm256_set1_pd(k.outer_radius);
  const __m256d nu = _mm256_set1_pd(k.nu);
  const __m256d rho = _mm256_set1_pd(k.rho_A);
  const __m256d beta_rho = _mm256_set1_pd(k.beta_rho);
  const __m256d tangent_sq = _mm256_set1_pd(k.tangent_radius * k.tangent_radius);
  const __m256d four_beta_rho = _mm256_set1_pd(4.0 * k.beta_rho);
  const __m256d r_sq = _mm256_set1_pd(k.defender_radius * k.defender_radius);
  const __m256d two_r = _mm256_set1_pd(2.0 * k.defender_radius);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d tau = _mm256_loadu_pd(taus + i);
    const __m256d a = _mm256_sub_pd(outer, _mm256_mul_pd(tau, nu));
    const __m256d off = _mm256_sub_pd(a, beta_rho);
    __m256d s2 = _mm256_div_pd(_mm256_sub_pd(tangent_sq, _mm256_mul_pd(off, off)),
                               _mm256_mul_pd(four_beta_rho, a));
    s2 = _mm256_min_pd(_mm256_max_pd(s2, zero), one);
    const __m256d cos_theta = _mm256_sub_pd(one, _mm256_mul_pd(two, s2));
    const __m256d sin_theta =
        _mm256_mul_pd(two, _mm256_sqrt_pd(_mm256_mul_pd(s2, _mm256_sub_pd(one, s2))));
    const __m256d ex = _mm256_add_pd(a, _mm256_mul_pd(rho, cos_theta));
    const __m256d ey = _mm256_mul_pd(rho, sin_theta);
    const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
    const __m256d reng = _mm256_sqrt_pd(r2);
    const __m256d num = _mm256_sub_pd(_mm256_add_pd(r2, r_sq), _mm256_mul_pd(tau, tau));
    _mm256_storeu_pd(eng_x + i, ex);
    _mm256_storeu_pd(eng_y + i, ey);
    _mm256_storeu_pd(reach_cos + i, _mm256_div_pd(num, _mm256_mul_pd(two_r, reng)));
  }
  if (i < n) {
    engagement_grid_scalar(k, taus + i, n - i, eng_x + i, eng_y + i, reach_cos + i);
  }
}

}  // namespace perimeter::kernels::detail
