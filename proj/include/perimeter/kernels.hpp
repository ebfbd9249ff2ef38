#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// Every kernel has one entry point per instruction set plus a dispatching
// overload that uses the best variant the running CPU supports. The scalar
// variants are the reference; SIMD variants perform the same IEEE operations
// in the same order and are equivalence-tested against them.

#include <optional>
#include <span>

#include "perimeter/geometry.hpp"

namespace perimeter::kernels {

enum class Isa { kScalar, kAvx2 };

const char* to_string(Isa isa);

/// True if the variant was compiled in and the CPU can run it.
bool isa_available(Isa isa);

/// Best available variant, honoring force_isa().
Isa active_isa();

/// Pins dispatch to a specific variant (tests, benchmarking). std::nullopt
/// restores automatic selection. Forcing an unavailable ISA falls back to
/// scalar.
void force_isa(std::optional<Isa> isa);

/// out[i] = nu*|p_i - x_D| - |p_i - x_A| with p_i = (xs[i], ys[i]).
void breach_margins(Isa isa, std::span<const double> xs, std::span<const double> ys,
                    const Point2& x_A, const Point2& x_D, double nu, std::span<double> out);
void breach_margins(std::span<const double> xs, std::span<const double> ys,
                    const Point2& x_A, const Point2& x_D, double nu, std::span<double> out);

/// Geometry of the engagement surface for a range of engagement times.
///
/// For each tau the engagement bearing is eliminated through the tangency
/// condition (sin^2(theta/2) clamped to [0, 1]); the kernel returns the
/// defender engagement point in the canonical frame and the law-of-cosines
/// argument for a defender starting at radius `defender_radius`.
struct EngagementGridConstants {
  double outer_radius;     // r_T + rho_T
  double nu;
  double rho_A;
  double beta_rho;         // beta * rho_A
  double tangent_radius;   // r_T + gamma * rho_A
  double defender_radius;  // r
};

struct EngagementGridOut {
  std::span<double> eng_x;
  std::span<double> eng_y;
  std::span<double> reach_cos;
};

void engagement_grid(Isa isa, const EngagementGridConstants& k, std::span<const double> taus,
                     const EngagementGridOut& out);
void engagement_grid(const EngagementGridConstants& k, std::span<const double> taus,
                     const EngagementGridOut& out);

namespace detail {
void breach_margins_scalar(const double* xs, const double* ys, std::size_t n, Point2 x_A,
                           Point2 x_D, double nu, double* out);
void engagement_grid_scalar(const EngagementGridConstants& k, const double* taus, std::size_t n,
                            double* eng_x, double* eng_y, double* reach_cos);
#if defined(PERIMETER_HAVE_AVX2)
void breach_margins_avx2(const double* xs, const double* ys, std::size_t n, Point2 x_A,
                         Point2 x_D, double nu, double* out);
void engagement_grid_avx2(const EngagementGridConstants& k, const double* taus, std::size_t n,
                          double* eng_x, double* eng_y, double* reach_cos);
#endif
}  // namespace detail

}  // namespace perimeter::kernels
