// Runtime selection between kernel variants. No intrinsics in this file.
#include <atomic>

#include "perimeter/kernels.hpp"

namespace perimeter::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(PERIMETER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

// -1: automatic, otherwise an Isa value.
std::atomic<int> forced{-1};

void check_sizes(std::size_t a, std::size_t b, std::size_t c) {
  if (a != b || a != c) throw LengthMismatch("kernel spans must have equal length");
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2: return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) {
    const auto isa = static_cast<Isa>(f);
    return isa_available(isa) ? isa : Isa::kScalar;
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

void force_isa(std::optional<Isa> isa) {
  forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void breach_margins(Isa isa, std::span<const double> xs, std::span<const double> ys,
                    const Point2& x_A, const Point2& x_D, double nu, std::span<double> out) {
  check_sizes(xs.size(), ys.size(), out.size());
#if defined(PERIMETER_HAVE_AVX2)
  if (isa == Isa::kAvx2 && cpu_has_avx2()) {
    detail::breach_margins_avx2(xs.data(), ys.data(), xs.size(), x_A, x_D, nu, out.data());
    return;
  }
#endif
  (void)isa;
  detail::breach_margins_scalar(xs.data(), ys.data(), xs.size(), x_A, x_D, nu, out.data());
}

void breach_margins(std::span<const double> xs, std::span<const double> ys, const Point2& x_A,
                    const Point2& x_D, double nu, std::span<double> out) {
  breach_margins(active_isa(), xs, ys, x_A, x_D, nu, out);
}

void engagement_grid(Isa isa, const EngagementGridConstants& k, std::span<const double> taus,
                     const EngagementGridOut& out) {
  check_sizes(taus.size(), out.eng_x.size(), out.eng_y.size());
  check_sizes(taus.size(), out.reach_cos.size(), taus.size());
#if defined(PERIMETER_HAVE_AVX2)
  if (isa == Isa::kAvx2 && cpu_has_avx2()) {
    detail::engagement_grid_avx2(k, taus.data(), taus.size(), out.eng_x.data(), out.eng_y.data(),
                                 out.reach_cos.data());
    return;
  }
#endif
  (void)isa;
  detail::engagement_grid_scalar(k, taus.data(), taus.size(), out.eng_x.data(), out.eng_y.data(),
                                 out.reach_cos.data());
}

void engagement_grid(const EngagementGridConstants& k, std::span<const double> taus,
                     const EngagementGridOut& out) {
  engagement_grid(active_isa(), k, taus, out);
}

}  // namespace perimeter::kernels
