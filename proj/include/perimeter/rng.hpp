#pragma once

#include <cstdint>

#include "perimeter/geometry.hpp"

namespace perimeter {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit draw keyed by (seed, index). Pure function, so
/// streams are identical regardless of scheduling.
constexpr std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^ (index * 0xD1B54A32D192ED03ull + 1));
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_draw(seed, index) >> 11) * 0x1.0p-53;
}

/// Arrival angle of intruder `index`, uniform on [-pi, pi).
inline double arrival_angle(std::uint64_t seed, std::uint64_t index) {
  return -kPi + 2.0 * kPi * counter_uniform(seed, index);
}

/// Seed of trial `trial` derived from a base seed.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
  return mix64(base ^ mix64(trial + 0x632BE59BD9B4E019ull));
}

}  // namespace perimeter
