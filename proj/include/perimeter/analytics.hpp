#pragma once

#include <optional>
#include <span>
#include <vector>

#include "perimeter/engine.hpp"

namespace perimeter {

/// Capture probability from the capture circle, theta_max / pi.
double p_star_from_theta(double theta_max);
double p_star(const GameParams& params);

/// Probability that a travel (run of captures between resets) has length k.
double travel_pmf(long k, double p_star);

/// Probability that m travels contain n captures in total.
double total_captures_pmf(long n, long m, double p_star);

/// P(S_N > m), S_N being the number of resets (breaches) in N games.
double resets_tail(long N, long m, double p_star);

/// E[S_N] through the tail-sum identity.
double expected_resets(long N, double p_star);

/// 100 (N - E[S_N]) / N.
double expected_percentage(long N, double p_star);

/// E[S_N] for N = 1..N_max (element N-1), accumulated incrementally in
/// O(N_max^2): going from N-1 to N adds only the terms with j = N - m - 1.
std::vector<double> expected_resets_table(long N_max, double p_star);

/// 100 / (2 - p*).
double asymptotic_percentage(double p_star);

/// Exact pmf of S_N (indices 0..N) from dynamic programming over the
/// two-state chain center -> circle -> {circle, center}.
std::vector<double> markov_oracle(long N, double p_star);

struct CaptureStats {
  double p_star = 0.0;
  double theta_max = 0.0;
  std::optional<long> N;  // empty: infinite horizon
  double expected_resets = 0.0;      // E[S_N]; 0 for the infinite horizon
  double expected_percentage = 0.0;
};

CaptureStats capture_stats(const GameParams& params, std::optional<long> N);

struct PrefixStat {
  int n = 0;  // prefix length
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Mean capture percentage over sessions for every prefix length, with a
/// normal-approximation 95% confidence interval.
std::vector<PrefixStat> aggregate_sessions(std::span<const SessionRecord> records);

/// Per-prefix capture percentage of one session.
std::vector<double> prefix_percentages(const SessionRecord& record);

}  // namespace perimeter
