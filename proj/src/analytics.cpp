#include "perimeter/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace perimeter {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + ": probability " + std::to_string(p) +
                      " outside [0, 1]");
  }
}

double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// e * log(v) with the convention 0 * log(0) = 0.
double scaled_log(long e, double log_v) { return e == 0 ? 0.0 : static_cast<double>(e) * log_v; }

}  // namespace

double p_star_from_theta(double theta_max) {
  if (!(theta_max >= 0.0 && theta_max <= kPi)) {
    throw DomainError("p_star: theta_max outside [0, pi]");
  }
  return theta_max / kPi;
}

double p_star(const GameParams& params) {
  return p_star_from_theta(optimize_engagement(capture_circle_radius(params), params).theta_max);
}

double travel_pmf(long k, double p_star) {
  if (k < 1) throw DomainError("travel_pmf: travel length must be >= 1");
  if (!(p_star >= 0.0 && p_star < 1.0)) {
    throw DomainError("travel_pmf: capture probability must lie in [0, 1)");
  }
  return std::pow(p_star, static_cast<double>(k - 1)) * (1.0 - p_star);
}

double total_captures_pmf(long n, long m, double p_star) {
  if (!(m >= 1 && m <= n)) throw DomainError("total_captures_pmf: need 1 <= m <= n");
  check_probability(p_star, "total_captures_pmf");
  const double log_p = std::log(p_star);
  const double log_q = std::log1p(-p_star);
  return std::exp(log_choose(n - 1, m - 1) + scaled_log(n - m, log_p) + scaled_log(m, log_q));
}

double resets_tail(long N, long m, double p_star) {
  if (N < 1 || m < 0) throw DomainError("resets_tail: need N >= 1 and m >= 0");
  check_probability(p_star, "resets_tail");
  double sum = 0.0;
  // Empty range when m + 1 > N - m - 1.
  for (long j = m + 1; j <= N - m - 1; ++j) sum += total_captures_pmf(j, m + 1, p_star);
  return std::min(sum, 1.0);
}

double expected_resets(long N, double p_star) {
  if (N < 1) throw DomainError("expected_resets: need N >= 1");
  double sum = 0.0;
  for (long m = 0; 2 * m + 2 <= N; ++m) sum += resets_tail(N, m, p_star);
  return sum;
}

double expected_percentage(long N, double p_star) {
  const double n = static_cast<double>(N);
  return 100.0 * (n - expected_resets(N, p_star)) / n;
}

std::vector<double> expected_resets_table(long N_max, double p_star) {
  if (N_max < 1) throw DomainError("expected_resets_table: need N_max >= 1");
  check_probability(p_star, "expected_resets_table");
  std::vector<double> out(static_cast<std::size_t>(N_max));
  double acc = 0.0;
  for (long N = 1; N <= N_max; ++N) {
    for (long m = 0; 2 * m + 2 <= N; ++m) acc += total_captures_pmf(N - m - 1, m + 1, p_star);
    out[static_cast<std::size_t>(N - 1)] = acc;
  }
  return out;
}

double asymptotic_percentage(double p_star) {
  check_probability(p_star, "asymptotic_percentage");
  return 100.0 / (2.0 - p_star);
}

std::vector<double> markov_oracle(long N, double p_star) {
  if (N < 1) throw DomainError("markov_oracle: need N >= 1");
  check_probability(p_star, "markov_oracle");
  const auto size = static_cast<std::size_t>(N) + 1;
  // Probability of (state, resets so far) after each game.
  std::vector<double> circle(size, 0.0), center(size, 0.0);
  std::vector<double> next_circle(size), next_center(size);
  circle[0] = 1.0;  // the first game starts at the center and always captures
  for (long game = 2; game <= N; ++game) {
    std::fill(next_circle.begin(), next_circle.end(), 0.0);
    std::fill(next_center.begin(), next_center.end(), 0.0);
    for (std::size_t k = 0; k + 1 < size; ++k) {
      next_circle[k] += circle[k] * p_star + center[k];
      next_center[k + 1] += circle[k] * (1.0 - p_star);
    }
    circle.swap(next_circle);
    center.swap(next_center);
  }
  std::vector<double> pmf(size);
  for (std::size_t k = 0; k < size; ++k) pmf[k] = circle[k] + center[k];
  return pmf;
}

CaptureStats capture_stats(const GameParams& params, std::optional<long> N) {
  CaptureStats s;
  s.theta_max = optimize_engagement(capture_circle_radius(params), params).theta_max;
  s.p_star = p_star_from_theta(s.theta_max);
  s.N = N;
  if (N) {
    s.expected_resets = expected_resets(*N, s.p_star);
    s.expected_percentage = expected_percentage(*N, s.p_star);
  } else {
    s.expected_percentage = asymptotic_percentage(s.p_star);
  }
  return s;
}

std::vector<double> prefix_percentages(const SessionRecord& record) {
  std::vector<double> out;
  out.reserve(record.outcomes.size());
  int captures = 0;
  for (std::size_t i = 0; i < record.outcomes.size(); ++i) {
    if (record.outcomes[i].result == GameResult::kCapture) ++captures;
    out.push_back(100.0 * captures / static_cast<double>(i + 1));
  }
  return out;
}

std::vector<PrefixStat> aggregate_sessions(std::span<const SessionRecord> records) {
  if (records.empty()) throw LengthMismatch("aggregate_sessions: no sessions");
  const std::size_t n = records.front().outcomes.size();
  for (const auto& r : records) {
    if (r.outcomes.size() != n) throw LengthMismatch("aggregate_sessions: unequal session lengths");
  }
  std::vector<std::vector<double>> prefixes;
  prefixes.reserve(records.size());
  for (const auto& r : records) prefixes.push_back(prefix_percentages(r));

  const double count = static_cast<double>(records.size());
  std::vector<PrefixStat> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const auto& p : prefixes) sum += p[i];
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& p : prefixes) ss += (p[i] - mean) * (p[i] - mean);
    const double sd = records.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    const double half = 1.959963984540054 * sd / std::sqrt(count);
    out[i] = {static_cast<int>(i + 1), mean, mean - half, mean + half};
  }
  return out;
}

}  // namespace perimeter
