// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "perimeter/analytics.hpp"
#include "perimeter/errors.hpp"
#include "perimeter/kernels.hpp"
#include "perimeter/kinematics.hpp"
#include "perimeter/sweep.hpp"
#include "test_support.hpp"

namespace perimeter {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Parameter validation at the reference parameters.
Verdict parameter_validation() {
  const auto t0 = Clock::now();
  const GameParams p = validate_params(5.0, 10.0, 1.0, 0.8);
  const AssumptionClauses c = assumption_clauses(5.0, 10.0, 1.0, 0.8);
  const double elapsed = seconds_since(t0);
  const double first = 1.0 + 1.6 / 0.36;
  const double second = 4.0 + 2.0 * 0.64 / 0.36;
  Verdict v;
  v.pass = std::abs(c.first - first) <= 1e-9 && std::abs(c.second - second) <= 1e-9 &&
           c.first <= 10.0 && c.second <= 10.0 && p.rho_T() == 10.0 && elapsed < 1e-3;
  v.detail = fmt("first=%.12g second=%.12g bound=%.12g, %.3f ms", c.first, c.second, c.bound,
                 elapsed * 1e3);
  return v;
}

// 2. Closed-form reset tails against the Markov-chain oracle.
Verdict closed_form_vs_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  long cases = 0;
  for (int i = 1; i <= 19; ++i) {
    const double p = 0.05 * i;
    for (long N = 1; N <= 200; ++N) {
      const std::vector<double> pmf = markov_oracle(N, p);
      // Tail of the oracle pmf from the top down.
      std::vector<double> tail(pmf.size() + 1, 0.0);
      for (std::size_t k = pmf.size(); k-- > 0;) tail[k] = tail[k + 1] + pmf[k];
      for (long m = 0; m <= N; ++m) {
        worst = std::max(worst, std::abs(resets_tail(N, m, p) - tail[static_cast<std::size_t>(m) + 1]));
        ++cases;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {worst <= 1e-10 && elapsed < 10.0,
          fmt("%ld (N, m, p*) cases, max |diff| = %.3g, %.2f s", cases, worst, elapsed)};
}

// 3. Monte Carlo sessions against the expected percentage.
Verdict monte_carlo() {
  const auto t0 = Clock::now();
  const GameParams params = testing::reference_params();
  const std::vector<SessionRecord> records = run_sessions(params, 200, 100, 2024);
  std::vector<double> finals;
  for (const SessionRecord& r : records) finals.push_back(prefix_percentages(r).back());
  double mean = 0.0;
  for (double x : finals) mean += x;
  mean /= static_cast<double>(finals.size());
  double ss = 0.0;
  for (double x : finals) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (finals.size() - 1.0)) / std::sqrt(double(finals.size()));
  const double ps = p_star(params);
  const double expected = expected_percentage(200, ps);
  const double asym_gap = std::abs(expected_percentage(2000, ps) - asymptotic_percentage(ps));
  const double elapsed = seconds_since(t0);
  const double z = std::abs(mean - expected) / se;
  return {z < 3.0 && asym_gap <= 0.1 && elapsed < 30.0,
          fmt("p*=%.9f mean=%.4f expected=%.4f se=%.4f (|z|=%.2f); |pct(2000)-pct(inf)|=%.4f; "
              "%.2f s",
              ps, mean, expected, se, z, asym_gap, elapsed)};
}

// 4. Kinematic replays against the event-level engine.
Verdict kinematic_agreement() {
  const auto t0 = Clock::now();
  const AgreementReport r =
      verify_outcome_agreement(testing::reference_params(), 500, 4242, 1e-4, 1e-3);
  const double elapsed = seconds_since(t0);
  const bool pass = r.n_compared == 500 && r.n_agree == r.n_compared &&
                    r.max_capture_discrepancy <= 5e-3 && r.max_circle_residual <= 5e-3 &&
                    elapsed < 120.0;
  return {pass, fmt("%d/%d verdicts agree (%d capture, %d breach, %d skipped), max capture "
                    "discrepancy %.3g, max circle residual %.3g, defender-at-breach %.3g, %.2f s",
                    r.n_agree, r.n_compared, r.n_capture, r.n_breach, r.n_skipped,
                    r.max_capture_discrepancy, r.max_circle_residual, r.max_center_residual,
                    elapsed)};
}

// Straight path at unit speed to the engagement point, then hold; returns the
// smallest intruder-defender distance before the engagement time minus rho_A.
double detection_slack(const GameParams& p, const EngagementSolution& s, double sep) {
  const Point2 start = Point2::polar(capture_circle_radius(p), sep);
  const Point2 goal = s.candidate.x_D_eng;
  const double path = distance(start, goal);
  const double tau = s.candidate.tau;
  if (path > tau + 1e-9) return -1.0;
  constexpr int kSamples = 2000;
  double slack = 1e300;
  for (int i = 0; i < kSamples; ++i) {
    const double t = tau * i / kSamples;
    const Point2 x_D = t >= path ? goal : start + (t / path) * (goal - start);
    const Point2 x_A{p.outer_radius() - p.nu() * t, 0.0};
    slack = std::min(slack, distance(x_A, x_D) - p.rho_A());
  }
  return slack;
}

// 5. Geometry and strategy properties.
Verdict geometry_properties() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> nu_d(0.05, 0.95);

  double apollonius_worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double nu = nu_d(rng);
    const GameParams p = validate_params(1.0, 100.0, 0.1, nu);
    const Point2 a = testing::random_point(rng, 20.0), d = testing::random_point(rng, 20.0);
    const ApolloniusCircle c = apollonius(a, d, p);
    for (int k = 0; k < 8; ++k) {
      const Point2 x = c.center + Point2::polar(c.radius, 2.0 * kPi * k / 8.0 + 0.1);
      apollonius_worst = std::max(apollonius_worst, std::abs(distance(x, a) - nu * distance(x, d)));
    }
  }

  double tangency_worst = 0.0, xp_worst = 0.0;
  int path_failures = 0, configs = 0;
  double min_slack = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const GameParams p = i == 0 ? testing::reference_params() : testing::random_valid_params(rng);
    const EngagementDomain dom = engagement_domain(p);
    for (int k = 0; k <= 10; ++k) {
      const EngagementCandidate c =
          engagement_candidate(dom.tau_min + (dom.tau_max - dom.tau_min) * k / 10.0, p);
      tangency_worst = std::max(tangency_worst, tangency_residual(c, p));
    }
    const EngagementSolution s = optimize_engagement(capture_circle_radius(p), p);
    xp_worst = std::max(xp_worst,
                        std::abs(s.x_p.norm() - (p.r_T() + 2.0 * p.gamma() * p.rho_A())));
    ++configs;
    std::uniform_real_distribution<double> sep_d(-s.theta_max, s.theta_max);
    for (const double sep : {0.0, s.theta_max, sep_d(rng)}) {
      // Mirror negative separations onto the canonical side.
      const double slack = detection_slack(p, s, std::abs(sep));
      min_slack = std::min(min_slack, slack);
      if (slack < -1e-9) ++path_failures;
    }
  }

  const GameParams ref = testing::reference_params();
  bool monotone = true;
  double prev = kPi;
  for (int i = 0; i < 200; ++i) {
    const double r = ref.outer_radius() * i / 199.0;
    const double g = guarded_arc(r, ref);
    if (g > prev) monotone = false;
    prev = g;
  }

  const bool pass = apollonius_worst <= 1e-9 && tangency_worst <= 1e-9 && xp_worst <= 1e-9 &&
                    monotone && path_failures == 0;
  return {pass, fmt("apollonius residual %.3g (1e4 pairs), tangency residual %.3g, |x_p| residual "
                    "%.3g, guarded arc non-increasing: %s, non-detection failures %d of %d paths "
                    "over %d configs (min slack %.3g)",
                    apollonius_worst, tangency_worst, xp_worst, monotone ? "yes" : "no",
                    path_failures, 3 * configs, configs, min_slack)};
}

// 6. Level sets of the rho_A x rho_T sweep at nu = 0.75.
Verdict sweep_reproduction() {
  const auto t0 = Clock::now();
  SweepSpec spec;
  spec.outer = parse_grid_axis("rho_A=0.2:3:29");
  spec.inner = parse_grid_axis("rho_T=4:16:25");
  spec.base.nu = 0.75;
  spec.horizons = {20};
  const std::vector<SweepRow> rows = sweep(spec);

  double lo = 100.0, hi = 0.0, max_gap = 0.0;
  int feasible = 0;
  for (const SweepRow& r : rows) {
    if (!r.feasible) continue;
    ++feasible;
    lo = std::min(lo, r.asymptotic);
    hi = std::max(hi, r.asymptotic);
    max_gap = std::max(max_gap, std::abs(r.percentages[0] - r.asymptotic));
  }
  std::string fits;
  bool contour_ok = false;
  for (const double q : {0.25, 0.5, 0.75}) {
    const double target = lo + q * (hi - lo);
    try {
      const LevelSetFit f = level_set_slope(spec, rows, target);
      const bool ok = f.slope >= 2.0 && f.slope <= 3.0 && f.relative_residual <= 0.1;
      contour_ok = contour_ok || ok;
      fits += fmt(" %.2f%%: slope %.4f rel.res %.4f (%zu pts);", target, f.slope,
                  f.relative_residual, f.xs.size());
    } catch (const ContourNotFound&) {
      fits += fmt(" %.2f%%: no contour;", target);
    }
  }
  const double elapsed = seconds_since(t0);
  return {contour_ok && max_gap <= 5.0 && elapsed < 60.0,
          fmt("%d feasible of %zu;%s max |pct(20)-pct(inf)| = %.4f; %.2f s", feasible,
              rows.size(), fits.c_str(), max_gap, elapsed)};
}

// 7. Byte-identical command output across repeats, thread counts and SIMD paths.
Verdict determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "--n", "200", "--trials", "40", "--seed", "11"},
      {"simulate", "--n", "50", "--trials", "8", "--seed", "11", "--format", "jsonl"},
      {"analytic", "--n", "60"},
      {"sweep", "--nu", "0.75", "--grid", "rho_A=0.2:3:15", "--grid", "rho_T=4:16:13", "--n", "20"},
      {"verify", "--n", "40", "--seed", "3"},
      {"trace", "--theta-a", "0.3", "--theta-d", "1.1"},
  };
  int compared = 0, mismatched = 0;
  for (const auto& base : commands) {
    std::string reference;
    bool first = true;
    for (const auto isa : {kernels::Isa::kScalar, kernels::Isa::kAvx2}) {
      kernels::force_isa(isa);
      for (const char* threads : {"1", "2", "4", "1"}) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--threads", threads});
        std::ostringstream out, err;
        if (cli::run(args, out, err) != 0) ++mismatched;
        if (first) {
          reference = out.str();
          first = false;
        } else {
          ++compared;
          if (out.str() != reference) ++mismatched;
        }
      }
    }
  }
  kernels::force_isa(std::nullopt);
  return {mismatched == 0,
          fmt("%zu commands, %d repeat comparisons (threads 1/2/4, scalar and %s kernels), %d "
              "mismatches",
              commands.size(), compared,
              kernels::isa_available(kernels::Isa::kAvx2) ? "AVX2" : "scalar-fallback",
              mismatched)};
}

}  // namespace
}  // namespace perimeter

int main() {
  using namespace perimeter;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"1 parameter validation", parameter_validation},
      {"2 closed form vs Markov oracle", closed_form_vs_oracle},
      {"3 Monte Carlo vs expected percentage", monte_carlo},
      {"4 kinematic oracle agreement", kinematic_agreement},
      {"5 geometry property suite", geometry_properties},
      {"6 sweep level sets", sweep_reproduction},
      {"7 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
