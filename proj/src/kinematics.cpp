#include "perimeter/kinematics.hpp"

#include <cmath>
#include <functional>

#include "perimeter/rng.hpp"

namespace perimeter {

const char* to_string(Phase p) { return p == Phase::kPartial ? "partial" : "full"; }

namespace {

// Moves `from` toward `target` by at most `step`, stopping on arrival.
Point2 advance(const Point2& from, const Point2& target, double step) {
  const Point2 d = target - from;
  const double len = d.norm();
  if (len <= step) return target;
  return from + (step / len) * d;
}

// Smallest h in (0, h_max] with pred(h), given !pred(0) and pred(h_max).
double first_crossing(double h_max, const std::function<bool(double)>& pred) {
  double lo = 0.0;
  double hi = h_max;
  for (int i = 0; i < 80 && hi - lo > 1e-15 * (1.0 + h_max); ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

Trajectory simulate_kinematic(const GameEngine& engine, const DefenderState& state,
                              double theta_A, const KinematicOptions& options) {
  const GameParams& params = engine.params();
  const double r_T = params.r_T();
  const double nu = params.nu();
  const double rho_A = params.rho_A();
  if (!(options.dt >= 0.0) || !std::isfinite(options.dt)) {
    throw DomainError("simulate_kinematic: dt must be positive");
  }
  const double dt = options.dt > 0.0 ? options.dt : 1e-4 * params.outer_radius();
  const double eps = options.eps_capture;
  if (!(eps > 0.0)) throw DomainError("simulate_kinematic: eps_capture must be positive");
  const double t_limit = 10.0 * params.outer_radius();
  const double breach_radius = r_T * (1.0 + 1e-12);

  const DefenderPlan plan = engine.plan(state, theta_A);
  const Point2 inward = -Point2::unit(theta_A);

  Trajectory traj;
  traj.dt = dt;
  traj.defender_engaged = plan.engage;

  Point2 x_A = Point2::polar(params.outer_radius(), theta_A);
  Point2 x_D = state.position(params);
  Phase phase = Phase::kPartial;
  Point2 dest_A;
  Point2 dest_D = plan.engagement_point;
  double t = 0.0;
  long step = 0;

  auto record = [&](bool force) {
    const int stride = options.record_stride;
    if (force || (stride > 0 && step % stride == 0)) traj.samples.push_back({t, x_A, x_D, phase});
  };

  auto intruder_at = [&](double h) {
    return phase == Phase::kPartial ? x_A + (nu * h) * inward : advance(x_A, dest_A, nu * h);
  };
  auto defender_at = [&](double h) { return advance(x_D, dest_D, h); };

  auto finish_breach = [&](double h) {
    x_A = intruder_at(h);
    x_D = defender_at(h);
    t += h;
    traj.terminal = {GameResult::kBreach, x_A, t, x_A, x_D};
    record(true);
  };

  auto begin_full_phase = [&] {
    phase = Phase::kFull;
    traj.detection_time = t;
    traj.x_A_detect = x_A;
    traj.x_D_detect = x_D;
    const ApolloniusCircle circle = apollonius(x_A, x_D, params);
    const BreachMargin bm = breach_margin_point(x_A, x_D, params);
    // Tangency counts as capture-safe; allow roundoff relative to the scene.
    const double tol = 1e-9 * (1.0 + params.outer_radius());
    dest_A = bm.margin > tol ? bm.point : farthest_point_from_origin(circle);
    traj.intruder_destination = dest_A;
    if (plan.engage) dest_D = dest_A;
  };

  record(true);
  if (distance(x_A, x_D) <= rho_A) {
    begin_full_phase();
    record(true);
  }

  while (true) {
    if (t > t_limit) {
      throw NoTermination("simulate_kinematic: no capture or breach within the time limit");
    }
    const Point2 next_A = intruder_at(dt);
    const Point2 next_D = defender_at(dt);

    double h_breach = -1.0;
    if (next_A.norm() <= breach_radius) {
      h_breach = first_crossing(dt, [&](double h) { return intruder_at(h).norm() <= breach_radius; });
    }

    if (phase == Phase::kPartial) {
      double h_detect = -1.0;
      if (distance(next_A, next_D) <= rho_A) {
        h_detect = first_crossing(
            dt, [&](double h) { return distance(intruder_at(h), defender_at(h)) <= rho_A; });
      }
      if (h_breach >= 0.0 && (h_detect < 0.0 || h_breach <= h_detect)) {
        finish_breach(h_breach);
        return traj;
      }
      if (h_detect >= 0.0) {
        x_A = intruder_at(h_detect);
        x_D = defender_at(h_detect);
        t += h_detect;
        ++step;
        begin_full_phase();
        record(true);
        continue;
      }
    } else if (h_breach >= 0.0) {
      finish_breach(h_breach);
      return traj;
    }

    x_A = next_A;
    x_D = next_D;
    t += dt;
    ++step;
    if (phase == Phase::kFull && distance(x_A, x_D) <= eps) {
      traj.terminal = {GameResult::kCapture, 0.5 * (x_A + x_D), t, x_A, x_D};
      record(true);
      return traj;
    }
    record(false);
  }
}

Trajectory simulate_kinematic(const DefenderState& state, double theta_A,
                              const GameParams& params, double dt, double eps_capture) {
  if (!(dt > 0.0)) throw DomainError("simulate_kinematic: dt must be positive");
  return simulate_kinematic(GameEngine(params), state, theta_A, {dt, eps_capture, 1});
}

AgreementReport verify_outcome_agreement(const GameParams& params, int n_games,
                                         std::uint64_t seed, double dt, double eps_capture,
                                         double boundary_margin, unsigned threads) {
  const GameEngine engine(params);
  AgreementReport report;
  report.n_games = n_games;

  struct Game {
    DefenderState state;
    double theta_A;
    GameOutcome outcome;
    bool compare;
  };
  std::vector<Game> games;
  games.reserve(static_cast<std::size_t>(std::max(n_games, 0)));
  DefenderState state = DefenderState::at_center();
  for (int i = 0; i < n_games; ++i) {
    const double theta_A = arrival_angle(seed, static_cast<std::uint64_t>(i));
    GameOutcome o = engine.play(state, theta_A);
    bool compare = true;
    if (state.on_capture_circle_p()) {
      const double sep = std::abs(wrap_angle(state.angle() - theta_A));
      compare = std::abs(sep - engine.theta_max()) >= boundary_margin;
    }
    games.push_back({state, theta_A, o, compare});
    state = o.defender_state_after;
  }

  std::vector<std::optional<Trajectory>> replays(games.size());
  parallel_for(static_cast<int>(games.size()), threads, [&](int i) {
    const Game& g = games[static_cast<std::size_t>(i)];
    if (g.compare) {
      replays[static_cast<std::size_t>(i)] =
          simulate_kinematic(engine, g.state, g.theta_A, {dt, eps_capture, 0});
    }
  });

  for (std::size_t i = 0; i < games.size(); ++i) {
    const Game& g = games[i];
    if (!g.compare) {
      ++report.n_skipped;
      continue;
    }
    const Trajectory& tr = *replays[i];
    ++report.n_compared;
    if (tr.terminal.kind == g.outcome.result) ++report.n_agree;
    if (g.outcome.result == GameResult::kCapture) {
      ++report.n_capture;
      if (tr.terminal.kind == GameResult::kCapture) {
        report.max_capture_discrepancy = std::max(
            report.max_capture_discrepancy, distance(tr.terminal.point, *g.outcome.capture_point));
        report.max_circle_residual =
            std::max(report.max_circle_residual,
                     std::abs(tr.terminal.point.norm() - engine.capture_radius()));
      }
    } else {
      ++report.n_breach;
      if (tr.terminal.kind == GameResult::kBreach) {
        report.max_center_residual = std::max(report.max_center_residual, tr.terminal.x_D.norm());
      }
    }
  }
  return report;
}

}  // namespace perimeter
