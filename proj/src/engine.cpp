#include "perimeter/engine.hpp"

#include <cmath>

#include "perimeter/rng.hpp"

namespace perimeter {

const char* to_string(GameResult r) {
  return r == GameResult::kCapture ? "capture" : "breach";
}

GameEngine::GameEngine(const GameParams& params)
    : params_(params),
      solution_(optimize_engagement(capture_circle_radius(params), params)),
      capture_radius_(capture_circle_radius(params)) {}

Point2 GameEngine::to_world(const Point2& canonical, double theta_A, double side) const {
  return rotate({canonical.x, side * canonical.y}, theta_A);
}

namespace {

// Mirror side of the canonical frame; zero separation counts as +1.
double side_of(double separation) { return separation < 0.0 ? -1.0 : 1.0; }

}  // namespace

DefenderPlan GameEngine::plan(const DefenderState& state, double theta_A) const {
  if (state.at_center_p()) {
    const double radius = params_.r_T() - params_.rho_A() / (1.0 + params_.nu());
    return {true, Point2::polar(radius, theta_A), 1.0};
  }
  const double separation = wrap_angle(state.angle() - theta_A);
  if (std::abs(separation) <= solution_.theta_max) {
    const double side = side_of(separation);
    return {true, to_world(solution_.candidate.x_D_eng, theta_A, side), side};
  }
  return {false, Point2{}, side_of(separation)};
}

GameOutcome GameEngine::play(const DefenderState& state, double theta_A) const {
  GameOutcome out;
  out.arrival_angle = theta_A;
  if (state.at_center_p()) {
    out.result = GameResult::kCapture;
    out.defender_state_after = DefenderState::on_capture_circle(theta_A);
    out.capture_point = Point2::polar(capture_radius_, theta_A);
    return out;
  }
  out.defender_angle_before = state.angle();
  const double separation = wrap_angle(state.angle() - theta_A);
  if (std::abs(separation) <= solution_.theta_max) {
    const double side = side_of(separation);
    out.result = GameResult::kCapture;
    out.defender_state_after = DefenderState::on_capture_circle(theta_A + side * solution_.phi);
    out.capture_point = to_world(solution_.x_p, theta_A, side);
  } else {
    out.result = GameResult::kBreach;
    out.defender_state_after = DefenderState::at_center();
  }
  return out;
}

GameOutcome play_game(const DefenderState& state, double theta_A, const GameParams& params) {
  return GameEngine(params).play(state, theta_A);
}

SessionRecord run_session(const GameEngine& engine, int n_games, std::uint64_t seed) {
  if (n_games < 1) throw DomainError("run_session: need at least one game");
  SessionRecord rec{engine.params(), seed, {}, 0, 0};
  rec.outcomes.reserve(static_cast<std::size_t>(n_games));
  DefenderState state = DefenderState::at_center();
  for (int i = 0; i < n_games; ++i) {
    GameOutcome o = engine.play(state, arrival_angle(seed, static_cast<std::uint64_t>(i)));
    if (o.result == GameResult::kCapture) {
      ++rec.n_capture;
    } else {
      ++rec.n_breach;
    }
    state = o.defender_state_after;
    rec.outcomes.push_back(std::move(o));
  }
  return rec;
}

SessionRecord run_session(const GameParams& params, int n_games, std::uint64_t seed) {
  return run_session(GameEngine(params), n_games, seed);
}

std::vector<SessionRecord> run_sessions(const GameParams& params, int n_games, int trials,
                                        std::uint64_t base_seed, unsigned threads) {
  if (trials < 1) throw DomainError("run_sessions: need at least one trial");
  const GameEngine engine(params);
  std::vector<std::optional<SessionRecord>> slots(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](int i) {
    slots[static_cast<std::size_t>(i)] =
        run_session(engine, n_games, trial_seed(base_seed, static_cast<std::uint64_t>(i)));
  });
  std::vector<SessionRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace perimeter
