#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perimeter/params.hpp"
#include "perimeter/strategy.hpp"

namespace perimeter {

enum class GameResult { kCapture, kBreach };

const char* to_string(GameResult r);

struct GameOutcome {
  GameResult result = GameResult::kCapture;
  double arrival_angle = 0.0;
  std::optional<double> defender_angle_before;  // empty when starting at the center
  DefenderState defender_state_after = DefenderState::at_center();
  std::optional<Point2> capture_point;  // world frame, on the capture circle

  friend bool operator==(const GameOutcome&, const GameOutcome&) = default;
};

struct SessionRecord {
  GameParams params;
  std::uint64_t seed = 0;
  std::vector<GameOutcome> outcomes;
  int n_capture = 0;
  int n_breach = 0;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

/// Where the defender heads during the partial-information phase.
struct DefenderPlan {
  bool engage = false;       // false: retreat to the center
  Point2 engagement_point;   // world frame; origin when retreating
  double side = 1.0;         // +1 / -1 mirror of the canonical frame
};

/// Event-level defender strategy with the capture-circle engagement solution
/// computed once per parameter set. Immutable after construction.
class GameEngine {
 public:
  explicit GameEngine(const GameParams& params);

  const GameParams& params() const noexcept { return params_; }
  const EngagementSolution& solution() const noexcept { return solution_; }
  double capture_radius() const noexcept { return capture_radius_; }
  double theta_max() const noexcept { return solution_.theta_max; }

  /// Maps a canonical-frame point into the world frame for an intruder
  /// arriving at theta_A, mirrored to `side`.
  Point2 to_world(const Point2& canonical, double theta_A, double side) const;

  DefenderPlan plan(const DefenderState& state, double theta_A) const;

  GameOutcome play(const DefenderState& state, double theta_A) const;

 private:
  GameParams params_;
  EngagementSolution solution_;
  double capture_radius_;
};

/// One game; builds a GameEngine per call. Prefer GameEngine::play in loops.
GameOutcome play_game(const DefenderState& state, double theta_A, const GameParams& params);

/// N sequential arrivals starting from the center.
SessionRecord run_session(const GameParams& params, int n_games, std::uint64_t seed);
SessionRecord run_session(const GameEngine& engine, int n_games, std::uint64_t seed);

/// Independent sessions seeded with trial_seed(base_seed, i). Work is split
/// over `threads` workers (0 = hardware concurrency); output order and
/// content do not depend on the thread count.
std::vector<SessionRecord> run_sessions(const GameParams& params, int n_games, int trials,
                                        std::uint64_t base_seed, unsigned threads = 0);

/// Runs fn(i) for i in [0, n) on up to `threads` workers with a static
/// partition.
template <typename Fn>
void parallel_for(int n, unsigned threads, Fn&& fn);

}  // namespace perimeter

#include "perimeter/parallel.inl"
