#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perimeter/engine.hpp"

namespace perimeter {

enum class Phase { kPartial, kFull };

const char* to_string(Phase p);

struct TrajectorySample {
  double t;
  Point2 x_A;
  Point2 x_D;
  Phase phase;
};

struct Terminal {
  GameResult kind = GameResult::kCapture;
  Point2 point;  // capture: midpoint of the agents; breach: intruder position
  double t = 0.0;
  Point2 x_A;
  Point2 x_D;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<TrajectorySample> samples;
  Terminal terminal;
  bool defender_engaged = false;  // false: defender retreated to the center
  std::optional<double> detection_time;
  Point2 x_A_detect;
  Point2 x_D_detect;
  Point2 intruder_destination;  // committed at detection
};

struct KinematicOptions {
  double dt = 0.0;           // 0 selects 1e-4 * (r_T + rho_T)
  double eps_capture = 1e-3;
  /// Record every n-th step; 0 keeps only the start, detection and terminal
  /// samples.
  int record_stride = 1;
};

/// Replays one game with first-order kinematics at fixed timestep.
///
/// The intruder runs radially inward until the defender is within its
/// sensing radius, then commits to a straight line: the max-margin breach
/// point if its Apollonius circle reaches into the target, otherwise the
/// circle's farthest point from the origin. The defender follows its plan
/// (straight to the engagement point and hold, or straight to the center)
/// and after detection heads for the intruder's committed destination.
/// Detection and breach crossings are located inside the step by bisection.
Trajectory simulate_kinematic(const GameEngine& engine, const DefenderState& state,
                              double theta_A, const KinematicOptions& options);
Trajectory simulate_kinematic(const DefenderState& state, double theta_A,
                              const GameParams& params, double dt, double eps_capture);

struct AgreementReport {
  int n_games = 0;
  int n_compared = 0;
  int n_skipped = 0;  // arrivals within the boundary margin of theta_max
  int n_agree = 0;
  int n_capture = 0;
  int n_breach = 0;
  double max_capture_discrepancy = 0.0;   // vs. the event-level capture point
  double max_circle_residual = 0.0;       // | |capture| - capture radius |
  double max_center_residual = 0.0;       // defender distance to origin at breach
  double discrepancy_bound = 5e-3;

  bool ok() const {
    return n_agree == n_compared && max_capture_discrepancy <= discrepancy_bound;
  }
};

/// Replays a seeded sequence of event-level games kinematically and compares
/// verdicts and capture points.
AgreementReport verify_outcome_agreement(const GameParams& params, int n_games,
                                         std::uint64_t seed, double dt, double eps_capture,
                                         double boundary_margin = 1e-3, unsigned threads = 0);

}  // namespace perimeter
