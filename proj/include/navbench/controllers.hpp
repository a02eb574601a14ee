#pragma once

#include <limits>
#include <utility>

#include "navbench/kinematics.hpp"
#include "navbench/world.hpp"

namespace navbench {

struct PidGains {
  double kp{0.0};
  double ki{0.0};  // 1/s
  double kd{0.0};  // s
  // Anti-windup bound on the accumulated integral.
  double i_clamp{std::numeric_limits<double>::infinity()};
};

struct PidState {
  double integral{0.0};
  double prev_error{0.0};
  bool initialized{false};
};

struct PidResult {
  double output;
  PidState state;
};

// Discrete PID with rectangular (backward-Euler) integral and finite-difference
// derivative.  The derivative is defined as 0 on the first call.
PidResult pid_step(const PidGains& gains, const PidState& st, double error, double dt);

// Default anti-windup bound: 10 * |output_limit / ki|, infinite when ki == 0.
double default_integral_clamp(double output_limit, double ki);

struct HeadingCommand {
  Control control;
  PidState state;
};

// Steer toward goal at constant v0: omega = PID(heading error), then clamp.
HeadingCommand heading_controller(const PidGains& gains, const PidState& st,
                                  const RobotState& state, const Eigen::Vector2d& goal,
                                  double v0, double dt, const RobotParams& params);

// Height of the triangle with sides a, b and included angle beta, i.e. the
// perpendicular distance from the apex to the third side:
//   h = a b sin(beta) / sqrt(a^2 + b^2 - 2 a b cos(beta))
// Two range readings separated by a known beam angle triangulate the lateral
// distance to a straight wall this way.
double triangle_height(double a, double b, double beta);

enum class WallSide { left, right };

struct WallFollowConfig {
  WallSide side{WallSide::right};
  double desired_distance{0.8};  // m, lateral setpoint
  double v0{0.5};                // m/s, cruise speed
  double front_threshold{0.6};   // m, corner-turn trigger
  double lost_threshold{2.5};    // m, side reading at/above this = wall lost
  PidGains turn_gains{1.5, 0.0, 0.4};
  double omega_search{1.0};      // rad/s, arc rate while searching for a wall
  double omega_max{2.0};         // rad/s, corner-turn rate and steering limit
};

enum class WallFollowMode { track, turn_corner, search };

struct WallFollowState {
  WallFollowMode mode{WallFollowMode::search};
  PidState pid{};
};

struct WallFollowCommand {
  Control control;
  WallFollowState state;
};

// One step of the wall-tracking state machine.  Mode priority:
//   front blocked            -> turn_corner: rotate away from the wall side
//   side beams out of range  -> search:      arc toward the wall side
//   otherwise                -> track:       PID on triangulated wall distance
// The PID state is reset outside track so re-entry starts fresh.
WallFollowCommand wall_follow_step(const WallFollowConfig& cfg, const WallFollowState& st,
                                   const RangeScan& scan, double dt);

}  // namespace navbench
