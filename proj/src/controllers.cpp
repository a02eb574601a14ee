#include "navbench/controllers.hpp"

#include <algorithm>
#include <cmath>

namespace navbench {

PidResult pid_step(const PidGains& gains, const PidState& st, double error, double dt) {
  if (!(dt > 0.0)) throw InvalidStep("pid_step requires dt > 0");
  const double integral =
      std::clamp(st.integral + error * dt, -gains.i_clamp, gains.i_clamp);
  const double deriv = st.initialized ? (error - st.prev_error) / dt : 0.0;
  const double out = gains.kp * error + gains.ki * integral + gains.kd * deriv;
  return {out, PidState{integral, error, true}};
}

double default_integral_clamp(double output_limit, double ki) {
  if (ki == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::abs(output_limit / ki);
}

HeadingCommand heading_controller(const PidGains& gains, const PidState& st,
                                  const RobotState& state, const Eigen::Vector2d& goal,
                                  double v0, double dt, const RobotParams& params) {
  const double error = heading_error(state, goal);
  const PidResult r = pid_step(gains, st, error, dt);
  return {clamp_control({v0, r.output}, params), r.state};
}

double triangle_height(double a, double b, double beta) {
  if (!(beta > 0.0 && beta < M_PI)) throw InvalidAngle("beta must lie in (0, pi)");
  if (!(a > 0.0 && b > 0.0)) throw DegenerateTriangle("sides must be positive");
  const double c_sq = a * a + b * b - 2.0 * a * b * std::cos(beta);
  const double c = std::sqrt(std::max(c_sq, 0.0));
  if (c < 1e-12) throw DegenerateTriangle("triangle collapses to a point");
  return a * b * std::sin(beta) / c;
}

namespace {

// Index of the beam whose angle is nearest to `target`, excluding `skip`.
int nearest_beam(const RangeScan& scan, double target, int skip = -1) {
  int best = -1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(scan.beam_angles.size()); ++i) {
    if (i == skip) continue;
    const double gap = std::abs(scan.beam_angles[i] - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

}  // namespace

WallFollowCommand wall_follow_step(const WallFollowConfig& cfg, const WallFollowState& st,
                                   const RangeScan& scan, double dt) {
  if (scan.ranges.size() < 3 || scan.ranges.size() != scan.beam_angles.size()) {
    throw InsufficientScan("wall following needs at least 3 beams");
  }
  const double side_dir = cfg.side == WallSide::right ? -M_PI / 2.0 : M_PI / 2.0;
  const int front = nearest_beam(scan, 0.0);
  const int side_a = nearest_beam(scan, side_dir);
  const int side_b = nearest_beam(scan, side_dir, side_a);
  if (std::abs(scan.beam_angles[front]) > M_PI / 6.0 ||
      std::abs(scan.beam_angles[side_a] - side_dir) > M_PI / 3.0 ||
      std::abs(scan.beam_angles[side_b] - side_dir) > M_PI / 3.0) {
    throw InsufficientScan("scan does not cover the front and the configured side");
  }

  // right wall: +omega turns away from it, -omega toward it; mirrored for left
  const double away = cfg.side == WallSide::right ? 1.0 : -1.0;

  if (scan.ranges[front] < cfg.front_threshold) {
    return {{0.0, away * cfg.omega_max}, {WallFollowMode::turn_corner, PidState{}}};
  }

  // noisy readings clamp to 0 at contact; keep the triangle well-formed
  const double r1 = std::max(scan.ranges[side_a], 1e-6);
  const double r2 = std::max(scan.ranges[side_b], 1e-6);
  if (std::max(r1, r2) >= cfg.lost_threshold) {
    return {{cfg.v0, -away * cfg.omega_search}, {WallFollowMode::search, PidState{}}};
  }

  const double delta_phi = std::abs(scan.beam_angles[side_a] - scan.beam_angles[side_b]);
  const double wall_distance = triangle_height(r1, r2, delta_phi);
  const PidState pid_in = st.mode == WallFollowMode::track ? st.pid : PidState{};
  const PidResult r = pid_step(cfg.turn_gains, pid_in, cfg.desired_distance - wall_distance, dt);
  // positive error (too close) steers away from the wall
  const double omega = std::clamp(away * r.output, -cfg.omega_max, cfg.omega_max);
  return {{cfg.v0, omega}, {WallFollowMode::track, r.state}};
}

}  // namespace navbench
