#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "navbench/errors.hpp"

namespace navbench {

// Unicycle pose. theta is kept in (-pi, pi], boundary mapped to +pi.
struct RobotState {
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Eigen::Vector2d position() const { return {x, y}; }
};

// Unicycle command: linear velocity v [m/s], angular velocity omega [rad/s].
struct Control {
  double v{0.0};
  double omega{0.0};
};

struct RobotParams {
  double v_max{1.0};        // m/s
  double omega_max{2.0};    // rad/s
  double accel_v{2.0};      // m/s^2, reachable-velocity window
  double accel_omega{4.0};  // rad/s^2
  double brake_v{2.0};      // m/s^2, braking capability for admissibility
  double brake_omega{4.0};  // rad/s^2
  double radius{0.2};       // body circle, m
  double wheel_base{0.4};   // m
};

struct WheelSpeeds {
  double left{0.0};   // m/s
  double right{0.0};  // m/s
};

inline void check_params(const RobotParams& p) {
  const bool ok = p.v_max > 0 && p.omega_max > 0 && p.accel_v > 0 &&
                  p.accel_omega > 0 && p.brake_v > 0 && p.brake_omega > 0 &&
                  p.radius > 0 && p.wheel_base > 0;
  if (!ok) throw InvalidParams("robot params must all be strictly positive");
}

// Wrap to (-pi, pi]; -pi maps to +pi.
inline double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

// Below this |omega| the exact arc degenerates; switch to the midpoint form.
inline constexpr double kOmegaEpsilon = 1e-9;

// Exact constant-(v, omega) arc over dt.  For |omega| < kOmegaEpsilon the
// update uses the midpoint heading, which agrees with the arc to second
// order and is exact for omega == 0.
inline RobotState step(const RobotState& s, const Control& u, double dt) {
  if (!(std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.theta) &&
        std::isfinite(u.v) && std::isfinite(u.omega) && std::isfinite(dt)) ||
      dt <= 0.0) {
    throw InvalidState("step requires finite state/control and dt > 0");
  }
  const double theta_end = s.theta + u.omega * dt;
  RobotState out;
  if (std::abs(u.omega) >= kOmegaEpsilon) {
    const double k = u.v / u.omega;
    out.x = s.x + k * (std::sin(theta_end) - std::sin(s.theta));
    out.y = s.y - k * (std::cos(theta_end) - std::cos(s.theta));
  } else {
    const double theta_mid = s.theta + 0.5 * u.omega * dt;
    out.x = s.x + u.v * dt * std::cos(theta_mid);
    out.y = s.y + u.v * dt * std::sin(theta_mid);
  }
  out.theta = wrap_angle(theta_end);
  return out;
}

inline WheelSpeeds control_to_wheels(const Control& c, double wheel_base) {
  if (!(wheel_base > 0)) throw InvalidParams("wheel_base must be > 0");
  const double half = 0.5 * wheel_base;
  return {c.v - c.omega * half, c.v + c.omega * half};
}

inline Control wheels_to_control(const WheelSpeeds& w, double wheel_base) {
  if (!(wheel_base > 0)) throw InvalidParams("wheel_base must be > 0");
  return {0.5 * (w.left + w.right), (w.right - w.left) / wheel_base};
}

inline Control clamp_control(const Control& c, const RobotParams& p) {
  check_params(p);
  return {std::clamp(c.v, -p.v_max, p.v_max),
          std::clamp(c.omega, -p.omega_max, p.omega_max)};
}

// Bearing to goal minus heading, wrapped to (-pi, pi].
inline double heading_error(const RobotState& s, const Eigen::Vector2d& goal) {
  const double dx = goal.x() - s.x;
  const double dy = goal.y() - s.y;
  if (std::hypot(dx, dy) < 1e-9) {
    throw DegenerateGoal("goal coincides with robot position");
  }
  return wrap_angle(std::atan2(dy, dx) - s.theta);
}

}  // namespace navbench
