#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "navbench/kinematics.hpp"
#include "navbench/rng.hpp"

namespace navbench {

struct Circle {
  Eigen::Vector2d center{0.0, 0.0};
  double radius{0.0};
};

struct Segment {
  Eigen::Vector2d p1{0.0, 0.0};
  Eigen::Vector2d p2{0.0, 0.0};
};

// Declared narrow passage: crossing this segment counts as a traversal.
// Gates are markers only; they are invisible to sensing and collision.
struct Gate {
  std::string id;
  Segment seg;
};

struct Bounds {
  double xmin{0.0}, ymin{0.0}, xmax{0.0}, ymax{0.0};

  bool contains(const Eigen::Vector2d& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
};

// Immutable 2D environment. Bounds act as walls.
struct World {
  Bounds bounds{};
  std::vector<Circle> circles;
  std::vector<Segment> segments;
  Eigen::Vector2d goal{0.0, 0.0};
  double goal_radius{0.1};
  std::vector<Gate> gates;
};

struct SensorConfig {
  int n_beams{21};
  double fov{M_PI};        // rad, beams evenly spaced, centered on heading
  double max_range{10.0};  // m
  double noise_sigma{0.0}; // m
};

struct RangeScan {
  std::vector<double> ranges;       // [0, max_range] each
  std::vector<double> beam_angles;  // robot frame, rad
  double max_range{0.0};
};

enum class Status { running, reached, collided };

// Beam directions in the robot frame for a sensor config.
std::vector<double> beam_angles(const SensorConfig& cfg);

// Distance to the nearest obstacle or boundary along the ray, capped at
// max_range.
double raycast(const World& world, const Eigen::Vector2d& origin, double angle,
               double max_range);

// Per-beam raycast plus N(0, noise_sigma) noise, clamped to [0, max_range].
// With noise_sigma == 0 no random numbers are consumed.
RangeScan scan(const World& world, const RobotState& pose, const SensorConfig& cfg,
               Rng& rng);

// Signed distance from a point to the nearest obstacle surface or boundary
// wall (positive inside free space).
double obstacle_distance(const World& world, const Eigen::Vector2d& p);

// True when the body circle at `pose` touches an obstacle or the boundary.
bool body_collides(const World& world, const RobotState& pose, double radius);

// Free arc length along the constant-(v, w) path before the body circle hits
// anything, capped at s_max.  Sampled at arc step min(radius/2, 0.05 m); the
// returned value is the last collision-free sampled length.
double arc_clearance(const World& world, const RobotState& state, double v, double w,
                     const RobotParams& params, double s_max);

// collided if the body intersects an obstacle or exits bounds; reached if the
// position is within goal_radius of the goal; collided wins.
Status status(const World& world, const RobotState& pose, double radius);

// Adds independent Gaussian noise to v and omega (draw order: v then omega;
// a zero sigma draws nothing), then clamps to the params limits.
Control perturb_control(const Control& control, double sigma_v, double sigma_w,
                        Rng& rng, const RobotParams& params);

// Proper or touching intersection of two segments, for gate crossings.
bool segments_intersect(const Segment& a, const Segment& b);

}  // namespace navbench
