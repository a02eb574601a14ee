#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "navbench/kinematics.hpp"

namespace navbench {

enum class Outcome { running, reached, collided, timeout };

struct Sample {
  double t{0.0};
  RobotState state{};
  Control control{};          // command executed over the period ending at t
  double clearance{0.0};      // min noise-free beam reading at t, m
  std::vector<double> ranges; // measured (possibly noisy) scan at t
};

// Timestamped record of one run; the input every metric consumes.
// Timestamps advance by exactly sample_period.
struct TrajectoryLog {
  double sample_period{0.1};
  std::vector<Sample> samples;
  Outcome outcome{Outcome::running};
  long planner_decisions{0};
  std::vector<std::string> passages_crossed;    // distinct gate ids, crossing order
  std::vector<Eigen::Vector2d> reference_path;  // empty = no reference
};

}  // namespace navbench
