#pragma once

#include <optional>
#include <vector>

#include "navbench/kinematics.hpp"
#include "navbench/world.hpp"

namespace navbench {

// Axis-aligned box in (v, w) space. Invariant: v_min <= v_max, w_min <= w_max.
// An empty intersection is signalled by std::nullopt, never by inverted bounds.
struct VelocityBox {
  double v_min{0.0}, v_max{0.0};
  double w_min{0.0}, w_max{0.0};
};

// Weights of the planning objective: alignment with the goal direction,
// distance to the nearest obstacle, and forward velocity.
struct DwaWeights {
  double heading{0.8};
  double clearance{0.1};
  double velocity{0.1};
};

struct DwaConfig {
  int n_v{11};                // grid samples per axis, >= 2
  int n_w{21};
  double period{0.1};         // s, control period (reachable-window horizon)
  double horizon{2.0};        // s, rollout length
  double dt_rollout{0.1};     // s, <= horizon
  double clearance_cap{10.0}; // m, clearance normalization cap (sensor reach)
  bool allow_reverse{false};
};

struct VelocityCandidate {
  double v{0.0};
  double w{0.0};
  double score{0.0};
  bool admissible{false};
  double clearance{0.0};      // m, along-arc free distance minus body radius
  double heading_term{0.0};   // all terms normalized to [0, 1]
  double clearance_term{0.0};
  double velocity_term{0.0};
};

// Velocities the drivetrain can hold: [v_min, v_max] x [-omega_max, omega_max],
// v_min = 0 unless reverse is allowed.
VelocityBox possible_space(const RobotParams& params, bool allow_reverse);

// Velocities reachable from `current` within one period under the
// acceleration limits.
VelocityBox dynamic_window(const Control& current, const RobotParams& params,
                           double period);

std::optional<VelocityBox> intersect(const VelocityBox& a, const VelocityBox& b);

// Braking admissibility: the pair can stop within `clearance_along` meters.
bool admissible(double v, double w, double clearance_along, const RobotParams& params);

// Poses at t = dt, 2 dt, ..., horizon under constant (v, w).
std::vector<RobotState> rollout(const RobotState& state, double v, double w,
                                double horizon, double dt_rollout);

// Uniform n_v x n_w grid over the intersection of the possible and reachable
// boxes, each sample rolled out and scored against world.goal.  Candidates are
// returned in grid order (v ascending, then w ascending).  Throws
// EmptySearchSpace when the intersection is empty.
std::vector<VelocityCandidate> search_space(const RobotState& state, const Control& current,
                                            const RobotParams& params, const DwaConfig& cfg,
                                            const World& world);

// Weighted sum of the normalized candidate terms.
double objective(const VelocityCandidate& cand, const DwaWeights& weights);

// Argmax of the objective over admissible candidates; ties broken by smaller
// |w|, then smaller v, then grid order.  Returns (0, 0) when no candidate is
// admissible or the search space is empty.
Control plan(const RobotState& state, const Control& current, const Eigen::Vector2d& goal,
             const World& world, const RobotParams& params, const DwaConfig& cfg,
             const DwaWeights& weights);

}  // namespace navbench
