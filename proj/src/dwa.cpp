#include "navbench/dwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "navbench/errors.hpp"

namespace navbench {

VelocityBox possible_space(const RobotParams& params, bool allow_reverse) {
  check_params(params);
  return {allow_reverse ? -params.v_max : 0.0, params.v_max,
          -params.omega_max, params.omega_max};
}

VelocityBox dynamic_window(const Control& current, const RobotParams& params,
                           double period) {
  if (!(period > 0.0)) throw InvalidParams("dynamic_window requires period > 0");
  return {current.v - params.accel_v * period, current.v + params.accel_v * period,
          current.omega - params.accel_omega * period,
          current.omega + params.accel_omega * period};
}

std::optional<VelocityBox> intersect(const VelocityBox& a, const VelocityBox& b) {
  const VelocityBox r{std::max(a.v_min, b.v_min), std::min(a.v_max, b.v_max),
                      std::max(a.w_min, b.w_min), std::min(a.w_max, b.w_max)};
  if (r.v_min > r.v_max || r.w_min > r.w_max) return std::nullopt;
  return r;
}

bool admissible(double v, double w, double clearance_along, const RobotParams& params) {
  if (!(clearance_along >= 0.0)) throw InvalidParams("clearance_along must be >= 0");
  if (std::isinf(clearance_along)) return true;
  return std::abs(v) <= std::sqrt(2.0 * clearance_along * params.brake_v) &&
         std::abs(w) <= std::sqrt(2.0 * clearance_along * params.brake_omega);
}

std::vector<RobotState> rollout(const RobotState& state, double v, double w,
                                double horizon, double dt_rollout) {
  if (!(dt_rollout > 0.0)) throw InvalidParams("rollout requires dt_rollout > 0");
  const int n = static_cast<int>(std::llround(horizon / dt_rollout));
  std::vector<RobotState> poses;
  poses.reserve(static_cast<std::size_t>(std::max(n, 0)));
  RobotState pose = state;
  const Control u{v, w};
  for (int k = 0; k < n; ++k) {
    pose = step(pose, u, dt_rollout);
    poses.push_back(pose);
  }
  return poses;
}

double objective(const VelocityCandidate& cand, const DwaWeights& weights) {
  return weights.heading * cand.heading_term + weights.clearance * cand.clearance_term +
         weights.velocity * cand.velocity_term;
}

namespace {

void check_config(const DwaConfig& cfg) {
  if (cfg.n_v < 2 || cfg.n_w < 2) throw InvalidParams("grid needs >= 2 samples per axis");
  if (!(cfg.period > 0.0)) throw InvalidParams("control period must be > 0");
  if (!(cfg.dt_rollout > 0.0) || cfg.dt_rollout > cfg.horizon) {
    throw InvalidParams("rollout step must be in (0, horizon]");
  }
  if (!(cfg.clearance_cap > 0.0)) throw InvalidParams("clearance cap must be > 0");
}

std::vector<VelocityCandidate> build_candidates(const RobotState& state,
                                                const Control& current,
                                                const Eigen::Vector2d& goal,
                                                const World& world,
                                                const RobotParams& params,
                                                const DwaConfig& cfg) {
  check_config(cfg);
  check_params(params);
  const auto box = intersect(possible_space(params, cfg.allow_reverse),
                             dynamic_window(current, params, cfg.period));
  if (!box) throw EmptySearchSpace("possible and reachable velocity boxes are disjoint");

  std::vector<VelocityCandidate> out;
  out.reserve(static_cast<std::size_t>(cfg.n_v) * static_cast<std::size_t>(cfg.n_w));
  for (int i = 0; i < cfg.n_v; ++i) {
    const double v = box->v_min + (box->v_max - box->v_min) * static_cast<double>(i) /
                                      static_cast<double>(cfg.n_v - 1);
    for (int j = 0; j < cfg.n_w; ++j) {
      const double w = box->w_min + (box->w_max - box->w_min) * static_cast<double>(j) /
                                        static_cast<double>(cfg.n_w - 1);
      VelocityCandidate cand;
      cand.v = v;
      cand.w = w;
      const double along = arc_clearance(world, state, v, w, params, cfg.clearance_cap);
      cand.clearance = std::max(0.0, along - params.radius);
      cand.admissible = admissible(v, w, cand.clearance, params);

      const std::vector<RobotState> path = rollout(state, v, w, cfg.horizon, cfg.dt_rollout);
      const RobotState& end = path.empty() ? state : path.back();
      double heading_term = 1.0;
      if ((end.position() - goal).norm() >= 1e-9) {
        heading_term = 1.0 - std::abs(heading_error(end, goal)) / M_PI;
      }
      cand.heading_term = heading_term;
      cand.clearance_term = std::min(cand.clearance, cfg.clearance_cap) / cfg.clearance_cap;
      cand.velocity_term = v / params.v_max;
      out.push_back(cand);
    }
  }
  return out;
}

}  // namespace

std::vector<VelocityCandidate> search_space(const RobotState& state, const Control& current,
                                            const RobotParams& params, const DwaConfig& cfg,
                                            const World& world) {
  return build_candidates(state, current, world.goal, world, params, cfg);
}

Control plan(const RobotState& state, const Control& current, const Eigen::Vector2d& goal,
             const World& world, const RobotParams& params, const DwaConfig& cfg,
             const DwaWeights& weights) {
  std::vector<VelocityCandidate> candidates;
  try {
    candidates = build_candidates(state, current, goal, world, params, cfg);
  } catch (const EmptySearchSpace&) {
    return {0.0, 0.0};
  }
  bool found = false;
  VelocityCandidate best;
  for (VelocityCandidate& cand : candidates) {
    if (!cand.admissible) continue;
    cand.score = objective(cand, weights);
    const bool better =
        !found || cand.score > best.score ||
        (cand.score == best.score &&
         (std::abs(cand.w) < std::abs(best.w) ||
          (std::abs(cand.w) == std::abs(best.w) && cand.v < best.v)));
    if (better) {
      best = cand;
      found = true;
    }
  }
  if (!found) return {0.0, 0.0};
  return {best.v, best.w};
}

}  // namespace navbench
