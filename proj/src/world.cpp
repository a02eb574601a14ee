#include "navbench/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace navbench {

std::vector<double> beam_angles(const SensorConfig& cfg) {
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(cfg.n_beams));
  if (cfg.n_beams == 1) {
    angles.push_back(0.0);
    return angles;
  }
  const double step = cfg.fov / static_cast<double>(cfg.n_beams - 1);
  for (int i = 0; i < cfg.n_beams; ++i) {
    angles.push_back(-0.5 * cfg.fov + step * static_cast<double>(i));
  }
  return angles;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest t >= 0 with |o + t d - c| = r, or +inf.
double ray_circle(const Eigen::Vector2d& o, const Eigen::Vector2d& d, const Circle& c) {
  const Eigen::Vector2d oc = c.center - o;
  const double b = d.dot(oc);
  const double disc = b * b - (oc.squaredNorm() - c.radius * c.radius);
  if (disc < 0.0) return kInf;
  const double root = std::sqrt(disc);
  const double t_near = b - root;
  if (t_near >= 0.0) return t_near;
  const double t_far = b + root;
  return t_far >= 0.0 ? t_far : kInf;
}

// Smallest t >= 0 where the ray crosses the segment, or +inf.
double ray_segment(const Eigen::Vector2d& o, const Eigen::Vector2d& d, const Segment& s) {
  const Eigen::Vector2d e = s.p2 - s.p1;
  const double denom = d.x() * e.y() - d.y() * e.x();
  if (std::abs(denom) < 1e-15) return kInf;  // parallel
  const Eigen::Vector2d w = s.p1 - o;
  const double t = (w.x() * e.y() - w.y() * e.x()) / denom;
  const double u = (w.x() * d.y() - w.y() * d.x()) / denom;
  if (t >= 0.0 && u >= 0.0 && u <= 1.0) return t;
  return kInf;
}

std::array<Segment, 4> boundary_walls(const Bounds& b) {
  const Eigen::Vector2d a{b.xmin, b.ymin}, c{b.xmax, b.ymin};
  const Eigen::Vector2d d{b.xmax, b.ymax}, e{b.xmin, b.ymax};
  return {Segment{a, c}, Segment{c, d}, Segment{d, e}, Segment{e, a}};
}

double point_segment_distance(const Eigen::Vector2d& p, const Segment& s) {
  const Eigen::Vector2d e = s.p2 - s.p1;
  const double len_sq = e.squaredNorm();
  if (len_sq < 1e-30) return (p - s.p1).norm();
  const double u = std::clamp((p - s.p1).dot(e) / len_sq, 0.0, 1.0);
  return (p - (s.p1 + u * e)).norm();
}

}  // namespace

double raycast(const World& world, const Eigen::Vector2d& origin, double angle,
               double max_range) {
  if (!world.bounds.contains(origin)) {
    throw OutOfBounds("raycast origin outside world bounds");
  }
  const Eigen::Vector2d dir{std::cos(angle), std::sin(angle)};
  double best = max_range;
  for (const auto& c : world.circles) best = std::min(best, ray_circle(origin, dir, c));
  for (const auto& s : world.segments) best = std::min(best, ray_segment(origin, dir, s));
  for (const auto& wall : boundary_walls(world.bounds)) {
    best = std::min(best, ray_segment(origin, dir, wall));
  }
  return std::clamp(best, 0.0, max_range);
}

RangeScan scan(const World& world, const RobotState& pose, const SensorConfig& cfg,
               Rng& rng) {
  RangeScan out;
  out.beam_angles = beam_angles(cfg);
  out.max_range = cfg.max_range;
  out.ranges.reserve(out.beam_angles.size());
  for (const double beam : out.beam_angles) {
    double r = raycast(world, pose.position(), pose.theta + beam, cfg.max_range);
    if (cfg.noise_sigma > 0.0) {
      r = std::clamp(r + rng.gaussian(cfg.noise_sigma), 0.0, cfg.max_range);
    }
    out.ranges.push_back(r);
  }
  return out;
}

double obstacle_distance(const World& world, const Eigen::Vector2d& p) {
  double best = kInf;
  for (const auto& c : world.circles) {
    best = std::min(best, (p - c.center).norm() - c.radius);
  }
  for (const auto& s : world.segments) {
    best = std::min(best, point_segment_distance(p, s));
  }
  const Bounds& b = world.bounds;
  best = std::min({best, p.x() - b.xmin, b.xmax - p.x(), p.y() - b.ymin, b.ymax - p.y()});
  return best;
}

bool body_collides(const World& world, const RobotState& pose, double radius) {
  return obstacle_distance(world, pose.position()) <= radius;
}

double arc_clearance(const World& world, const RobotState& state, double v, double w,
                     const RobotParams& params, double s_max) {
  if (!(s_max > 0.0)) throw InvalidParams("arc_clearance requires s_max > 0");
  if (body_collides(world, state, params.radius)) return 0.0;
  if (std::abs(v) < 1e-12) return s_max;  // no translation along the path
  const double step_len = std::min(params.radius / 2.0, 0.05);
  const double dt = step_len / std::abs(v);
  const Control u{v, w};
  // one sample past s_max keeps the estimate monotone in s_max
  for (int k = 1; static_cast<double>(k) * step_len <= s_max + step_len; ++k) {
    const RobotState pose = step(state, u, static_cast<double>(k) * dt);
    if (body_collides(world, pose, params.radius)) {
      return std::min(static_cast<double>(k - 1) * step_len, s_max);
    }
  }
  return s_max;
}

Status status(const World& world, const RobotState& pose, double radius) {
  if (body_collides(world, pose, radius)) return Status::collided;
  if ((pose.position() - world.goal).norm() <= world.goal_radius) return Status::reached;
  return Status::running;
}

Control perturb_control(const Control& control, double sigma_v, double sigma_w,
                        Rng& rng, const RobotParams& params) {
  Control out = control;
  if (sigma_v > 0.0) out.v += rng.gaussian(sigma_v);
  if (sigma_w > 0.0) out.omega += rng.gaussian(sigma_w);
  if (sigma_v > 0.0 || sigma_w > 0.0) out = clamp_control(out, params);
  return out;
}

bool segments_intersect(const Segment& a, const Segment& b) {
  const auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                         const Eigen::Vector2d& r) {
    const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  const auto on_segment = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                             const Eigen::Vector2d& r) {
    return std::min(p.x(), r.x()) <= q.x() && q.x() <= std::max(p.x(), r.x()) &&
           std::min(p.y(), r.y()) <= q.y() && q.y() <= std::max(p.y(), r.y());
  };
  const int o1 = orient(a.p1, a.p2, b.p1);
  const int o2 = orient(a.p1, a.p2, b.p2);
  const int o3 = orient(b.p1, b.p2, a.p1);
  const int o4 = orient(b.p1, b.p2, a.p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a.p1, b.p1, a.p2)) return true;
  if (o2 == 0 && on_segment(a.p1, b.p2, a.p2)) return true;
  if (o3 == 0 && on_segment(b.p1, a.p1, b.p2)) return true;
  if (o4 == 0 && on_segment(b.p1, a.p2, b.p2)) return true;
  return false;
}

}  // namespace navbench
