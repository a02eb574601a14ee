#include "navbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "navbench/errors.hpp"

namespace navbench {

double success_rate(std::span<const RunOutcome> outcomes, double time_limit) {
  if (outcomes.empty()) throw NoRuns("success rate over zero runs");
  long reached = 0;
  for (const RunOutcome& r : outcomes) {
    if (r.outcome == Outcome::reached && r.time_to_goal <= time_limit) ++reached;
  }
  return 100.0 * static_cast<double>(reached) / static_cast<double>(outcomes.size());
}

int narrow_passage_count(const TrajectoryLog& log) {
  const std::set<std::string> distinct(log.passages_crossed.begin(),
                                       log.passages_crossed.end());
  return static_cast<int>(distinct.size());
}

double path_length(const TrajectoryLog& log) {
  if (log.samples.empty()) throw EmptyLog("path length of an empty log");
  double total = 0.0;
  for (std::size_t i = 1; i < log.samples.size(); ++i) {
    total += (log.samples[i].state.position() - log.samples[i - 1].state.position()).norm();
  }
  return total;
}

std::optional<double> time_to_goal(const TrajectoryLog& log) {
  if (log.outcome != Outcome::reached || log.samples.empty()) return std::nullopt;
  return log.samples.back().t;  // the run stops at the first reaching sample
}

long control_periods(const TrajectoryLog& log) { return log.planner_decisions; }

double cross_track_error(const Eigen::Vector2d& p,
                         std::span<const Eigen::Vector2d> polyline) {
  if (polyline.empty()) throw NoReference("cross-track error without a reference path");
  if (polyline.size() == 1) return (p - polyline[0]).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Eigen::Vector2d& a = polyline[i - 1];
    const Eigen::Vector2d& b = polyline[i];
    const Eigen::Vector2d e = b - a;
    const double len_sq = e.squaredNorm();
    const double u = len_sq < 1e-30 ? 0.0 : std::clamp((p - a).dot(e) / len_sq, 0.0, 1.0);
    best = std::min(best, (p - (a + u * e)).norm());
  }
  return best;
}

std::tuple<double, double, double> error_integrals(const TrajectoryLog& log) {
  if (log.reference_path.empty()) throw NoReference("error integrals need a reference path");
  double ise = 0.0, iae = 0.0, itae = 0.0;
  const double T = log.sample_period;
  for (const Sample& s : log.samples) {
    const double e = cross_track_error(s.state.position(), log.reference_path);
    ise += e * e * T;
    iae += std::abs(e) * T;
    itae += s.t * std::abs(e) * T;
  }
  return {ise, iae, itae};
}

double final_error(const TrajectoryLog& log, const Eigen::Vector2d& endpoint) {
  if (log.samples.empty()) throw EmptyLog("final error of an empty log");
  return (log.samples.back().state.position() - endpoint).norm();
}

double evaluation_score(double final_error, double mean_error, double time,
                        const EvalConfig& cfg) {
  if (!(cfg.ref_time > 0.0)) throw InvalidParams("reference time must be > 0");
  const double bonus = cfg.mode == Eq7Mode::prose ? (cfg.ref_time - time) / 100.0
                                                  : (time - cfg.ref_time) / 100.0;
  return (1.0 - final_error * final_error) *
         (0.1 - mean_error * mean_error / 0.1 + bonus);
}

SafetyMetrics safety_metrics(const TrajectoryLog& log) {
  if (log.samples.empty() || log.samples.front().ranges.empty()) {
    throw NoSensorData("safety metrics need per-sensor readings");
  }
  const std::size_t n = log.samples.front().ranges.size();
  double clearance_sum = 0.0;
  std::vector<double> sensor_min(n, std::numeric_limits<double>::infinity());
  for (const Sample& s : log.samples) {
    if (s.ranges.size() != n) throw NoSensorData("inconsistent sensor count across samples");
    clearance_sum += s.clearance;
    for (std::size_t i = 0; i < n; ++i) sensor_min[i] = std::min(sensor_min[i], s.ranges[i]);
  }
  SafetyMetrics out;
  out.avg = clearance_sum / static_cast<double>(log.samples.size());
  double min_sum = 0.0;
  for (const double m : sensor_min) min_sum += m;
  out.min_avg = min_sum / static_cast<double>(n);
  return out;
}

double energy_proxy(const TrajectoryLog& log, double c_v, double c_w) {
  if (c_v < 0.0 || c_w < 0.0) throw InvalidParams("energy coefficients must be >= 0");
  double total = 0.0;
  for (const Sample& s : log.samples) {
    total += (c_v * s.control.v * s.control.v + c_w * s.control.omega * s.control.omega) *
             log.sample_period;
  }
  return total;
}

MetricsReport compute_report(const TrajectoryLog& log, const Eigen::Vector2d& goal,
                             const EvalConfig& eval, double c_v, double c_w) {
  if (log.samples.empty()) throw EmptyLog("report over an empty log");
  MetricsReport r;
  r.success = log.outcome == Outcome::reached;
  r.time_to_goal = time_to_goal(log);
  r.path_length = path_length(log);
  r.control_periods = control_periods(log);
  if (!log.reference_path.empty()) {
    std::tie(r.ise, r.iae, r.itae) = error_integrals(log);
  }
  const double covered =
      log.sample_period * static_cast<double>(log.samples.size());
  r.mean_error = covered > 0.0 ? std::sqrt(r.ise / covered) : 0.0;
  r.final_error = final_error(log, goal);
  const double elapsed = log.samples.back().t;
  r.evaluation =
      evaluation_score(r.final_error, r.mean_error, r.time_to_goal.value_or(elapsed), eval);
  if (!log.samples.front().ranges.empty()) {
    const SafetyMetrics s = safety_metrics(log);
    r.avg_obstacle_distance = s.avg;
    r.min_avg_obstacle_distance = s.min_avg;
  }
  r.energy = energy_proxy(log, c_v, c_w);
  r.passages = narrow_passage_count(log);
  return r;
}

}  // namespace navbench
