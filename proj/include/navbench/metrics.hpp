#pragma once

#include <optional>
#include <span>
#include <tuple>

#include "navbench/trajectory_log.hpp"

namespace navbench {

struct MetricsReport {
  bool success{false};
  std::optional<double> time_to_goal;  // s, present iff success
  double path_length{0.0};             // m
  long control_periods{0};
  double ise{0.0};
  double iae{0.0};
  double itae{0.0};
  double final_error{0.0};             // m
  double mean_error{0.0};              // m, RMS of cross-track error
  double evaluation{0.0};
  double avg_obstacle_distance{0.0};   // m
  double min_avg_obstacle_distance{0.0};
  double energy{0.0};                  // proxy units
  int passages{0};
};

enum class Eq7Mode { prose, literal };

struct EvalConfig {
  double ref_time{1.0};       // s, per-scenario time reference
  Eq7Mode mode{Eq7Mode::prose};
};

struct RunOutcome {
  Outcome outcome{Outcome::running};
  double time_to_goal{0.0};  // meaningful when outcome == reached
};

// Percentage of runs that reached the goal within time_limit.  A late reach
// counts as a failure.
double success_rate(std::span<const RunOutcome> outcomes, double time_limit);

// Distinct gate ids crossed.
int narrow_passage_count(const TrajectoryLog& log);

// Sum of distances between consecutive sampled positions.
double path_length(const TrajectoryLog& log);

// Timestamp of the reaching sample; absent unless the run reached the goal.
std::optional<double> time_to_goal(const TrajectoryLog& log);

// Planner decisions made over the run.
long control_periods(const TrajectoryLog& log);

// Minimum distance from a point to a polyline.
double cross_track_error(const Eigen::Vector2d& p,
                         std::span<const Eigen::Vector2d> polyline);

// Left rectangular sums of the cross-track error against the reference path:
//   ISE = sum e^2 T,  IAE = sum |e| T,  ITAE = sum t |e| T.
std::tuple<double, double, double> error_integrals(const TrajectoryLog& log);

// Distance from the last sampled position to the reference endpoint.
double final_error(const TrajectoryLog& log, const Eigen::Vector2d& endpoint);

// evaluation = (1 - error^2) * (0.1 - mean_error^2 / 0.1 + bonus), where the
// time bonus is (ref - time)/100 in prose mode and (time - ref)/100 when the
// literal printed sign is requested.
double evaluation_score(double final_error, double mean_error, double time,
                        const EvalConfig& cfg);

struct SafetyMetrics {
  double avg{0.0};      // mean over samples of the clearance signal
  double min_avg{0.0};  // mean over sensors of each sensor's mission minimum
};

SafetyMetrics safety_metrics(const TrajectoryLog& log);

// Control-effort surrogate: sum (c_v v^2 + c_w w^2) T over samples.
double energy_proxy(const TrajectoryLog& log, double c_v, double c_w);

// Full per-run report. The reference endpoint for final_error is `goal`;
// `time` in the evaluation is time_to_goal when reached, else run duration.
MetricsReport compute_report(const TrajectoryLog& log, const Eigen::Vector2d& goal,
                             const EvalConfig& eval, double c_v = 1.0, double c_w = 1.0);

}  // namespace navbench
