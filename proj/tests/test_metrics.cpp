#include <doctest.h>

#include <cmath>
#include <vector>

#include "navbench/errors.hpp"
#include "navbench/metrics.hpp"
#include "navbench/rng.hpp"

using namespace navbench;

namespace {

Sample at(double t, double x, double y, double v = 0.0, double w = 0.0) {
  Sample s;
  s.t = t;
  s.state = {x, y, 0.0};
  s.control = {v, w};
  return s;
}

TrajectoryLog line_log(int n, double T) {
  TrajectoryLog log;
  log.sample_period = T;
  for (int k = 0; k < n; ++k) log.samples.push_back(at(k * T, k * T, 0.0));
  return log;
}

}  // namespace

TEST_CASE("success rate counts timely goal reaches only") {
  std::vector<RunOutcome> runs;
  for (int i = 0; i < 7; ++i) runs.push_back({Outcome::reached, 5.0});
  runs.push_back({Outcome::reached, 50.0});  // late
  runs.push_back({Outcome::collided, 0.0});
  runs.push_back({Outcome::timeout, 0.0});
  CHECK(success_rate(runs, 30.0) == 70.0);

  const std::vector<RunOutcome> all{{Outcome::reached, 1.0}, {Outcome::reached, 2.0}};
  CHECK(success_rate(all, 30.0) == 100.0);

  const std::vector<RunOutcome> none{{Outcome::collided, 0.0}};
  CHECK(success_rate(none, 30.0) == 0.0);

  // reaching exactly at the limit still counts
  const std::vector<RunOutcome> edge{{Outcome::reached, 30.0}};
  CHECK(success_rate(edge, 30.0) == 100.0);

  CHECK_THROWS_AS(success_rate({}, 30.0), NoRuns);
}

TEST_CASE("appending a failed run never raises the success rate") {
  Rng r(1234);
  std::vector<RunOutcome> runs;
  double prev = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double pick = r.uniform01();
    RunOutcome o;
    if (pick < 0.5) o = {Outcome::reached, r.uniform(0.0, 40.0)};
    else if (pick < 0.75) o = {Outcome::collided, 0.0};
    else o = {Outcome::timeout, 0.0};
    runs.push_back(o);
    const double rate = success_rate(runs, 30.0);
    const bool counted = o.outcome == Outcome::reached && o.time_to_goal <= 30.0;
    if (!counted) CHECK(rate <= prev + 1e-12);
    prev = rate;
  }
}

TEST_CASE("narrow passages are counted once per gate id") {
  TrajectoryLog log;
  CHECK(narrow_passage_count(log) == 0);
  log.passages_crossed = {"east"};
  CHECK(narrow_passage_count(log) == 1);
  log.passages_crossed = {"east", "mid", "east"};
  CHECK(narrow_passage_count(log) == 2);
}

TEST_CASE("path length sums consecutive displacements") {
  TrajectoryLog square;
  square.sample_period = 1.0;
  square.samples = {at(0, 0, 0), at(1, 1, 0), at(2, 1, 1), at(3, 0, 1), at(4, 0, 0)};
  CHECK(path_length(square) == 4.0);

  TrajectoryLog single;
  single.samples = {at(0, 2, 3)};
  CHECK(path_length(single) == 0.0);

  CHECK_THROWS_AS(path_length(TrajectoryLog{}), EmptyLog);
}

TEST_CASE("path length dominates the straight-line displacement") {
  Rng r(88);
  TrajectoryLog log;
  log.sample_period = 0.1;
  for (int k = 0; k < 50; ++k)
    log.samples.push_back(at(0.1 * k, r.uniform(-5, 5), r.uniform(-5, 5)));
  const double chord =
      (log.samples.back().state.position() - log.samples.front().state.position())
          .norm();
  CHECK(path_length(log) >= chord - 1e-12);
}

TEST_CASE("time to goal is the final timestamp of a reaching run") {
  TrajectoryLog log = line_log(11, 0.5);
  log.outcome = Outcome::reached;
  REQUIRE(time_to_goal(log).has_value());
  CHECK(*time_to_goal(log) == 5.0);

  log.outcome = Outcome::collided;
  CHECK_FALSE(time_to_goal(log).has_value());
  log.outcome = Outcome::timeout;
  CHECK_FALSE(time_to_goal(log).has_value());
}

TEST_CASE("control periods echo the planner decision count") {
  TrajectoryLog log;
  log.planner_decisions = 42;
  CHECK(control_periods(log) == 42);
}

TEST_CASE("cross-track error is the distance to the nearest polyline point") {
  const std::vector<Eigen::Vector2d> ref{{0.0, 0.0}, {10.0, 0.0}};
  CHECK(cross_track_error({5.0, 3.0}, ref) == 3.0);
  CHECK(cross_track_error({5.0, 0.0}, ref) == 0.0);
  CHECK(cross_track_error({12.0, 0.0}, ref) == 2.0);   // beyond the end
  CHECK(cross_track_error({-3.0, 4.0}, ref) == 5.0);   // before the start

  const std::vector<Eigen::Vector2d> bend{{0, 0}, {4, 0}, {4, 4}};
  CHECK(cross_track_error({5.0, 2.0}, bend) == 1.0);

  const std::vector<Eigen::Vector2d> point{{1.0, 1.0}};
  CHECK(cross_track_error({4.0, 5.0}, point) == 5.0);

  CHECK_THROWS_AS(cross_track_error({0, 0}, std::vector<Eigen::Vector2d>{}),
                  NoReference);
}

TEST_CASE("constant unit error integrates to the closed forms") {
  TrajectoryLog log;
  log.sample_period = 1.0;
  log.reference_path = {{0.0, 0.0}, {9.0, 0.0}};
  for (int k = 0; k < 10; ++k) log.samples.push_back(at(k, k, 1.0));
  const auto [ise, iae, itae] = error_integrals(log);
  CHECK(ise == 10.0);
  CHECK(iae == 10.0);
  CHECK(itae == 45.0);
}

TEST_CASE("zero error integrates to zero") {
  TrajectoryLog log = line_log(20, 0.25);
  log.reference_path = {{0.0, 0.0}, {10.0, 0.0}};
  const auto [ise, iae, itae] = error_integrals(log);
  CHECK(ise == 0.0);
  CHECK(iae == 0.0);
  CHECK(itae == 0.0);
}

TEST_CASE("a linearly growing error approaches the analytic integrals") {
  // e(t) = t on [0, 1): ISE -> 1/3, IAE -> 1/2, ITAE -> 1/3
  TrajectoryLog log;
  const double T = 1e-3;
  log.sample_period = T;
  log.reference_path = {{0.0, 0.0}, {1.0, 0.0}};
  for (int k = 0; k < 1000; ++k) {
    const double t = k * T;
    log.samples.push_back(at(t, t, t));
  }
  const auto [ise, iae, itae] = error_integrals(log);
  CHECK(std::abs(ise - 1.0 / 3.0) < 2e-3);
  CHECK(std::abs(iae - 0.5) < 2e-3);
  CHECK(std::abs(itae - 1.0 / 3.0) < 2e-3);
}

TEST_CASE("error integrals require a reference path") {
  TrajectoryLog log = line_log(5, 0.1);
  CHECK_THROWS_AS(error_integrals(log), NoReference);
}

TEST_CASE("final error is the distance from the last sample to the endpoint") {
  TrajectoryLog log;
  log.samples = {at(0, 0, 0), at(1, 3, 4)};
  CHECK(final_error(log, {0.0, 0.0}) == 5.0);
  CHECK(final_error(log, {3.0, 4.0}) == 0.0);
  CHECK_THROWS_AS(final_error(TrajectoryLog{}, {0, 0}), EmptyLog);
}

TEST_CASE("a perfect on-time run scores exactly one tenth") {
  const EvalConfig prose{10.0, Eq7Mode::prose};
  const EvalConfig literal{10.0, Eq7Mode::literal};
  CHECK(evaluation_score(0.0, 0.0, 10.0, prose) == 0.1);
  CHECK(evaluation_score(0.0, 0.0, 10.0, literal) == 0.1);
}

TEST_CASE("a unit final error zeroes the score in both modes") {
  const EvalConfig prose{10.0, Eq7Mode::prose};
  const EvalConfig literal{10.0, Eq7Mode::literal};
  CHECK(evaluation_score(1.0, 0.3, 25.0, prose) == 0.0);
  CHECK(evaluation_score(1.0, 0.3, 25.0, literal) == 0.0);
}

TEST_CASE("the two published time-bonus signs are both available") {
  // finishing 10 s late: the prose reading penalizes, the literal one rewards
  const EvalConfig prose{10.0, Eq7Mode::prose};
  const EvalConfig literal{10.0, Eq7Mode::literal};
  CHECK(evaluation_score(0.0, 0.0, 20.0, prose) == 0.0);
  CHECK(evaluation_score(0.0, 0.0, 20.0, literal) == 0.2);
  // finishing early mirrors the signs
  CHECK(evaluation_score(0.0, 0.0, 5.0, prose) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(evaluation_score(0.0, 0.0, 5.0, literal) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("evaluation rejects a non-positive reference time") {
  CHECK_THROWS_AS(evaluation_score(0.0, 0.0, 1.0, {0.0, Eq7Mode::prose}),
                  InvalidParams);
  CHECK_THROWS_AS(evaluation_score(0.0, 0.0, 1.0, {-3.0, Eq7Mode::prose}),
                  InvalidParams);
}

TEST_CASE("safety metrics average the clearance and the per-sensor minima") {
  TrajectoryLog log;
  log.sample_period = 0.1;
  Sample s0 = at(0.0, 0, 0);
  s0.clearance = 1.0;
  s0.ranges = {1.0, 5.0};
  Sample s1 = at(0.1, 0, 0);
  s1.clearance = 2.0;
  s1.ranges = {3.0, 2.0};
  Sample s2 = at(0.2, 0, 0);
  s2.clearance = 3.0;
  s2.ranges = {2.0, 9.0};
  log.samples = {s0, s1, s2};

  const SafetyMetrics m = safety_metrics(log);
  CHECK(m.avg == 2.0);
  CHECK(m.min_avg == 1.5);  // sensor minima 1.0 and 2.0
}

TEST_CASE("safety metrics demand consistent sensor data") {
  CHECK_THROWS_AS(safety_metrics(TrajectoryLog{}), NoSensorData);

  TrajectoryLog no_ranges = line_log(3, 0.1);
  CHECK_THROWS_AS(safety_metrics(no_ranges), NoSensorData);

  TrajectoryLog ragged;
  Sample a = at(0, 0, 0);
  a.ranges = {1.0, 2.0};
  Sample b = at(0.1, 0, 0);
  b.ranges = {1.0};
  ragged.samples = {a, b};
  CHECK_THROWS_AS(safety_metrics(ragged), NoSensorData);
}

TEST_CASE("the per-sensor minimum average never exceeds the plain average of ranges") {
  Rng r(2020);
  TrajectoryLog log;
  log.sample_period = 0.1;
  double range_sum = 0.0;
  for (int k = 0; k < 30; ++k) {
    Sample s = at(0.1 * k, 0, 0);
    for (int i = 0; i < 5; ++i) {
      s.ranges.push_back(r.uniform(0.0, 10.0));
      range_sum += s.ranges.back();
    }
    log.samples.push_back(s);
  }
  const SafetyMetrics m = safety_metrics(log);
  CHECK(m.min_avg <= range_sum / (30.0 * 5.0) + 1e-12);
}

TEST_CASE("energy proxy charges quadratically for both channels") {
  TrajectoryLog log;
  log.sample_period = 1.0;
  for (int k = 0; k < 10; ++k) log.samples.push_back(at(k, 0, 0, 1.0, 0.0));
  CHECK(energy_proxy(log, 1.0, 0.0) == 10.0);
  CHECK(energy_proxy(log, 2.0, 0.0) == 20.0);
  CHECK(energy_proxy(log, 0.0, 1.0) == 0.0);

  TrajectoryLog spin;
  spin.sample_period = 1.0;
  spin.samples = {at(0, 0, 0, 0.0, 2.0)};
  CHECK(energy_proxy(spin, 1.0, 0.5) == 2.0);

  TrajectoryLog still;
  still.sample_period = 1.0;
  still.samples = {at(0, 0, 0, 0.0, 0.0)};
  CHECK(energy_proxy(still, 1.0, 1.0) == 0.0);

  CHECK_THROWS_AS(energy_proxy(log, -1.0, 0.0), InvalidParams);
}

TEST_CASE("the aggregate report ties the individual metrics together") {
  TrajectoryLog log;
  log.sample_period = 0.5;
  log.outcome = Outcome::reached;
  log.planner_decisions = 4;
  log.reference_path = {{0.0, 0.0}, {2.0, 0.0}};
  log.passages_crossed = {"mid"};
  for (int k = 0; k < 5; ++k) {
    Sample s = at(0.5 * k, 0.5 * k, 0.0, 0.8, 0.1);
    s.clearance = 1.0 + 0.1 * k;
    s.ranges = {2.0, 3.0, 4.0};
    log.samples.push_back(s);
  }

  const EvalConfig eval{10.0, Eq7Mode::prose};
  const MetricsReport r = compute_report(log, {2.0, 0.0}, eval, 1.0, 0.5);

  CHECK(r.success);
  REQUIRE(r.time_to_goal.has_value());
  CHECK(*r.time_to_goal == 2.0);
  CHECK(r.path_length == path_length(log));
  CHECK(r.control_periods == 4);
  const auto [ise, iae, itae] = error_integrals(log);
  CHECK(r.ise == ise);
  CHECK(r.iae == iae);
  CHECK(r.itae == itae);
  CHECK(r.mean_error == std::sqrt(r.ise / (0.5 * 5.0)));
  CHECK(r.final_error == final_error(log, {2.0, 0.0}));
  CHECK(r.evaluation ==
        evaluation_score(r.final_error, r.mean_error, 2.0, eval));
  const SafetyMetrics s = safety_metrics(log);
  CHECK(r.avg_obstacle_distance == s.avg);
  CHECK(r.min_avg_obstacle_distance == s.min_avg);
  CHECK(r.energy == energy_proxy(log, 1.0, 0.5));
  CHECK(r.passages == 1);
}

TEST_CASE("without a reference the report zeroes the tracking terms") {
  TrajectoryLog log = line_log(5, 0.1);
  log.outcome = Outcome::timeout;
  const MetricsReport r = compute_report(log, {10.0, 0.0}, {10.0, Eq7Mode::prose});
  CHECK(r.ise == 0.0);
  CHECK(r.iae == 0.0);
  CHECK(r.itae == 0.0);
  CHECK(r.mean_error == 0.0);
  CHECK_FALSE(r.success);
  CHECK_FALSE(r.time_to_goal.has_value());
  // no sensor data: the safety fields stay zero
  CHECK(r.avg_obstacle_distance == 0.0);
  CHECK(r.min_avg_obstacle_distance == 0.0);
  // the evaluation falls back to the elapsed time for a non-reaching run
  CHECK(r.evaluation ==
        evaluation_score(r.final_error, 0.0, log.samples.back().t,
                         {10.0, Eq7Mode::prose}));
  CHECK_THROWS_AS(compute_report(TrajectoryLog{}, {0, 0}, {10.0, Eq7Mode::prose}),
                  EmptyLog);
}
