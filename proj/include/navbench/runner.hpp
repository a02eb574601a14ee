#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "navbench/metrics.hpp"
#include "navbench/scenario.hpp"
#include "navbench/trajectory_log.hpp"

namespace navbench {

struct RunRecord {
  std::string scenario_id;
  std::string controller_id;  // pid | dwa | wall
  std::uint64_t seed{0};
  TrajectoryLog log;
  MetricsReport report;
};

// Fixed-period closed loop: scan -> controller -> actuation noise -> step,
// one logged sample and one planner decision per period.  Terminates on
// reached, collided, or the time limit.  The same (scenario, controller,
// seed) triple always reproduces the identical record.
RunRecord run_scenario(const Scenario& scenario, const std::string& controller_id,
                       std::uint64_t seed, Eq7Mode eq7 = Eq7Mode::prose);

inline constexpr const char* kCsvHeader =
    "scenario,controller,seed,success,time_to_goal,path_length,control_periods,"
    "ise,iae,itae,final_error,mean_error,evaluation,avg_obstacle_distance,"
    "min_avg_obstacle_distance,energy,passages";

std::string csv_row(const RunRecord& rec);

// Self-contained JSONL serialization: a header object, one object per sample
// (fields t, x, y, theta, v, omega, clearance, ranges), and a trailer with
// the outcome.  Identical records serialize to identical bytes.
std::string log_to_jsonl(const Scenario& scenario, const RunRecord& rec, Eq7Mode eq7);

// Parsed form of a persisted log: everything needed to recompute the metrics
// report and to render the run.
struct PersistedRun {
  std::string scenario_id;
  std::string controller_id;
  std::uint64_t seed{0};
  World world{};
  double time_limit{0.0};
  EvalConfig eval{};
  double energy_c_v{1.0};
  double energy_c_w{1.0};
  TrajectoryLog log;
};

PersistedRun parse_jsonl(const std::string& text);
PersistedRun read_jsonl(const std::string& path);

MetricsReport recompute_report(const PersistedRun& run);

struct BatchResult {
  std::vector<RunRecord> records;       // lexicographic (scenario, controller, seed)
  std::string report_csv;               // header + one row per record
  std::string summary_csv;              // controller,runs,success_rate
};

// Cross product scenarios x controllers x seeds, reduced to CSV tables.
// Throws NoRuns when any axis is empty.
BatchResult batch(const std::vector<Scenario>& scenarios,
                  const std::vector<std::string>& controllers,
                  const std::vector<std::uint64_t>& seeds);

}  // namespace navbench
