#include "navbench/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "navbench/rng.hpp"

namespace navbench {

using json = nlohmann::ordered_json;

namespace {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::reached: return "reached";
    case Outcome::collided: return "collided";
    case Outcome::timeout: return "timeout";
    case Outcome::running: return "running";
  }
  return "running";
}

Outcome outcome_from(const std::string& name) {
  if (name == "reached") return Outcome::reached;
  if (name == "collided") return Outcome::collided;
  if (name == "timeout") return Outcome::timeout;
  if (name == "running") return Outcome::running;
  throw ParseError("unknown outcome \"" + name + "\"");
}

// Shortest round-trip decimal form, identical to the JSON encoding, so the
// CSV and JSONL artifacts agree byte-for-byte on every number.
std::string fmt(double v) { return json(v).dump(); }

double min_true_clearance(const World& world, const RobotState& state,
                          const SensorConfig& sensor) {
  double best = sensor.max_range;
  for (const double beam : beam_angles(sensor)) {
    best = std::min(best,
                    raycast(world, state.position(), state.theta + beam, sensor.max_range));
  }
  return best;
}

}  // namespace

RunRecord run_scenario(const Scenario& scenario, const std::string& controller_id,
                       std::uint64_t seed, Eq7Mode eq7) {
  const std::vector<std::string> violations = validate(scenario);
  if (!violations.empty()) {
    std::string msg = "scenario invalid:";
    for (const std::string& v : violations) msg += " [" + v + "]";
    throw ValidationError(msg);
  }
  if (controller_id != "pid" && controller_id != "dwa" && controller_id != "wall") {
    throw UnknownController("unknown controller \"" + controller_id + "\"");
  }

  const World& world = scenario.world;
  const double T = control_period(scenario);
  Rng sensor_rng(split_seed(seed, 0));
  Rng actuation_rng(split_seed(seed, 1));

  const PidControllerConfig pid_cfg = scenario.pid.value_or(PidControllerConfig{});
  const DwaControllerConfig dwa_cfg = scenario.dwa.value_or(DwaControllerConfig{});
  const WallFollowConfig wall_cfg = scenario.wall.value_or(WallFollowConfig{});

  TrajectoryLog log;
  log.sample_period = T;
  log.reference_path = {scenario.start.position(), world.goal};

  RobotState state = scenario.start;
  Control executed{0.0, 0.0};  // command driving the period that ends at each sample
  PidState pid_state;
  WallFollowState wall_state;
  std::set<std::string> seen_gates;

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * T;
    const RangeScan measured = scan(world, state, scenario.sensor, sensor_rng);

    Sample sample;
    sample.t = t;
    sample.state = state;
    sample.control = executed;
    sample.clearance = min_true_clearance(world, state, scenario.sensor);
    sample.ranges = measured.ranges;
    log.samples.push_back(std::move(sample));

    const Status st = status(world, state, scenario.params.radius);
    if (st == Status::collided) {
      log.outcome = Outcome::collided;
      break;
    }
    if (st == Status::reached) {
      log.outcome = Outcome::reached;
      break;
    }
    if (t >= scenario.time_limit) {
      log.outcome = Outcome::timeout;
      break;
    }

    Control command{0.0, 0.0};
    if (controller_id == "pid") {
      const HeadingCommand hc = heading_controller(pid_cfg.gains, pid_state, state,
                                                   world.goal, pid_cfg.v0, T,
                                                   scenario.params);
      pid_state = hc.state;
      command = hc.control;
    } else if (controller_id == "dwa") {
      command = plan(state, executed, world.goal, world, scenario.params, dwa_cfg.cfg,
                     dwa_cfg.weights);
    } else {
      const WallFollowCommand wc = wall_follow_step(wall_cfg, wall_state, measured, T);
      wall_state = wc.state;
      command = wc.control;
    }
    ++log.planner_decisions;

    executed = perturb_control(command, scenario.noise_sigma_v, scenario.noise_sigma_w,
                               actuation_rng, scenario.params);
    const RobotState next = step(state, executed, T);

    const Segment travel{state.position(), next.position()};
    for (const Gate& gate : world.gates) {
      if (!seen_gates.count(gate.id) && segments_intersect(travel, gate.seg)) {
        seen_gates.insert(gate.id);
        log.passages_crossed.push_back(gate.id);
      }
    }
    state = next;
  }

  RunRecord rec;
  rec.scenario_id = scenario.name;
  rec.controller_id = controller_id;
  rec.seed = seed;
  rec.log = std::move(log);
  rec.report = compute_report(rec.log, world.goal, EvalConfig{scenario.ref_time, eq7},
                              scenario.energy_c_v, scenario.energy_c_w);
  return rec;
}

std::string csv_row(const RunRecord& rec) {
  const MetricsReport& r = rec.report;
  std::ostringstream row;
  row << rec.scenario_id << ',' << rec.controller_id << ',' << rec.seed << ','
      << (r.success ? 1 : 0) << ','
      << (r.time_to_goal ? fmt(*r.time_to_goal) : std::string{}) << ','
      << fmt(r.path_length) << ',' << r.control_periods << ',' << fmt(r.ise) << ','
      << fmt(r.iae) << ',' << fmt(r.itae) << ',' << fmt(r.final_error) << ','
      << fmt(r.mean_error) << ',' << fmt(r.evaluation) << ','
      << fmt(r.avg_obstacle_distance) << ',' << fmt(r.min_avg_obstacle_distance) << ','
      << fmt(r.energy) << ',' << r.passages;
  return row.str();
}

namespace {

json world_to_json(const World& w) {
  json out;
  out["bounds"] = {w.bounds.xmin, w.bounds.ymin, w.bounds.xmax, w.bounds.ymax};
  json circles = json::array();
  for (const Circle& c : w.circles) {
    circles.push_back({{"center", {c.center.x(), c.center.y()}}, {"radius", c.radius}});
  }
  out["circles"] = circles;
  json segments = json::array();
  for (const Segment& s : w.segments) {
    segments.push_back({{"p1", {s.p1.x(), s.p1.y()}}, {"p2", {s.p2.x(), s.p2.y()}}});
  }
  out["segments"] = segments;
  json gates = json::array();
  for (const Gate& g : w.gates) {
    gates.push_back({{"id", g.id},
                     {"p1", {g.seg.p1.x(), g.seg.p1.y()}},
                     {"p2", {g.seg.p2.x(), g.seg.p2.y()}}});
  }
  out["gates"] = gates;
  out["goal"] = {w.goal.x(), w.goal.y()};
  out["goal_radius"] = w.goal_radius;
  return out;
}

World world_from_json(const json& j) {
  World w;
  const json& b = j.at("bounds");
  w.bounds = {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
              b.at(3).get<double>()};
  for (const json& c : j.at("circles")) {
    w.circles.push_back({{c.at("center").at(0).get<double>(),
                          c.at("center").at(1).get<double>()},
                         c.at("radius").get<double>()});
  }
  for (const json& s : j.at("segments")) {
    w.segments.push_back({{s.at("p1").at(0).get<double>(), s.at("p1").at(1).get<double>()},
                          {s.at("p2").at(0).get<double>(), s.at("p2").at(1).get<double>()}});
  }
  for (const json& g : j.at("gates")) {
    Gate gate;
    gate.id = g.at("id").get<std::string>();
    gate.seg = {{g.at("p1").at(0).get<double>(), g.at("p1").at(1).get<double>()},
                {g.at("p2").at(0).get<double>(), g.at("p2").at(1).get<double>()}};
    w.gates.push_back(gate);
  }
  w.goal = {j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
  w.goal_radius = j.at("goal_radius").get<double>();
  return w;
}

}  // namespace

std::string log_to_jsonl(const Scenario& scenario, const RunRecord& rec, Eq7Mode eq7) {
  std::string out;

  json header;
  header["schema"] = 1;
  header["scenario"] = rec.scenario_id;
  header["controller"] = rec.controller_id;
  header["seed"] = rec.seed;
  header["sample_period"] = rec.log.sample_period;
  header["time_limit"] = scenario.time_limit;
  header["ref_time"] = scenario.ref_time;
  header["eq7"] = eq7 == Eq7Mode::prose ? "prose" : "literal";
  header["energy_c_v"] = scenario.energy_c_v;
  header["energy_c_w"] = scenario.energy_c_w;
  header["world"] = world_to_json(scenario.world);
  json ref = json::array();
  for (const Eigen::Vector2d& p : rec.log.reference_path) ref.push_back({p.x(), p.y()});
  header["reference_path"] = ref;
  out += header.dump();
  out += '\n';

  for (const Sample& s : rec.log.samples) {
    json line;
    line["t"] = s.t;
    line["x"] = s.state.x;
    line["y"] = s.state.y;
    line["theta"] = s.state.theta;
    line["v"] = s.control.v;
    line["omega"] = s.control.omega;
    line["clearance"] = s.clearance;
    line["ranges"] = s.ranges;
    out += line.dump();
    out += '\n';
  }

  json trailer;
  trailer["outcome"] = outcome_name(rec.log.outcome);
  trailer["planner_decisions"] = rec.log.planner_decisions;
  trailer["passages_crossed"] = rec.log.passages_crossed;
  out += trailer.dump();
  out += '\n';
  return out;
}

PersistedRun parse_jsonl(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() < 3) throw ParseError("log needs a header, samples, and a trailer");

  try {
    const json header = json::parse(lines.front());
    if (header.at("schema").get<int>() != 1) {
      throw ParseError("unsupported log schema version");
    }
    PersistedRun run;
    run.scenario_id = header.at("scenario").get<std::string>();
    run.controller_id = header.at("controller").get<std::string>();
    run.seed = header.at("seed").get<std::uint64_t>();
    run.time_limit = header.at("time_limit").get<double>();
    run.eval.ref_time = header.at("ref_time").get<double>();
    run.eval.mode =
        header.at("eq7").get<std::string>() == "literal" ? Eq7Mode::literal : Eq7Mode::prose;
    run.energy_c_v = header.at("energy_c_v").get<double>();
    run.energy_c_w = header.at("energy_c_w").get<double>();
    run.world = world_from_json(header.at("world"));
    run.log.sample_period = header.at("sample_period").get<double>();
    for (const json& p : header.at("reference_path")) {
      run.log.reference_path.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }

    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
      const json line = json::parse(lines[i]);
      Sample s;
      s.t = line.at("t").get<double>();
      s.state = {line.at("x").get<double>(), line.at("y").get<double>(),
                 line.at("theta").get<double>()};
      s.control = {line.at("v").get<double>(), line.at("omega").get<double>()};
      s.clearance = line.at("clearance").get<double>();
      s.ranges = line.at("ranges").get<std::vector<double>>();
      run.log.samples.push_back(std::move(s));
    }

    const json trailer = json::parse(lines.back());
    run.log.outcome = outcome_from(trailer.at("outcome").get<std::string>());
    run.log.planner_decisions = trailer.at("planner_decisions").get<long>();
    run.log.passages_crossed =
        trailer.at("passages_crossed").get<std::vector<std::string>>();
    return run;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed log: ") + e.what());
  }
}

PersistedRun read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open log file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_jsonl(text.str());
}

MetricsReport recompute_report(const PersistedRun& run) {
  return compute_report(run.log, run.world.goal, run.eval, run.energy_c_v,
                        run.energy_c_w);
}

BatchResult batch(const std::vector<Scenario>& scenarios,
                  const std::vector<std::string>& controllers,
                  const std::vector<std::uint64_t>& seeds) {
  if (scenarios.empty()) throw NoRuns("batch needs at least one scenario");
  if (controllers.empty()) throw NoRuns("batch needs at least one controller");
  if (seeds.empty()) throw NoRuns("batch needs at least one seed");

  std::vector<const Scenario*> ordered_scenarios;
  ordered_scenarios.reserve(scenarios.size());
  for (const Scenario& s : scenarios) ordered_scenarios.push_back(&s);
  std::sort(ordered_scenarios.begin(), ordered_scenarios.end(),
            [](const Scenario* a, const Scenario* b) { return a->name < b->name; });
  std::vector<std::string> ordered_controllers = controllers;
  std::sort(ordered_controllers.begin(), ordered_controllers.end());
  std::vector<std::uint64_t> ordered_seeds = seeds;
  std::sort(ordered_seeds.begin(), ordered_seeds.end());

  BatchResult result;
  result.report_csv = std::string(kCsvHeader) + '\n';
  for (const Scenario* s : ordered_scenarios) {
    for (const std::string& c : ordered_controllers) {
      for (const std::uint64_t seed : ordered_seeds) {
        RunRecord rec = run_scenario(*s, c, seed);
        result.report_csv += csv_row(rec);
        result.report_csv += '\n';
        result.records.push_back(std::move(rec));
      }
    }
  }

  result.summary_csv = "controller,runs,success_rate\n";
  for (const std::string& c : ordered_controllers) {
    long runs = 0, successes = 0;
    for (const RunRecord& rec : result.records) {
      if (rec.controller_id != c) continue;
      ++runs;
      if (rec.report.success) ++successes;
    }
    const double rate = 100.0 * static_cast<double>(successes) / static_cast<double>(runs);
    result.summary_csv += c + ',' + std::to_string(runs) + ',' + fmt(rate) + '\n';
  }
  return result;
}

}  // namespace navbench
