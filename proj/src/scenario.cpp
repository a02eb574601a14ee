#include "navbench/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace navbench {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string(key) + ": expected a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string(key) + ": expected an integer");
  return v.get<int>();
}

bool flag(const json& j, const char* key, bool dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ParseError(std::string(key) + ": expected a boolean");
  return v.get<bool>();
}

Eigen::Vector2d vec2(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(std::string(what) + ": expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

World parse_world(const json& j) {
  World w;
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_array() || b.size() != 4) {
      throw ParseError("bounds: expected [xmin, ymin, xmax, ymax]");
    }
    w.bounds = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                b[3].get<double>()};
  } else {
    w.bounds = {kNaN, kNaN, kNaN, kNaN};
  }
  for (const json& c : j.value("circles", json::array())) {
    w.circles.push_back({vec2(c.at("center"), "circle center"), num(c, "radius", kNaN)});
  }
  for (const json& s : j.value("segments", json::array())) {
    w.segments.push_back({vec2(s.at("p1"), "segment p1"), vec2(s.at("p2"), "segment p2")});
  }
  for (const json& g : j.value("gates", json::array())) {
    Gate gate;
    gate.id = g.value("id", std::string{});
    gate.seg = {vec2(g.at("p1"), "gate p1"), vec2(g.at("p2"), "gate p2")};
    w.gates.push_back(gate);
  }
  w.goal = j.contains("goal") ? vec2(j.at("goal"), "goal")
                              : Eigen::Vector2d{kNaN, kNaN};
  w.goal_radius = num(j, "goal_radius", 0.1);
  return w;
}

PidGains parse_gains(const json& j, double output_limit) {
  PidGains g;
  g.kp = num(j, "kp", 0.0);
  g.ki = num(j, "ki", 0.0);
  g.kd = num(j, "kd", 0.0);
  g.i_clamp = j.contains("i_clamp") ? num(j, "i_clamp", 0.0)
                                    : default_integral_clamp(output_limit, g.ki);
  return g;
}

void parse_controllers(const json& ctrl, Scenario& s) {
  const auto parse_one = [&s](const std::string& type, const json& cfg) {
    if (type == "pid") {
      PidControllerConfig c;
      c.gains = parse_gains(cfg, s.params.omega_max);
      c.v0 = num(cfg, "v0", 0.5);
      s.pid = c;
    } else if (type == "dwa") {
      DwaControllerConfig c;
      const json& w = cfg.contains("weights") ? cfg.at("weights") : cfg;
      c.weights.heading = num(w, "heading", 0.8);
      c.weights.clearance = num(w, "clearance", 0.1);
      c.weights.velocity = num(w, "velocity", 0.1);
      c.cfg.n_v = integer(cfg, "n_v", 11);
      c.cfg.n_w = integer(cfg, "n_w", 21);
      c.cfg.period = num(cfg, "period", 0.1);
      c.cfg.horizon = num(cfg, "horizon", 2.0);
      c.cfg.dt_rollout = num(cfg, "dt_rollout", 0.1);
      c.cfg.clearance_cap = num(cfg, "clearance_cap", 10.0);
      c.cfg.allow_reverse = flag(cfg, "allow_reverse", false);
      s.dwa = c;
    } else if (type == "wall") {
      WallFollowConfig c;
      const std::string side = cfg.value("side", "right");
      if (side == "left") {
        c.side = WallSide::left;
      } else if (side == "right") {
        c.side = WallSide::right;
      } else {
        throw ParseError("controller.wall.side: expected \"left\" or \"right\"");
      }
      const WallFollowConfig d{};
      c.desired_distance = num(cfg, "desired_distance", d.desired_distance);
      c.v0 = num(cfg, "v0", d.v0);
      c.front_threshold = num(cfg, "front_threshold", d.front_threshold);
      c.lost_threshold = num(cfg, "lost_threshold", d.lost_threshold);
      c.omega_search = num(cfg, "omega_search", d.omega_search);
      c.omega_max = num(cfg, "omega_max", d.omega_max);
      c.turn_gains.kp = num(cfg, "kp", d.turn_gains.kp);
      c.turn_gains.ki = num(cfg, "ki", d.turn_gains.ki);
      c.turn_gains.kd = num(cfg, "kd", d.turn_gains.kd);
      c.turn_gains.i_clamp = cfg.contains("i_clamp")
                                 ? num(cfg, "i_clamp", 0.0)
                                 : default_integral_clamp(c.omega_max, c.turn_gains.ki);
      s.wall = c;
    } else {
      throw ParseError("controller: unknown type \"" + type + "\"");
    }
  };

  if (ctrl.contains("type")) {  // tagged single-controller form
    parse_one(ctrl.at("type").get<std::string>(), ctrl);
    return;
  }
  for (const auto& [key, value] : ctrl.items()) parse_one(key, value);
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& default_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.value("name", default_name);
    s.world = j.contains("world") ? parse_world(j.at("world"))
                                  : parse_world(json::object());

    if (j.contains("sensor")) {
      const json& sj = j.at("sensor");
      s.sensor.n_beams = integer(sj, "n_beams", 21);
      s.sensor.fov = num(sj, "fov", M_PI);
      s.sensor.max_range = num(sj, "max_range", 10.0);
      s.sensor.noise_sigma = num(sj, "noise_sigma", 0.0);
    }

    if (j.contains("start")) {
      const json& st = j.at("start");
      if (!st.is_array() || st.size() != 3) {
        throw ParseError("start: expected [x, y, theta]");
      }
      s.start = {st[0].get<double>(), st[1].get<double>(), st[2].get<double>()};
    }

    if (j.contains("params")) {
      const json& p = j.at("params");
      const RobotParams d{};
      s.params.v_max = num(p, "v_max", d.v_max);
      s.params.omega_max = num(p, "omega_max", d.omega_max);
      s.params.accel_v = num(p, "accel_v", d.accel_v);
      s.params.accel_omega = num(p, "accel_omega", d.accel_omega);
      s.params.brake_v = num(p, "brake_v", d.brake_v);
      s.params.brake_omega = num(p, "brake_omega", d.brake_omega);
      s.params.radius = num(p, "radius", d.radius);
      s.params.wheel_base = num(p, "wheel_base", d.wheel_base);
    }

    s.time_limit = num(j, "time_limit", 30.0);
    s.ref_time = num(j, "ref_time", 10.0);

    if (j.contains("noise")) {
      const json& n = j.at("noise");
      s.noise_sigma_v = num(n, "sigma_v", 0.0);
      s.noise_sigma_w = num(n, "sigma_w", 0.0);
    }
    if (j.contains("energy")) {
      const json& e = j.at("energy");
      s.energy_c_v = num(e, "c_v", 1.0);
      s.energy_c_w = num(e, "c_w", 1.0);
    }

    if (j.contains("controller")) parse_controllers(j.at("controller"), s);
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario field: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  std::string name = path;
  const std::size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const std::size_t dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_scenario(text.str(), name);
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> out;
  const auto bad = [&out](const std::string& msg) { out.push_back(msg); };

  const Bounds& b = s.world.bounds;
  const bool bounds_ok = std::isfinite(b.xmin) && std::isfinite(b.ymin) &&
                         std::isfinite(b.xmax) && std::isfinite(b.ymax);
  if (!bounds_ok) {
    bad("bounds: required");
  } else if (b.xmin >= b.xmax || b.ymin >= b.ymax) {
    bad("bounds: min corner must be strictly below max corner");
  }

  const bool goal_ok = s.world.goal.allFinite();
  if (!goal_ok) bad("goal: required");
  if (!(s.world.goal_radius > 0.0)) bad("goal_radius: must be positive");
  if (goal_ok && bounds_ok && !b.contains(s.world.goal)) {
    bad("goal: must lie inside bounds");
  }

  for (std::size_t i = 0; i < s.world.circles.size(); ++i) {
    if (!(s.world.circles[i].radius > 0.0)) {
      bad("circles[" + std::to_string(i) + "].radius: must be positive");
    }
  }
  for (std::size_t i = 0; i < s.world.gates.size(); ++i) {
    if (s.world.gates[i].id.empty()) {
      bad("gates[" + std::to_string(i) + "].id: required");
    }
  }

  const auto positive = [&bad](double v, const char* field) {
    if (!(v > 0.0)) bad(std::string(field) + ": must be positive");
  };
  positive(s.params.v_max, "params.v_max");
  positive(s.params.omega_max, "params.omega_max");
  positive(s.params.accel_v, "params.accel_v");
  positive(s.params.accel_omega, "params.accel_omega");
  positive(s.params.brake_v, "params.brake_v");
  positive(s.params.brake_omega, "params.brake_omega");
  positive(s.params.radius, "params.radius");
  positive(s.params.wheel_base, "params.wheel_base");

  if (s.sensor.n_beams < 1) bad("sensor.n_beams: must be >= 1");
  positive(s.sensor.fov, "sensor.fov");
  positive(s.sensor.max_range, "sensor.max_range");
  if (s.sensor.noise_sigma < 0.0) bad("sensor.noise_sigma: must be >= 0");

  positive(s.time_limit, "time_limit");
  positive(s.ref_time, "ref_time");
  if (s.noise_sigma_v < 0.0) bad("noise.sigma_v: must be >= 0");
  if (s.noise_sigma_w < 0.0) bad("noise.sigma_w: must be >= 0");
  if (s.energy_c_v < 0.0) bad("energy.c_v: must be >= 0");
  if (s.energy_c_w < 0.0) bad("energy.c_w: must be >= 0");

  if (bounds_ok && s.params.radius > 0.0) {
    if (!b.contains(s.start.position())) {
      bad("start: must lie inside bounds");
    } else if (obstacle_distance(s.world, s.start.position()) <= s.params.radius) {
      bad("start: collides with an obstacle");
    }
  }

  if (!s.pid && !s.dwa && !s.wall) {
    bad("controller: at least one controller must be configured");
  }
  if (s.pid && s.params.v_max > 0.0 && s.pid->v0 > s.params.v_max) {
    bad("controller.pid.v0: must not exceed params.v_max");
  }
  if (s.dwa) {
    const DwaConfig& c = s.dwa->cfg;
    if (c.n_v < 2) bad("controller.dwa.n_v: must be >= 2");
    if (c.n_w < 2) bad("controller.dwa.n_w: must be >= 2");
    if (!(c.period > 0.0)) bad("controller.dwa.period: must be positive");
    if (!(c.dt_rollout > 0.0) || c.dt_rollout > c.horizon) {
      bad("controller.dwa.dt_rollout: must be in (0, horizon]");
    }
    if (!(c.clearance_cap > 0.0)) bad("controller.dwa.clearance_cap: must be positive");
    const DwaWeights& w = s.dwa->weights;
    if (w.heading < 0.0 || w.clearance < 0.0 || w.velocity < 0.0) {
      bad("controller.dwa.weights: must be >= 0");
    }
    if (!(w.heading > 0.0 || w.clearance > 0.0 || w.velocity > 0.0)) {
      bad("controller.dwa.weights: at least one must be positive");
    }
  }
  if (s.wall) {
    const WallFollowConfig& c = *s.wall;
    if (!(c.desired_distance > 0.0)) bad("controller.wall.desired_distance: must be positive");
    if (!(c.front_threshold > 0.0)) bad("controller.wall.front_threshold: must be positive");
    if (!(c.lost_threshold > 0.0)) bad("controller.wall.lost_threshold: must be positive");
    if (!(c.omega_max > 0.0)) bad("controller.wall.omega_max: must be positive");
    if (c.v0 < 0.0) bad("controller.wall.v0: must be >= 0");
    if (s.params.v_max > 0.0 && c.v0 > s.params.v_max) {
      bad("controller.wall.v0: must not exceed params.v_max");
    }
  }
  return out;
}

double control_period(const Scenario& s) { return s.dwa ? s.dwa->cfg.period : 0.1; }

}  // namespace navbench
