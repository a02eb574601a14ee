#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "navbench/controllers.hpp"
#include "navbench/dwa.hpp"
#include "navbench/metrics.hpp"
#include "navbench/world.hpp"

namespace navbench {

struct PidControllerConfig {
  PidGains gains{};
  double v0{0.5};
};

struct DwaControllerConfig {
  DwaWeights weights{};
  DwaConfig cfg{};
};

// One benchmark setup: environment, sensing, robot, noise, and the controller
// configurations it provides.  A scenario may configure several controller
// types; a run selects one by name (pid | dwa | wall).
struct Scenario {
  std::string name;
  World world{};
  SensorConfig sensor{};
  RobotState start{};
  RobotParams params{};
  double time_limit{30.0};
  double ref_time{10.0};
  double noise_sigma_v{0.0};
  double noise_sigma_w{0.0};
  double energy_c_v{1.0};
  double energy_c_w{1.0};
  std::optional<PidControllerConfig> pid;
  std::optional<DwaControllerConfig> dwa;
  std::optional<WallFollowConfig> wall;
};

// Parse a scenario document.  Throws ParseError on malformed JSON or wrong
// shapes; invariant violations are reported by validate().
Scenario parse_scenario(const std::string& json_text, const std::string& default_name);

Scenario load_scenario(const std::string& path);

// Every violated invariant, not just the first; empty means valid.
std::vector<std::string> validate(const Scenario& s);

// Control period of a run: the dwa period when configured, else 0.1 s, so
// decision counts stay comparable across controllers.
double control_period(const Scenario& s);

}  // namespace navbench
