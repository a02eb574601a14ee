#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "navbench/fxp.hpp"
#include "navbench/runner.hpp"
#include "navbench/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace navbench;

namespace {

// "A..B" inclusive range, or a comma-separated list.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t a = std::stoull(text.substr(0, dots));
    const std::uint64_t b = std::stoull(text.substr(dots + 2));
    if (b < a) throw ParseError("seed range must be ascending: " + text);
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) seeds.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (seeds.empty()) throw ParseError("no seeds in \"" + text + "\"");
  return seeds;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path.string());
  out << content;
}

int cmd_run(const std::string& scenario_path, const std::string& controller,
            std::uint64_t seed, const std::string& out_dir, bool eq7_literal) {
  const Scenario scenario = load_scenario(scenario_path);
  const Eq7Mode eq7 = eq7_literal ? Eq7Mode::literal : Eq7Mode::prose;
  const RunRecord rec = run_scenario(scenario, controller, seed, eq7);

  fs::create_directories(out_dir);
  const std::string stem =
      rec.scenario_id + "_" + rec.controller_id + "_" + std::to_string(seed);
  write_file(fs::path(out_dir) / (stem + ".jsonl"), log_to_jsonl(scenario, rec, eq7));
  write_file(fs::path(out_dir) / (stem + ".csv"),
             std::string(kCsvHeader) + '\n' + csv_row(rec) + '\n');

  std::cout << kCsvHeader << '\n' << csv_row(rec) << '\n';
  return 0;
}

int cmd_batch(const std::string& scenario_dir, const std::string& controller_list,
              const std::string& seed_spec, const std::string& out_dir) {
  std::vector<Scenario> scenarios;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(scenario_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) scenarios.push_back(load_scenario(f.string()));

  std::vector<std::string> controllers;
  std::size_t pos = 0;
  while (pos <= controller_list.size()) {
    const std::size_t comma = controller_list.find(',', pos);
    const std::string item = controller_list.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) controllers.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }

  const BatchResult result = batch(scenarios, controllers, parse_seeds(seed_spec));

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "report.csv", result.report_csv);
  write_file(fs::path(out_dir) / "summary.csv", result.summary_csv);
  std::cout << result.summary_csv;
  return 0;
}

int cmd_plot(const std::string& record_path, const std::string& out_path) {
  write_svg(read_jsonl(record_path), out_path);
  return 0;
}

int cmd_validate(const std::string& path) {
  const Scenario scenario = load_scenario(path);
  const std::vector<std::string> violations = validate(scenario);
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const std::string& v : violations) std::cout << v << '\n';
  return 2;
}

int cmd_fxcheck(long cases) {
  Rng rng(0x5eedf00dULL);
  const Fx dt = fx_from_real(0.1);
  const double pid_envelope = 0x1.0p-8;
  const double obj_envelope = 0x1.0p-13;
  double max_pid_err = 0.0;
  double max_obj_err = 0.0;

  for (long c = 0; c < cases; ++c) {
    // PID: quantized gains/errors, float reference fed the dequantized values
    FxPidGains fx_gains;
    fx_gains.kp = fx_from_real(rng.uniform(0.0, 8.0));
    fx_gains.ki = fx_from_real(rng.uniform(0.0, 4.0));
    fx_gains.kd = fx_from_real(rng.uniform(0.0, 2.0));
    fx_gains.i_clamp = fx_from_real(rng.uniform(1.0, 16.0));
    const FxPidParams fx_params = make_fx_pid_params(fx_gains, dt);

    PidGains gains;
    gains.kp = fx_to_real(fx_gains.kp);
    gains.ki = fx_to_real(fx_gains.ki);
    gains.kd = fx_to_real(fx_gains.kd);
    gains.i_clamp = fx_to_real(fx_gains.i_clamp);
    const double dt_real = fx_to_real(dt);

    FxPidState fx_state;
    PidState state;
    for (int k = 0; k < 8; ++k) {
      const Fx fx_error = fx_from_real(rng.uniform(-4.0, 4.0));
      const double error = fx_to_real(fx_error);
      const FxPidResult fr = fx_pid_step(fx_params, fx_state, fx_error);
      const PidResult r = pid_step(gains, state, error, dt_real);
      max_pid_err = std::max(max_pid_err, std::abs(fx_to_real(fr.output) - r.output));
      fx_state = fr.state;
      state = r.state;
    }

    // objective: normalized terms and unit-scale weights
    FxTerms ft;
    ft.heading = fx_from_real(rng.uniform01());
    ft.clearance = fx_from_real(rng.uniform01());
    ft.velocity = fx_from_real(rng.uniform01());
    FxWeights fw;
    fw.heading = fx_from_real(rng.uniform01());
    fw.clearance = fx_from_real(rng.uniform01());
    fw.velocity = fx_from_real(rng.uniform01());

    VelocityCandidate cand;
    cand.heading_term = fx_to_real(ft.heading);
    cand.clearance_term = fx_to_real(ft.clearance);
    cand.velocity_term = fx_to_real(ft.velocity);
    DwaWeights weights;
    weights.heading = fx_to_real(fw.heading);
    weights.clearance = fx_to_real(fw.clearance);
    weights.velocity = fx_to_real(fw.velocity);

    max_obj_err = std::max(
        max_obj_err, std::abs(fx_to_real(fx_objective(ft, fw)) - objective(cand, weights)));
  }

  const bool sat_ok = fx_add(Fx::max(), fx_from_real(1.0)) == Fx::max() &&
                      fx_sub(Fx::min(), fx_from_real(1.0)) == Fx::min() &&
                      fx_mul(Fx::max(), Fx::max()) == Fx::max() &&
                      fx_mul(Fx::max(), Fx::min()) == Fx::min();

  const bool pid_ok = max_pid_err <= pid_envelope;
  const bool obj_ok = max_obj_err <= obj_envelope;
  std::printf("fx pid conformance: max |err| %.3e  envelope %.3e  %s\n", max_pid_err,
              pid_envelope, pid_ok ? "pass" : "FAIL");
  std::printf("fx objective conformance: max |err| %.3e  envelope %.3e  %s\n", max_obj_err,
              obj_envelope, obj_ok ? "pass" : "FAIL");
  std::printf("fx saturation bounds: %s\n", sat_ok ? "pass" : "FAIL");
  return pid_ok && obj_ok && sat_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic mobile-robot navigation benchmark"};
  app.require_subcommand(1);

  std::string scenario_path, controller = "pid", out_dir = "out";
  std::uint64_t seed = 0;
  bool eq7_literal = false;
  CLI::App* run = app.add_subcommand("run", "run one scenario and write log + report");
  run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--controller", controller, "pid | dwa | wall");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--eq7-literal", eq7_literal,
                "use the literal (time - ref) sign in the evaluation score");

  std::string scenario_dir, controller_list = "pid,dwa", seed_spec = "0..4";
  std::string batch_out = "out";
  CLI::App* batch_cmd = app.add_subcommand("batch", "cross-product benchmark to CSV");
  batch_cmd->add_option("--scenarios", scenario_dir, "directory of scenario JSON files")
      ->required();
  batch_cmd->add_option("--controllers", controller_list, "comma-separated controller ids");
  batch_cmd->add_option("--seeds", seed_spec, "A..B inclusive range or comma list");
  batch_cmd->add_option("--out", batch_out, "output directory");

  std::string record_path, plot_out;
  CLI::App* plot = app.add_subcommand("plot", "render a persisted run to SVG");
  plot->add_option("--record", record_path, "JSONL log file")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a scenario file");
  validate_cmd->add_option("file", validate_path, "scenario JSON file")->required();

  long fx_cases = 10000;
  CLI::App* fxcheck = app.add_subcommand("fxcheck", "fixed-point conformance report");
  fxcheck->add_option("--cases", fx_cases, "number of random cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a validation error
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, controller, seed, out_dir, eq7_literal);
    if (batch_cmd->parsed()) {
      return cmd_batch(scenario_dir, controller_list, seed_spec, batch_out);
    }
    if (plot->parsed()) return cmd_plot(record_path, plot_out);
    if (validate_cmd->parsed()) return cmd_validate(validate_path);
    if (fxcheck->parsed()) return cmd_fxcheck(fx_cases);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
