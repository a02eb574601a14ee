#pragma once

#include <string>

#include "navbench/runner.hpp"

namespace navbench {

// Static SVG of one run: bounds, obstacles, gates, goal disc, reference path
// (when present), trajectory, start/end markers.  Output is byte-deterministic
// for identical input.  Throws EmptyLog when the log has no samples.
std::string render_svg(const PersistedRun& run);

void write_svg(const PersistedRun& run, const std::string& path);

}  // namespace navbench
