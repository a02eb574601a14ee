#include "navbench/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "navbench/errors.hpp"

namespace navbench {

namespace {

// snprintf keeps the output byte-deterministic across runs; world
// coordinates are emitted directly, with y negated for SVG's flipped axis.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string point(const Eigen::Vector2d& p) { return num(p.x()) + "," + num(-p.y()); }

std::string polyline(const std::vector<Eigen::Vector2d>& pts, const char* style) {
  std::string out = "  <polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += point(pts[i]);
  }
  out += "\" ";
  out += style;
  out += "/>\n";
  return out;
}

}  // namespace

std::string render_svg(const PersistedRun& run) {
  if (run.log.samples.empty()) throw EmptyLog("nothing to plot: log has no samples");
  const World& w = run.world;
  const double margin = 0.5;
  const double x0 = w.bounds.xmin - margin;
  const double y0 = -(w.bounds.ymax + margin);
  const double view_w = (w.bounds.xmax - w.bounds.xmin) + 2.0 * margin;
  const double view_h = (w.bounds.ymax - w.bounds.ymin) + 2.0 * margin;
  const int px_w = 800;
  const int px_h = static_cast<int>(std::lround(800.0 * view_h / view_w));

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(px_w) +
         "\" height=\"" + std::to_string(px_h) + "\" viewBox=\"" + num(x0) + " " +
         num(y0) + " " + num(view_w) + " " + num(view_h) + "\">\n";
  svg += "  <title>" + run.scenario_id + " / " + run.controller_id + " / seed " +
         std::to_string(run.seed) + "</title>\n";
  svg += "  <rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(view_w) +
         "\" height=\"" + num(view_h) + "\" fill=\"#ffffff\"/>\n";
  svg += "  <rect x=\"" + num(w.bounds.xmin) + "\" y=\"" + num(-w.bounds.ymax) +
         "\" width=\"" + num(w.bounds.xmax - w.bounds.xmin) + "\" height=\"" +
         num(w.bounds.ymax - w.bounds.ymin) +
         "\" fill=\"#fafafa\" stroke=\"#333333\" stroke-width=\"0.04\"/>\n";

  for (const Circle& c : w.circles) {
    svg += "  <circle cx=\"" + num(c.center.x()) + "\" cy=\"" + num(-c.center.y()) +
           "\" r=\"" + num(c.radius) + "\" fill=\"#b0b0b0\" stroke=\"#555555\" "
           "stroke-width=\"0.02\"/>\n";
  }
  for (const Segment& s : w.segments) {
    svg += "  <line x1=\"" + num(s.p1.x()) + "\" y1=\"" + num(-s.p1.y()) + "\" x2=\"" +
           num(s.p2.x()) + "\" y2=\"" + num(-s.p2.y()) +
           "\" stroke=\"#555555\" stroke-width=\"0.06\"/>\n";
  }
  for (const Gate& g : w.gates) {
    svg += "  <line x1=\"" + num(g.seg.p1.x()) + "\" y1=\"" + num(-g.seg.p1.y()) +
           "\" x2=\"" + num(g.seg.p2.x()) + "\" y2=\"" + num(-g.seg.p2.y()) +
           "\" stroke=\"#cc9900\" stroke-width=\"0.03\" stroke-dasharray=\"0.1,0.1\"/>"
           "\n";
  }

  svg += "  <circle cx=\"" + num(w.goal.x()) + "\" cy=\"" + num(-w.goal.y()) + "\" r=\"" +
         num(w.goal_radius) +
         "\" fill=\"#2a2\" fill-opacity=\"0.35\" stroke=\"#2a2\" "
         "stroke-width=\"0.02\"/>\n";

  if (!run.log.reference_path.empty()) {
    svg += polyline(run.log.reference_path,
                    "fill=\"none\" stroke=\"#3366cc\" stroke-width=\"0.02\" "
                    "stroke-dasharray=\"0.15,0.1\" class=\"reference\"");
  }

  std::vector<Eigen::Vector2d> path;
  path.reserve(run.log.samples.size());
  for (const Sample& s : run.log.samples) path.push_back(s.state.position());
  svg += polyline(path, "fill=\"none\" stroke=\"#d33333\" stroke-width=\"0.03\" "
                        "class=\"trajectory\"");

  svg += "  <circle cx=\"" + num(path.front().x()) + "\" cy=\"" + num(-path.front().y()) +
         "\" r=\"0.08\" fill=\"#3366cc\" class=\"start\"/>\n";
  svg += "  <circle cx=\"" + num(path.back().x()) + "\" cy=\"" + num(-path.back().y()) +
         "\" r=\"0.08\" fill=\"#d33333\" class=\"end\"/>\n";
  svg += "</svg>\n";
  return svg;
}

void write_svg(const PersistedRun& run, const std::string& path) {
  const std::string svg = render_svg(run);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << svg;
}

}  // namespace navbench
