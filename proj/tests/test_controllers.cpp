#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "navbench/controllers.hpp"
#include "navbench/errors.hpp"
#include "navbench/rng.hpp"
#include "navbench/world.hpp"

using namespace navbench;

namespace {

// Synthetic scan over the default 21-beam fan.  All beams read `fill`
// except for explicit overrides keyed by beam index.
RangeScan make_scan(double fill,
                    const std::vector<std::pair<int, double>>& overrides = {}) {
  SensorConfig cfg;  // 21 beams, fov pi, max_range 10
  RangeScan s;
  s.beam_angles = beam_angles(cfg);
  s.max_range = cfg.max_range;
  s.ranges.assign(s.beam_angles.size(), fill);
  for (const auto& [i, r] : overrides) s.ranges[static_cast<size_t>(i)] = r;
  return s;
}

// Scan of a straight wall parallel to the heading at lateral distance d on
// the given side; all other beams read max_range.
RangeScan wall_scan(double d, WallSide side) {
  RangeScan s = make_scan(10.0);
  for (size_t i = 0; i < s.beam_angles.size(); ++i) {
    const double phi = s.beam_angles[i];
    const double toward = side == WallSide::right ? -std::sin(phi) : std::sin(phi);
    if (toward > 1e-9) s.ranges[i] = std::min(10.0, d / toward);
  }
  return s;
}

}  // namespace

TEST_CASE("proportional-only output equals the scaled error") {
  const PidGains g{2.0, 0.0, 0.0};
  PidState st;
  for (double e : {0.0, 1.0, -0.5, 3.25}) {
    const PidResult r = pid_step(g, st, e, 0.1);
    CHECK(r.output == 2.0 * e);
  }
}

TEST_CASE("integral term accumulates error times dt") {
  const PidGains g{0.0, 1.0, 0.0};
  PidState st;
  PidResult r = pid_step(g, st, 1.0, 0.1);
  CHECK(r.output == doctest::Approx(0.1).epsilon(1e-15));
  r = pid_step(g, r.state, 1.0, 0.1);
  CHECK(r.output == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.state.integral == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("derivative is zero on the first call and a difference after") {
  const PidGains g{0.0, 0.0, 1.0};
  PidState st;
  PidResult r = pid_step(g, st, 0.2, 0.1);
  CHECK(r.output == 0.0);
  r = pid_step(g, r.state, 0.5, 0.1);
  CHECK(r.output == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("integral saturates at the anti-windup bound") {
  PidGains g{0.0, 1.0, 0.0};
  g.i_clamp = 0.5;
  PidState st;
  double last = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PidResult r = pid_step(g, st, 1.0, 0.1);
    st = r.state;
    last = r.output;
    CHECK(std::abs(st.integral) <= 0.5);
  }
  CHECK(st.integral == 0.5);
  CHECK(last == 0.5);
  // The bound is symmetric.
  for (int i = 0; i < 30; ++i) st = pid_step(g, st, -1.0, 0.1).state;
  CHECK(st.integral == -0.5);
}

TEST_CASE("pid matches an independently recomputed discrete sum") {
  Rng r(404);
  for (int trial = 0; trial < 1000; ++trial) {
    PidGains g{r.uniform(0.0, 5.0), r.uniform(0.0, 3.0), r.uniform(0.0, 2.0)};
    g.i_clamp = r.uniform(0.2, 10.0);
    const double dt = r.uniform(0.01, 0.5);
    PidState st;
    double integral = 0.0;
    double prev = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double e = r.uniform(-4.0, 4.0);
      const PidResult got = pid_step(g, st, e, dt);
      st = got.state;
      // reference recomputation, written out from the defining sums
      integral = std::min(g.i_clamp, std::max(-g.i_clamp, integral + e * dt));
      const double deriv = k == 0 ? 0.0 : (e - prev) / dt;
      prev = e;
      const double expect = g.kp * e + g.ki * integral + g.kd * deriv;
      CHECK(std::abs(got.output - expect) <= 1e-12);
    }
  }
}

TEST_CASE("pid rejects non-positive time steps") {
  CHECK_THROWS_AS(pid_step(PidGains{}, PidState{}, 1.0, 0.0), InvalidStep);
  CHECK_THROWS_AS(pid_step(PidGains{}, PidState{}, 1.0, -0.1), InvalidStep);
}

TEST_CASE("default integral clamp scales the output limit by ten") {
  CHECK(default_integral_clamp(2.0, 0.5) == 40.0);
  CHECK(default_integral_clamp(1.0, -0.5) == 20.0);
  CHECK(std::isinf(default_integral_clamp(2.0, 0.0)));
}

TEST_CASE("heading controller drives straight at an aligned goal") {
  const PidGains g{2.0, 0.0, 0.0};
  const HeadingCommand cmd =
      heading_controller(g, PidState{}, {0, 0, 0}, {5.0, 0.0}, 0.8, 0.1, RobotParams{});
  CHECK(cmd.control.v == 0.8);
  CHECK(cmd.control.omega == 0.0);
}

TEST_CASE("heading controller turns toward an offset goal and clamps") {
  RobotParams p;
  p.omega_max = 2.0;
  const PidGains soft{1.0, 0.0, 0.0};
  const HeadingCommand turn =
      heading_controller(soft, PidState{}, {0, 0, 0}, {0.0, 3.0}, 0.5, 0.1, p);
  CHECK(turn.control.omega == doctest::Approx(M_PI / 2).epsilon(1e-15));

  const PidGains hard{10.0, 0.0, 0.0};
  const HeadingCommand sat =
      heading_controller(hard, PidState{}, {0, 0, 0}, {0.0, 3.0}, 0.5, 0.1, p);
  CHECK(sat.control.omega == 2.0);
}

TEST_CASE("right-angle triangle heights come out exactly") {
  CHECK(triangle_height(3.0, 4.0, M_PI / 2) == 2.4);
  // For the unit right isosceles the squared base 2 - 2*cos(pi/2) rounds one
  // ulp below 2.0, so the result sits within one ulp of 1/sqrt(2).
  CHECK(triangle_height(1.0, 1.0, M_PI / 2) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("equilateral triangle height matches the closed form") {
  CHECK(triangle_height(1.0, 1.0, M_PI / 3) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("height times base reproduces the cross-product area") {
  Rng r(7171);
  for (int i = 0; i < 1000; ++i) {
    const double a = r.uniform(0.1, 3.0);
    const double b = r.uniform(0.1, 3.0);
    const double beta = r.uniform(0.05, M_PI - 0.05);
    const double h = triangle_height(a, b, beta);
    const double c =
        std::sqrt(a * a + b * b - 2.0 * a * b * std::cos(beta));
    const double area_base_height = 0.5 * c * h;
    const double area_cross = 0.5 * a * b * std::sin(beta);
    CHECK(std::abs(area_base_height - area_cross) <= 1e-12);
    // the apex height never exceeds either adjacent side
    CHECK(h <= std::min(a, b) * (1.0 + 1e-12));
  }
}

TEST_CASE("triangle height rejects degenerate inputs") {
  CHECK_THROWS_AS(triangle_height(1.0, 1.0, 0.0), InvalidAngle);
  CHECK_THROWS_AS(triangle_height(1.0, 1.0, M_PI), InvalidAngle);
  CHECK_THROWS_AS(triangle_height(1.0, 1.0, -0.3), InvalidAngle);
  CHECK_THROWS_AS(triangle_height(0.0, 1.0, 1.0), DegenerateTriangle);
  CHECK_THROWS_AS(triangle_height(1.0, -2.0, 1.0), DegenerateTriangle);
  // nearly identical rays: the third side collapses
  CHECK_THROWS_AS(triangle_height(1.0, 1.0, 1e-13), DegenerateTriangle);
}

TEST_CASE("open space puts the follower into search, arcing toward its side") {
  WallFollowConfig cfg;  // right side, omega_search 1.0
  const RangeScan open = make_scan(10.0);
  const WallFollowCommand cmd = wall_follow_step(cfg, WallFollowState{}, open, 0.1);
  CHECK(cmd.state.mode == WallFollowMode::search);
  CHECK(cmd.control.v == cfg.v0);
  CHECK(cmd.control.omega == -cfg.omega_search);

  WallFollowConfig left = cfg;
  left.side = WallSide::left;
  const WallFollowCommand lcmd = wall_follow_step(left, WallFollowState{}, open, 0.1);
  CHECK(lcmd.state.mode == WallFollowMode::search);
  CHECK(lcmd.control.omega == +left.omega_search);
}

TEST_CASE("a blocked front triggers an in-place corner turn away from the wall") {
  WallFollowConfig cfg;  // front_threshold 0.6, omega_max 2.0
  const RangeScan blocked = make_scan(10.0, {{10, 0.2}});  // beam 10 faces forward
  const WallFollowCommand cmd =
      wall_follow_step(cfg, WallFollowState{}, blocked, 0.1);
  CHECK(cmd.state.mode == WallFollowMode::turn_corner);
  CHECK(cmd.control.v == 0.0);
  CHECK(cmd.control.omega == +cfg.omega_max);  // right wall: turn left

  WallFollowConfig left = cfg;
  left.side = WallSide::left;
  const WallFollowCommand lcmd =
      wall_follow_step(left, WallFollowState{}, blocked, 0.1);
  CHECK(lcmd.control.omega == -left.omega_max);
}

TEST_CASE("corner turn outranks wall loss when both apply") {
  WallFollowConfig cfg;
  RangeScan s = make_scan(10.0, {{10, 0.1}});  // everything lost and front blocked
  const WallFollowCommand cmd = wall_follow_step(cfg, WallFollowState{}, s, 0.1);
  CHECK(cmd.state.mode == WallFollowMode::turn_corner);
}

TEST_CASE("tracking a wall at the setpoint steers straight") {
  WallFollowConfig cfg;  // desired_distance 0.8
  const RangeScan s = wall_scan(0.8, WallSide::right);
  const WallFollowCommand cmd = wall_follow_step(cfg, WallFollowState{}, s, 0.1);
  CHECK(cmd.state.mode == WallFollowMode::track);
  CHECK(cmd.control.v == cfg.v0);
  CHECK(std::abs(cmd.control.omega) < 1e-9);
}

TEST_CASE("tracking steers away when too close and toward when too far") {
  WallFollowConfig cfg;
  const WallFollowCommand close =
      wall_follow_step(cfg, WallFollowState{}, wall_scan(0.5, WallSide::right), 0.1);
  CHECK(close.state.mode == WallFollowMode::track);
  CHECK(close.control.omega > 0.0);  // away from the right wall = left turn

  const WallFollowCommand far =
      wall_follow_step(cfg, WallFollowState{}, wall_scan(1.5, WallSide::right), 0.1);
  CHECK(far.state.mode == WallFollowMode::track);
  CHECK(far.control.omega < 0.0);

  WallFollowConfig left = cfg;
  left.side = WallSide::left;
  const WallFollowCommand lclose =
      wall_follow_step(left, WallFollowState{}, wall_scan(0.5, WallSide::left), 0.1);
  CHECK(lclose.control.omega < 0.0);  // away from the left wall = right turn
}

TEST_CASE("steering saturates at the configured limit") {
  WallFollowConfig cfg;
  cfg.turn_gains.kp = 100.0;
  const WallFollowCommand cmd =
      wall_follow_step(cfg, WallFollowState{}, wall_scan(0.3, WallSide::right), 0.1);
  CHECK(cmd.control.omega == cfg.omega_max);
}

TEST_CASE("leaving track mode resets the steering integrator") {
  WallFollowConfig cfg;
  cfg.turn_gains = PidGains{1.0, 2.0, 0.0};
  cfg.turn_gains.i_clamp = 10.0;

  // accumulate some integral while tracking
  WallFollowState st;
  for (int i = 0; i < 5; ++i)
    st = wall_follow_step(cfg, st, wall_scan(0.5, WallSide::right), 0.1).state;
  CHECK(st.pid.integral != 0.0);

  // a corner turn clears it
  st = wall_follow_step(cfg, st, make_scan(10.0, {{10, 0.2}}), 0.1).state;
  CHECK(st.mode == WallFollowMode::turn_corner);
  CHECK(st.pid.integral == 0.0);
  CHECK_FALSE(st.pid.initialized);
}

TEST_CASE("re-entering track starts from a fresh controller state") {
  WallFollowConfig cfg;
  cfg.turn_gains = PidGains{1.0, 2.0, 0.0};

  WallFollowState st;
  for (int i = 0; i < 5; ++i)
    st = wall_follow_step(cfg, st, wall_scan(0.5, WallSide::right), 0.1).state;
  st = wall_follow_step(cfg, st, make_scan(10.0), 0.1).state;  // search
  CHECK(st.mode == WallFollowMode::search);

  const WallFollowCommand resumed =
      wall_follow_step(cfg, st, wall_scan(0.5, WallSide::right), 0.1);
  const WallFollowCommand fresh = wall_follow_step(
      cfg, WallFollowState{}, wall_scan(0.5, WallSide::right), 0.1);
  CHECK(resumed.control.omega == fresh.control.omega);
}

TEST_CASE("sparse or one-sided scans are rejected") {
  WallFollowConfig cfg;
  RangeScan two;
  two.beam_angles = {-0.5, 0.5};
  two.ranges = {1.0, 1.0};
  two.max_range = 10.0;
  CHECK_THROWS_AS(wall_follow_step(cfg, WallFollowState{}, two, 0.1),
                  InsufficientScan);

  RangeScan front_only;
  front_only.beam_angles = {-0.2, 0.0, 0.2};
  front_only.ranges = {1.0, 1.0, 1.0};
  front_only.max_range = 10.0;
  CHECK_THROWS_AS(wall_follow_step(cfg, WallFollowState{}, front_only, 0.1),
                  InsufficientScan);
}

TEST_CASE("any well-formed scan yields a bounded command") {
  WallFollowConfig cfg;
  Rng r(606);
  for (int trial = 0; trial < 2000; ++trial) {
    RangeScan s = make_scan(1.0);
    for (auto& range : s.ranges) range = r.uniform(0.05, 10.0);
    WallFollowState st;
    st.mode = trial % 2 == 0 ? WallFollowMode::track : WallFollowMode::search;
    const WallFollowCommand cmd = wall_follow_step(cfg, st, s, 0.1);
    CHECK(std::abs(cmd.control.v) <= cfg.v0);
    CHECK(std::abs(cmd.control.omega) <=
          std::max(cfg.omega_max, cfg.omega_search));
  }
}
