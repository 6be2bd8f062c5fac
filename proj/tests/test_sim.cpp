#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "lplc2/sim/protocols.hpp"
#include "lplc2/sim/scenario.hpp"
#include "lplc2/sim/world.hpp"
#include "testutil.hpp"

using namespace lplc2;

TEST_SUITE_BEGIN("sim");

namespace {

WorldState empty_arena() {
  WorldState w;
  w.arena.width = 100;
  w.arena.height = 100;
  w.arena.background = BackgroundKind::Uniform;
  w.arena.bg_a = 200;
  w.arena.wall_luminance = 90;
  return w;
}

RobotBody robot_at(double x, double y, double heading) {
  RobotBody r;
  r.pose = Pose{x, y, heading};
  return r;
}

int dark_columns(const Frame& f, std::uint8_t value) {
  int cols = 0;
  for (int x = 0; x < f.width(); ++x) {
    for (int y = 0; y < f.height(); ++y) {
      if (f.img.at(x, y) == value) {
        ++cols;
        break;
      }
    }
  }
  return cols;
}

int dark_rows(const Frame& f, std::uint8_t value) {
  int rows = 0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      if (f.img.at(x, y) == value) {
        ++rows;
        break;
      }
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("step_world: zero command leaves the pose unchanged") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(50, 50, 30));
  step_world(w, {MotorCommand{0, 0}}, 1.0 / 30.0);
  CHECK(w.robots[0].pose.x == 50.0);
  CHECK(w.robots[0].pose.y == 50.0);
  CHECK(w.robots[0].pose.heading == 30.0);
  CHECK(w.frame == 1);
}

TEST_CASE("step_world: pure forward motion advances along the heading") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(20, 50, 0));
  step_world(w, {MotorCommand{10, 0}}, 1.0);
  CHECK(w.robots[0].pose.x == doctest::Approx(30.0));
  CHECK(w.robots[0].pose.y == doctest::Approx(50.0));
}

TEST_CASE("step_world: rotation closes after a full turn") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(50, 50, 17));
  for (int i = 0; i < 4; ++i) step_world(w, {MotorCommand{0, 90}}, 1.0);
  CHECK(w.robots[0].pose.heading == doctest::Approx(17.0).epsilon(1e-9));
}

TEST_CASE("step_world clamps at the wall without bouncing") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(95, 50, 0));
  const StepResult r = step_world(w, {MotorCommand{20, 0}}, 1.0);
  CHECK(r.wall_clamped[0]);
  CHECK(w.robots[0].pose.x == doctest::Approx(98.0));  // radius 2 inside 100
}

TEST_CASE("render: empty arena shows wall band over background") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(50, 50, 0));
  const Frame f = render_view(w, 0, CameraModel{});
  CHECK(f.img.at(49, 0) == 200);    // sky/backdrop above the wall band
  CHECK(f.img.at(49, 35) == 90);    // wall at the horizon
  CHECK(f.img.at(49, 71) == 200);   // below the wall band
  bool any_robot_pixel = false;
  for (auto v : f.img.data) any_robot_pixel |= v == 30;
  CHECK_FALSE(any_robot_pixel);
}

TEST_CASE("render: halving the distance doubles the painted span") {
  WorldState w = empty_arena();
  w.arena.width = 400;
  w.arena.height = 400;
  w.robots.push_back(robot_at(50, 200, 0));
  w.robots.push_back(robot_at(90, 200, 0));  // 40 cm ahead
  const Frame far = render_view(w, 0, CameraModel{});
  w.robots[1].pose.x = 70.0;  // 20 cm ahead
  const Frame near = render_view(w, 0, CameraModel{});
  const int wf = dark_columns(far, 30), hn = dark_rows(near, 30);
  const int wn = dark_columns(near, 30), hf = dark_rows(far, 30);
  CHECK(std::abs(wn - 2 * wf) <= 2);
  CHECK(std::abs(hn - 2 * hf) <= 2);
}

TEST_CASE("render: a robot outside the field of view paints nothing") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(50, 50, 0));
  // bearing 90 degrees: far outside the ~70 degree horizontal span
  w.robots.push_back(robot_at(50, 70, 0));
  const Frame f = render_view(w, 0, CameraModel{});
  bool any_robot_pixel = false;
  for (auto v : f.img.data) any_robot_pixel |= v == 30;
  CHECK_FALSE(any_robot_pixel);
}

TEST_CASE("render: approaching robot widens monotonically") {
  WorldState w = empty_arena();
  w.arena.width = 200;
  w.arena.height = 200;
  w.robots.push_back(robot_at(40, 100, 0));
  w.robots.push_back(robot_at(120, 100, 180));
  int prev_cols = 0;
  for (int step = 0; step < 30; ++step) {
    const Frame f = render_view(w, 0, CameraModel{});
    const int cols = dark_columns(f, 30);
    CHECK(cols >= prev_cols);
    prev_cols = cols;
    w.robots[1].pose.x -= 2.0;  // 2 cm closer each step
  }
  CHECK(prev_cols > 10);
}

TEST_CASE("collision events: thresholds and episode re-arming") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(40, 50, 0));
  w.robots.push_back(robot_at(50, 50, 0));
  CollisionTracker tracker;

  CHECK(tracker.step(w, 4.0).empty());  // 10 cm apart

  w.robots[1].pose.x = 43.9;  // 3.9 cm apart -> robot-robot event
  auto ev = tracker.step(w, 4.0);
  REQUIRE(ev.size() == 1);
  CHECK_FALSE(ev[0].wall);
  CHECK(ev[0].a == 0);
  CHECK(ev[0].b == 1);

  // still in contact: no duplicate within the episode
  w.robots[1].pose.x = 43.5;
  CHECK(tracker.step(w, 4.0).empty());

  // separate, then touch again: a new episode
  w.robots[1].pose.x = 60.0;
  CHECK(tracker.step(w, 4.0).empty());
  w.robots[1].pose.x = 43.9;
  CHECK(tracker.step(w, 4.0).size() == 1);
}

TEST_CASE("collision events: wall proximity") {
  WorldState w = empty_arena();
  w.robots.push_back(robot_at(3.9, 50, 0));
  CollisionTracker tracker;
  auto ev = tracker.step(w, 4.0);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].wall);
  CHECK(ev[0].a == 0);
}

TEST_CASE("scenario text parsing reports the offending line") {
  std::string err;
  auto cfg = parse_scenario_text("arena_width = 100\nbogus_key = 3\n", &err);
  CHECK_FALSE(cfg.has_value());
  CHECK(err.find("line 2") != std::string::npos);
  CHECK(err.find("bogus_key") != std::string::npos);

  cfg = parse_scenario_text("arena_width = what\n", &err);
  CHECK_FALSE(cfg.has_value());
  CHECK(err.find("line 1") != std::string::npos);
}

TEST_CASE("scenario parsing builds robots in order") {
  const std::string text =
      "arena_width = 120\n"
      "arena_height = 80\n"
      "duration_frames = 10\n"
      "seed = 9\n"
      "[robot]\n"
      "controller = pipeline_fixed\n"
      "x = 20\ny = 40\nheading = 0\n"
      "[robot]\n"
      "controller = script\n"
      "x = 100\ny = 40\nheading = 180\nspeed = 20\n"
      "goal_x = 20\ngoal_y = 40\nstandoff = 8\n";
  std::string err;
  auto cfg = parse_scenario_text(text, &err);
  REQUIRE_MESSAGE(cfg.has_value(), err);
  CHECK(cfg->arena.width == 120.0);
  CHECK(cfg->robots.size() == 2);
  CHECK(cfg->robots[0].controller == ControllerKind::PipelineFixed);
  CHECK(cfg->robots[1].controller == ControllerKind::Script);
  CHECK(cfg->robots[1].goal_x == 20.0);
}

TEST_CASE("zero-duration trial yields empty logs") {
  std::string err;
  auto cfg = parse_scenario_text(
      "duration_frames = 0\n[robot]\ncontroller = blind\nx = 50\ny = 50\n",
      &err);
  REQUIRE(cfg.has_value());
  const TrialLog log = run_trial(*cfg, RunOptions{});
  CHECK(log.trajectories.empty());
  CHECK(log.events.empty());
  CHECK(log.behavior.empty());
}

TEST_CASE("scripted approach stops at its standoff") {
  std::string err;
  auto cfg = parse_scenario_text(
      "arena_width = 200\narena_height = 200\nduration_frames = 400\n"
      "[robot]\ncontroller = script\nx = 150\ny = 100\nheading = 180\n"
      "speed = 20\ngoal_x = 50\ngoal_y = 100\nstandoff = 10\n",
      &err);
  REQUIRE(cfg.has_value());
  const TrialLog log = run_trial(*cfg, RunOptions{});
  const auto& last = log.trajectories.back();
  CHECK(std::hypot(last.x - 50.0, last.y - 100.0) ==
        doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("trials are deterministic for a fixed seed") {
  ScenarioConfig cfg = make_bench_scenario(40);
  RunOptions opts;
  const TrialLog a = run_trial(cfg, opts);
  const TrialLog b = run_trial(cfg, opts);
  REQUIRE(a.trajectories.size() == b.trajectories.size());
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    CHECK(a.trajectories[i].x == b.trajectories[i].x);
    CHECK(a.trajectories[i].y == b.trajectories[i].y);
    CHECK(a.trajectories[i].heading == b.trajectories[i].heading);
  }
  REQUIRE(a.behavior.size() == b.behavior.size());
  for (std::size_t i = 0; i < a.behavior.size(); ++i) {
    CHECK(a.behavior[i].state == b.behavior[i].state);
    CHECK(a.behavior[i].raw_sum == b.behavior[i].raw_sum);
  }
}

TEST_CASE("no teleportation: per-frame displacement stays bounded") {
  ScenarioConfig cfg = make_bench_scenario(60);
  RunOptions opts;
  const TrialLog log = run_trial(cfg, opts);
  const double dt = opts.params.motor.dt_s;
  const double bound = 30.0 * dt + 1e-6;  // fastest scripted robot
  std::map<int, TrajectoryRow> prev;
  for (const auto& row : log.trajectories) {
    auto it = prev.find(row.robot);
    if (it != prev.end()) {
      CHECK(std::hypot(row.x - it->second.x, row.y - it->second.y) <= bound);
    }
    prev[row.robot] = row;
  }
}

TEST_SUITE_END();
