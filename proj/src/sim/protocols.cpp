#include "lplc2/sim/protocols.hpp"

#include <cmath>
#include <random>

namespace lplc2 {

namespace {

constexpr double kPi = 3.14159265358979323846;

RobotSpec attacker_toward(double obs_x, double obs_y, double bearing_deg,
                          double distance, double speed, double standoff) {
  RobotSpec a;
  a.controller = ControllerKind::Script;
  const double br = bearing_deg * kPi / 180.0;
  a.start.x = obs_x + distance * std::cos(br);
  a.start.y = obs_y + distance * std::sin(br);
  a.start.heading = wrap_deg(bearing_deg + 180.0);
  a.speed = speed;
  a.goal_x = obs_x;
  a.goal_y = obs_y;
  a.standoff = standoff;
  return a;
}

}  // namespace

std::vector<double> nine_angles() {
  std::vector<double> a;
  for (int i = 0; i < 9; ++i) a.push_back(-35.0 + 8.75 * i);
  return a;
}

ScenarioConfig make_angle_scenario(double approach_angle_deg) {
  ScenarioConfig cfg;
  cfg.arena.width = 200.0;
  cfg.arena.height = 200.0;
  cfg.arena.background = BackgroundKind::Uniform;
  cfg.arena.bg_a = 200;
  cfg.arena.wall_luminance = 200;  // featureless horizon for the protocol
  cfg.duration_frames = 240;
  cfg.seed = 1;
  cfg.wall_recovery = false;

  RobotSpec observer;
  observer.controller = ControllerKind::Pipeline;
  observer.start = Pose{70.0, 100.0, 0.0};
  cfg.robots.push_back(observer);
  cfg.robots.push_back(
      attacker_toward(70.0, 100.0, approach_angle_deg, 60.0, 20.0, 10.0));
  return cfg;
}

DualScenario make_dual_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    // Portable mapping from raw draws; good enough for scenario jitter.
    const double u = static_cast<double>(rng() >> 11) / 9007199254740992.0;
    return lo + u * (hi - lo);
  };
  const double side = (rng() & 1) ? 1.0 : -1.0;

  DualScenario out;
  out.fast_bearing = side * uniform(20.0, 30.0);
  out.slow_bearing = -side * uniform(20.0, 30.0);
  out.speed_fast = 24.0;
  out.speed_slow = 12.0;
  const double dist_fast = uniform(65.0, 75.0);
  const double dist_slow = uniform(65.0, 75.0);

  ScenarioConfig& cfg = out.cfg;
  cfg.arena.width = 200.0;
  cfg.arena.height = 200.0;
  cfg.arena.background = BackgroundKind::Uniform;
  cfg.arena.bg_a = 200;
  cfg.arena.wall_luminance = 200;
  cfg.duration_frames = 240;
  cfg.seed = seed;
  cfg.wall_recovery = false;

  RobotSpec observer;
  observer.controller = ControllerKind::Pipeline;
  observer.start = Pose{70.0, 100.0, 0.0};
  cfg.robots.push_back(observer);
  cfg.robots.push_back(attacker_toward(70.0, 100.0, out.fast_bearing, dist_fast,
                                       out.speed_fast, 10.0));
  cfg.robots.push_back(attacker_toward(70.0, 100.0, out.slow_bearing, dist_slow,
                                       out.speed_slow, 10.0));
  return out;
}

ScenarioConfig make_bench_scenario(std::int64_t duration_frames) {
  ScenarioConfig cfg;
  cfg.arena.width = 100.0;
  cfg.arena.height = 100.0;
  cfg.arena.background = BackgroundKind::Checker;
  cfg.arena.bg_a = 140;
  cfg.arena.bg_b = 220;
  cfg.duration_frames = duration_frames;
  cfg.seed = 7;
  cfg.wall_recovery = false;

  RobotSpec observer;
  observer.controller = ControllerKind::PipelineFixed;
  observer.start = Pose{50.0, 50.0, 0.0};
  cfg.robots.push_back(observer);

  RobotSpec shuttle1;
  shuttle1.controller = ControllerKind::Script;
  shuttle1.start = Pose{80.0, 25.0, 0.0};
  shuttle1.speed = 25.0;
  shuttle1.goal_x = 80.0;
  shuttle1.goal_y = 75.0;
  shuttle1.script_mode = ScriptMode::PingPong;
  cfg.robots.push_back(shuttle1);

  RobotSpec shuttle2;
  shuttle2.controller = ControllerKind::Script;
  shuttle2.start = Pose{65.0, 70.0, 0.0};
  shuttle2.speed = 18.0;
  shuttle2.goal_x = 65.0;
  shuttle2.goal_y = 30.0;
  shuttle2.script_mode = ScriptMode::PingPong;
  cfg.robots.push_back(shuttle2);
  return cfg;
}

}  // namespace lplc2
