#pragma once

// Programmatic scenario builders for the open-loop evasion protocols and the
// benchmark world. The file-based scenario library covers the fixed setups;
// these cover the parameterized families (per-angle, per-seed).

#include <cstdint>
#include <vector>

#include "lplc2/sim/scenario.hpp"

namespace lplc2 {

// The nine approach angles: -35 to 35 degrees in 8.75-degree steps.
std::vector<double> nine_angles();

// One closed-loop evasion trial: a pipeline robot facing +x and a scripted
// attacker approaching radially from `approach_angle_deg`.
ScenarioConfig make_angle_scenario(double approach_angle_deg);

struct DualScenario {
  ScenarioConfig cfg;
  double fast_bearing = 0.0;  // deg, world frame (observer faces 0)
  double slow_bearing = 0.0;
  double speed_fast = 0.0, speed_slow = 0.0;
};

// Two attackers at a 2:1 speed ratio with seed-jittered bearings and start
// distances; the faster one should dominate the escape direction.
DualScenario make_dual_scenario(std::uint64_t seed);

// Stationary observer with two robots shuttling through its field of view;
// produces sustained motion for latency measurements.
ScenarioConfig make_bench_scenario(std::int64_t duration_frames);

}  // namespace lplc2
