#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lplc2/params.hpp"
#include "lplc2/pipeline.hpp"
#include "lplc2/sim/world.hpp"

namespace lplc2 {

enum class ControllerKind {
  Pipeline,       // full closed loop
  PipelineFixed,  // perceives and logs but never moves (open-loop observer)
  Script,         // follows a straight-line route
  Blind,          // constant forward speed, no perception
};

enum class ScriptMode { OneWay, PingPong };

struct RobotSpec {
  ControllerKind controller = ControllerKind::Blind;
  Pose start;
  double speed = 10.0;  // cm/s for Script/Blind
  std::optional<double> goal_x, goal_y;
  double standoff = 0.0;  // Script: stop when this close to the goal
  ScriptMode script_mode = ScriptMode::OneWay;
};

struct ScenarioConfig {
  Arena arena;
  std::vector<RobotSpec> robots;
  std::int64_t duration_frames = 300;
  std::uint64_t seed = 1;
  BehaviorMode mode = BehaviorMode::Escape;
  bool wall_recovery = true;
  double collision_diameter = 4.0;

  std::string validate() const;  // empty when valid
};

// Plain-text key-value scenario format: one `key = value` per line, `#`
// comments, and a `[robot]` header opening each robot section. On failure
// *err names the offending line.
std::optional<ScenarioConfig> parse_scenario_file(
    const std::filesystem::path& path, std::string* err);
std::optional<ScenarioConfig> parse_scenario_text(const std::string& text,
                                                  std::string* err);

struct TrajectoryRow {
  std::int64_t frame;
  int robot;
  double x, y, heading;
};

struct BehaviorRow {
  std::int64_t frame;
  int robot;
  std::string state;
  double raw_sum = 0.0, strength = 0.5;
  std::optional<double> centroid_x;
  std::optional<double> target_heading;
  double linear = 0.0, angular = 0.0;
};

struct AttentionRow {
  std::int64_t frame;
  int af_id;
  double cx, cy, resp;
};

struct TrialLog {
  std::int64_t frames = 0;
  std::vector<TrajectoryRow> trajectories;
  std::vector<CollisionEvent> events;
  std::vector<BehaviorRow> behavior;
  std::map<int, std::vector<AttentionRow>> attention;  // per pipeline robot
  std::map<std::string, std::int64_t> state_frames;
  int wall_episodes = 0;
  int pair_episodes = 0;
  int opportunities = 0;  // contiguous gated-response runs over all robots

  // 1 - episodes / opportunities; unset when there were no opportunities.
  std::optional<double> success_rate() const;
};

struct RunOptions {
  RuntimeParams params;
  bool compat_eq6 = false;
  bool compat_eq9 = false;
  bool compact = false;
  std::optional<BehaviorMode> mode_override;
  std::optional<std::int64_t> duration_override;
  std::optional<std::uint64_t> seed_override;

  // Frame dumps and traces for the first perceiving robot (or `focus_robot`).
  std::filesystem::path dump_frames_dir;  // empty = off
  int focus_robot = -1;
  std::int64_t trace_from = 0, trace_to = -1;  // inclusive; -1 = none
  std::vector<FrameTrace>* traces = nullptr;
  // When set, receives the focus robot's per-frame processing latency in
  // milliseconds (perception + control, excluding rendering).
  std::vector<double>* focus_frame_ms = nullptr;
};

// Lock-step trial: render each perceiving robot's view from the frozen world,
// run its pipeline, collect commands, step the world, detect collisions, log.
// Fully deterministic for a fixed config and seed.
TrialLog run_trial(const ScenarioConfig& cfg, const RunOptions& opts);

// CSV writers (header row included; fixed decimal formatting so identical
// runs produce byte-identical files).
void write_trajectories_csv(const std::filesystem::path&, const TrialLog&);
void write_events_csv(const std::filesystem::path&, const TrialLog&);
void write_behavior_csv(const std::filesystem::path&, const TrialLog&);
void write_attention_csv(const std::filesystem::path&,
                         const std::vector<AttentionRow>&);
std::string summary_text(const ScenarioConfig& cfg, const RunOptions& opts,
                         const TrialLog& log,
                         const std::vector<std::string>& override_echo);

}  // namespace lplc2
