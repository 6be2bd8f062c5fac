#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "lplc2/grid.hpp"
#include "lplc2/visuomotor.hpp"

namespace lplc2 {

struct Pose {
  double x = 0.0, y = 0.0;      // cm
  double heading = 0.0;         // deg in (-180, 180], positive turn = right
};

struct RobotBody {
  Pose pose;
  double diameter = 4.0;        // cm
  double visual_height = 4.0;   // cm, rendered vertical extent
  std::uint8_t luminance = 30;  // painted pixel value
};

enum class BackgroundKind { Uniform, Checker, Image };

struct Arena {
  double width = 100.0, height = 100.0;  // cm
  std::uint8_t wall_luminance = 90;
  double wall_height = 8.0;              // cm, vertical extent of the wall band
  BackgroundKind background = BackgroundKind::Uniform;
  std::uint8_t bg_a = 200;               // uniform value / first checker value
  std::uint8_t bg_b = 230;               // second checker value
  double checker_period_deg = 12.0;      // angular cell size of the backdrop
  GridU8 bg_image;                       // sampled when background == Image
};

// Columns sample uniform angular steps of fov/cols around the heading; rows
// likewise around the horizon. Defaults give 0.707 deg per pixel, i.e. a
// horizontal field of view of about 70 degrees over 99 columns.
struct CameraModel {
  double fov_deg = 99 * 0.707;
  double vfov_deg = 72 * 0.707;
  int cols = kFrameWidth;
  int rows = kFrameHeight;
};

struct WorldState {
  Arena arena;
  std::vector<RobotBody> robots;
  std::int64_t frame = 0;
};

// Unicycle step for every robot: translate along the old heading, then
// rotate. Robots are clamped inside the arena at wall contact (no bounce);
// the returned flags mark which ones were clamped this step.
struct StepResult {
  std::vector<bool> wall_clamped;
};
StepResult step_world(WorldState& world, const std::vector<MotorCommand>& cmds,
                      double dt_s);

// Egocentric luminance view: one raycast per column. The nearest robot on a
// ray paints a dark vertical span whose extent follows its angular size
// (clamped to the image); unobstructed rays show the wall band over the
// backdrop texture.
Frame render_view(const WorldState& world, int observer_id,
                  const CameraModel& cam);

struct CollisionEvent {
  std::int64_t frame = 0;
  bool wall = false;
  int a = -1, b = -1;  // robot ids; b unused for wall events
  double x = 0.0, y = 0.0;
};

// Emits one event per contact episode: a pair (or robot/wall) re-arms only
// after separating beyond the collision distance.
class CollisionTracker {
 public:
  std::vector<CollisionEvent> step(const WorldState& world, double diameter);

 private:
  std::set<std::pair<int, int>> active_pairs_;
  std::set<int> active_wall_;
};

}  // namespace lplc2
