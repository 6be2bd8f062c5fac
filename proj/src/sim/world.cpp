#include "lplc2/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lplc2 {

namespace {

constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }

// Smallest positive ray parameter hitting the circle, or +inf.
double ray_circle(double ox, double oy, double dx, double dy, double cx,
                  double cy, double radius) {
  const double mx = ox - cx, my = oy - cy;
  const double b = mx * dx + my * dy;
  const double c = mx * mx + my * my - radius * radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  const double root = std::sqrt(disc);
  const double t0 = -b - root;
  if (t0 > 0.0) return t0;
  const double t1 = -b + root;
  if (t1 > 0.0) return t1;
  return std::numeric_limits<double>::infinity();
}

// Distance to the arena boundary along the ray, from a point inside.
double ray_walls(double ox, double oy, double dx, double dy, double w,
                 double h) {
  double best = std::numeric_limits<double>::infinity();
  if (dx > 0.0) best = std::min(best, (w - ox) / dx);
  if (dx < 0.0) best = std::min(best, (0.0 - ox) / dx);
  if (dy > 0.0) best = std::min(best, (h - oy) / dy);
  if (dy < 0.0) best = std::min(best, (0.0 - oy) / dy);
  return best;
}

std::uint8_t sample_background(const Arena& a, double world_angle_deg,
                               int row, double row_spacing_deg) {
  switch (a.background) {
    case BackgroundKind::Uniform:
      return a.bg_a;
    case BackgroundKind::Checker: {
      const double ang = std::fmod(std::fmod(world_angle_deg, 360.0) + 360.0, 360.0);
      const int u = static_cast<int>(ang / a.checker_period_deg);
      const double cell_rows = a.checker_period_deg / row_spacing_deg;
      const int v = static_cast<int>(row / cell_rows);
      return ((u + v) % 2 == 0) ? a.bg_a : a.bg_b;
    }
    case BackgroundKind::Image: {
      if (a.bg_image.size() == 0) return a.bg_a;
      const double ang = std::fmod(std::fmod(world_angle_deg, 360.0) + 360.0, 360.0);
      int u = static_cast<int>(ang / 360.0 * a.bg_image.width);
      int v = static_cast<int>(static_cast<double>(row) / kFrameHeight *
                               a.bg_image.height);
      u = std::min(u, a.bg_image.width - 1);
      v = std::min(v, a.bg_image.height - 1);
      return a.bg_image.at(u, v);
    }
  }
  return a.bg_a;
}

}  // namespace

StepResult step_world(WorldState& world, const std::vector<MotorCommand>& cmds,
                      double dt_s) {
  if (cmds.size() != world.robots.size()) {
    throw std::invalid_argument("step_world: one command per robot required");
  }
  if (dt_s <= 0.0) {
    throw std::invalid_argument("step_world: dt must be positive");
  }
  StepResult res;
  res.wall_clamped.assign(world.robots.size(), false);
  for (std::size_t i = 0; i < world.robots.size(); ++i) {
    RobotBody& r = world.robots[i];
    const double hr = deg2rad(r.pose.heading);
    r.pose.x += cmds[i].linear * std::cos(hr) * dt_s;
    r.pose.y += cmds[i].linear * std::sin(hr) * dt_s;
    r.pose.heading = wrap_deg(r.pose.heading + cmds[i].angular * dt_s);

    const double rad = r.diameter / 2.0;
    const double cx = std::clamp(r.pose.x, rad, world.arena.width - rad);
    const double cy = std::clamp(r.pose.y, rad, world.arena.height - rad);
    if (cx != r.pose.x || cy != r.pose.y) {
      res.wall_clamped[i] = true;
      r.pose.x = cx;
      r.pose.y = cy;
    }
  }
  ++world.frame;
  return res;
}

Frame render_view(const WorldState& world, int observer_id,
                  const CameraModel& cam) {
  if (observer_id < 0 ||
      observer_id >= static_cast<int>(world.robots.size())) {
    throw std::invalid_argument("render_view: no such observer");
  }
  const RobotBody& obs = world.robots[static_cast<std::size_t>(observer_id)];
  const Arena& arena = world.arena;

  const double col_spacing = cam.fov_deg / cam.cols;
  const double row_spacing = cam.vfov_deg / cam.rows;
  const double center_col = (cam.cols - 1) / 2.0;
  const double horizon = (cam.rows - 1) / 2.0;

  Frame frame(GridU8(cam.cols, cam.rows), world.frame);
  GridU8& img = frame.img;

#pragma omp parallel for schedule(static)
  for (int col = 0; col < cam.cols; ++col) {
    const double bearing = (col - center_col) * col_spacing;  // + = right
    const double world_angle = obs.pose.heading + bearing;
    const double ar = deg2rad(world_angle);
    const double dx = std::cos(ar), dy = std::sin(ar);

    // Nearest robot along this ray.
    double t_hit = std::numeric_limits<double>::infinity();
    int hit = -1;
    for (std::size_t j = 0; j < world.robots.size(); ++j) {
      if (static_cast<int>(j) == observer_id) continue;
      const RobotBody& rb = world.robots[j];
      const double t = ray_circle(obs.pose.x, obs.pose.y, dx, dy, rb.pose.x,
                                  rb.pose.y, rb.diameter / 2.0);
      if (t < t_hit) {
        t_hit = t;
        hit = static_cast<int>(j);
      }
    }
    const double t_wall =
        ray_walls(obs.pose.x, obs.pose.y, dx, dy, arena.width, arena.height);

    // Backdrop, then the wall band, then the nearer robot over both.
    for (int row = 0; row < cam.rows; ++row) {
      img.at(col, row) = sample_background(arena, world_angle, row, row_spacing);
    }
    auto paint_span = [&](double distance, double half_height_cm,
                          std::uint8_t value) {
      const double half_deg =
          distance > 1e-9
              ? std::atan2(half_height_cm, distance) * 180.0 / kPi
              : 90.0;
      const double half_rows = half_deg / row_spacing;
      const int r0 = std::max(0, static_cast<int>(std::ceil(horizon - half_rows)));
      const int r1 = std::min(cam.rows - 1,
                              static_cast<int>(std::floor(horizon + half_rows)));
      for (int row = r0; row <= r1; ++row) img.at(col, row) = value;
    };
    if (std::isfinite(t_wall)) {
      paint_span(t_wall, arena.wall_height / 2.0, arena.wall_luminance);
    }
    if (hit >= 0 && t_hit <= t_wall) {
      const RobotBody& rb = world.robots[static_cast<std::size_t>(hit)];
      paint_span(t_hit, rb.visual_height / 2.0, rb.luminance);
    }
  }
  return frame;
}

std::vector<CollisionEvent> CollisionTracker::step(const WorldState& world,
                                                   double diameter) {
  std::vector<CollisionEvent> events;
  const auto& robots = world.robots;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    for (std::size_t j = i + 1; j < robots.size(); ++j) {
      const double dx = robots[i].pose.x - robots[j].pose.x;
      const double dy = robots[i].pose.y - robots[j].pose.y;
      const double dist = std::hypot(dx, dy);
      const auto key = std::make_pair(static_cast<int>(i), static_cast<int>(j));
      if (dist < diameter) {
        if (active_pairs_.insert(key).second) {
          events.push_back(CollisionEvent{
              world.frame, false, key.first, key.second,
              (robots[i].pose.x + robots[j].pose.x) / 2.0,
              (robots[i].pose.y + robots[j].pose.y) / 2.0});
        }
      } else {
        active_pairs_.erase(key);
      }
    }
    const double wall_dist =
        std::min({robots[i].pose.x, world.arena.width - robots[i].pose.x,
                  robots[i].pose.y, world.arena.height - robots[i].pose.y});
    if (wall_dist < diameter) {
      if (active_wall_.insert(static_cast<int>(i)).second) {
        events.push_back(CollisionEvent{world.frame, true, static_cast<int>(i),
                                        -1, robots[i].pose.x,
                                        robots[i].pose.y});
      }
    } else {
      active_wall_.erase(static_cast<int>(i));
    }
  }
  return events;
}

}  // namespace lplc2
