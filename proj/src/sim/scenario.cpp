#include "lplc2/sim/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "lplc2/io/pgm.hpp"

namespace lplc2 {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool to_double(const std::string& v, double* out) {
  try {
    std::size_t pos = 0;
    *out = std::stod(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool to_int64(const std::string& v, std::int64_t* out) {
  try {
    std::size_t pos = 0;
    *out = std::stoll(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool to_u8(const std::string& v, std::uint8_t* out) {
  std::int64_t i = 0;
  if (!to_int64(v, &i) || i < 0 || i > 255) return false;
  *out = static_cast<std::uint8_t>(i);
  return true;
}

constexpr double kPi = 3.14159265358979323846;
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct ParseCtx {
  ScenarioConfig cfg;
  std::string image_path;  // resolved by the file-level wrapper
  RobotSpec* robot = nullptr;
};

bool apply_key(ParseCtx& ctx, const std::string& key, const std::string& value,
               std::string* why) {
  auto bad = [&] {
    *why = "invalid value '" + value + "' for key '" + key + "'";
    return false;
  };
  double d = 0.0;
  std::int64_t i = 0;

  if (ctx.robot == nullptr) {
    ScenarioConfig& c = ctx.cfg;
    if (key == "arena_width") { if (!to_double(value, &d)) return bad(); c.arena.width = d; }
    else if (key == "arena_height") { if (!to_double(value, &d)) return bad(); c.arena.height = d; }
    else if (key == "wall_luminance") { if (!to_u8(value, &c.arena.wall_luminance)) return bad(); }
    else if (key == "wall_height") { if (!to_double(value, &d)) return bad(); c.arena.wall_height = d; }
    else if (key == "background") {
      if (value == "uniform") c.arena.background = BackgroundKind::Uniform;
      else if (value == "checker") c.arena.background = BackgroundKind::Checker;
      else if (value == "image") c.arena.background = BackgroundKind::Image;
      else return bad();
    }
    else if (key == "background_a" || key == "background_value") { if (!to_u8(value, &c.arena.bg_a)) return bad(); }
    else if (key == "background_b") { if (!to_u8(value, &c.arena.bg_b)) return bad(); }
    else if (key == "checker_period_deg") { if (!to_double(value, &d) || d <= 0) return bad(); c.arena.checker_period_deg = d; }
    else if (key == "background_image") { ctx.image_path = value; }
    else if (key == "duration_frames") { if (!to_int64(value, &i)) return bad(); c.duration_frames = i; }
    else if (key == "seed") { if (!to_int64(value, &i) || i < 0) return bad(); c.seed = static_cast<std::uint64_t>(i); }
    else if (key == "mode") {
      if (value == "escape") c.mode = BehaviorMode::Escape;
      else if (value == "spin") c.mode = BehaviorMode::Spin;
      else return bad();
    }
    else if (key == "wall_recovery") {
      if (value == "on" || value == "true") c.wall_recovery = true;
      else if (value == "off" || value == "false") c.wall_recovery = false;
      else return bad();
    }
    else if (key == "collision_diameter") { if (!to_double(value, &d) || d <= 0) return bad(); c.collision_diameter = d; }
    else { *why = "unknown key '" + key + "'"; return false; }
    return true;
  }

  RobotSpec& r = *ctx.robot;
  if (key == "controller") {
    if (value == "pipeline") r.controller = ControllerKind::Pipeline;
    else if (value == "pipeline_fixed") r.controller = ControllerKind::PipelineFixed;
    else if (value == "script") r.controller = ControllerKind::Script;
    else if (value == "blind") r.controller = ControllerKind::Blind;
    else return bad();
  }
  else if (key == "x") { if (!to_double(value, &d)) return bad(); r.start.x = d; }
  else if (key == "y") { if (!to_double(value, &d)) return bad(); r.start.y = d; }
  else if (key == "heading") { if (!to_double(value, &d)) return bad(); r.start.heading = wrap_deg(d); }
  else if (key == "speed") { if (!to_double(value, &d) || d < 0) return bad(); r.speed = d; }
  else if (key == "goal_x") { if (!to_double(value, &d)) return bad(); r.goal_x = d; }
  else if (key == "goal_y") { if (!to_double(value, &d)) return bad(); r.goal_y = d; }
  else if (key == "standoff") { if (!to_double(value, &d) || d < 0) return bad(); r.standoff = d; }
  else if (key == "script_mode") {
    if (value == "oneway") r.script_mode = ScriptMode::OneWay;
    else if (value == "pingpong") r.script_mode = ScriptMode::PingPong;
    else return bad();
  }
  else { *why = "unknown robot key '" + key + "'"; return false; }
  return true;
}

std::optional<ScenarioConfig> parse_lines(std::istream& in,
                                          const std::filesystem::path& base_dir,
                                          std::string* err) {
  ParseCtx ctx;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[robot]") {
      ctx.cfg.robots.emplace_back();
      ctx.robot = &ctx.cfg.robots.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (err) *err = "line " + std::to_string(lineno) + ": expected key = value, got '" + line + "'";
      return std::nullopt;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::string why;
    if (key.empty() || value.empty() || !apply_key(ctx, key, value, &why)) {
      if (why.empty()) why = "empty key or value";
      if (err) *err = "line " + std::to_string(lineno) + ": " + why;
      return std::nullopt;
    }
  }
  if (!ctx.image_path.empty()) {
    try {
      ctx.cfg.arena.bg_image = read_pgm(base_dir / ctx.image_path);
    } catch (const std::exception& e) {
      if (err) *err = std::string("background_image: ") + e.what();
      return std::nullopt;
    }
  }
  const std::string v = ctx.cfg.validate();
  if (!v.empty()) {
    if (err) *err = v;
    return std::nullopt;
  }
  return ctx.cfg;
}

}  // namespace

std::string ScenarioConfig::validate() const {
  if (robots.empty()) return "scenario needs at least one robot";
  if (duration_frames < 0) return "duration_frames must be >= 0";
  if (arena.width <= 0 || arena.height <= 0) return "arena bounds must be positive";
  if (arena.background == BackgroundKind::Image && arena.bg_image.size() == 0) {
    return "background = image requires background_image";
  }
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const auto& r = robots[i];
    if (r.start.x < 0 || r.start.x > arena.width || r.start.y < 0 ||
        r.start.y > arena.height) {
      return "robot " + std::to_string(i) + " starts outside the arena";
    }
    if (r.controller == ControllerKind::Script &&
        r.goal_x.has_value() != r.goal_y.has_value()) {
      return "robot " + std::to_string(i) + " has a partial goal";
    }
  }
  return {};
}

std::optional<ScenarioConfig> parse_scenario_file(
    const std::filesystem::path& path, std::string* err) {
  std::ifstream in(path);
  if (!in) {
    if (err) *err = "cannot open scenario file: " + path.string();
    return std::nullopt;
  }
  return parse_lines(in, path.parent_path(), err);
}

std::optional<ScenarioConfig> parse_scenario_text(const std::string& text,
                                                  std::string* err) {
  std::istringstream in(text);
  return parse_lines(in, std::filesystem::current_path(), err);
}

std::optional<double> TrialLog::success_rate() const {
  if (opportunities <= 0) return std::nullopt;
  return 1.0 - static_cast<double>(wall_episodes + pair_episodes) /
                   static_cast<double>(opportunities);
}

namespace {

struct RobotRuntime {
  ControllerKind kind = ControllerKind::Blind;
  std::unique_ptr<Pipeline> pipe;
  // script state
  double goal_x = 0, goal_y = 0, home_x = 0, home_y = 0;
  bool has_goal = false;
  bool outbound = true;
  ScriptMode script_mode = ScriptMode::OneWay;
  bool script_done = false;
  double standoff = 0, speed = 10;
  // wall-contact recovery
  int recovery_left = 0;
  double recovery_target = 0;
  // gated-run tracking
  bool prev_gated = false;
};

MotorCommand script_command(RobotRuntime& rt, const Pose& pose, double dt) {
  if (!rt.has_goal || rt.script_done) return MotorCommand{0.0, 0.0};
  const double dx = rt.goal_x - pose.x;
  const double dy = rt.goal_y - pose.y;
  const double dist = std::hypot(dx, dy);
  const double reach = std::max(rt.standoff, 1e-6);
  if (dist <= reach + 1e-9) {
    if (rt.script_mode == ScriptMode::PingPong) {
      std::swap(rt.goal_x, rt.home_x);
      std::swap(rt.goal_y, rt.home_y);
      return MotorCommand{0.0, 0.0};
    }
    rt.script_done = true;
    return MotorCommand{0.0, 0.0};
  }
  const double desired = rad2deg(std::atan2(dy, dx));
  const double err = wrap_deg(desired - pose.heading);
  // Generous scripted turn rate so routes stay straight after the first step.
  const double turn = std::clamp(err / dt, -720.0, 720.0);
  double lin = rt.speed;
  if (std::abs(err) > 30.0) lin = 0.0;  // align first
  const double remaining = dist - rt.standoff;
  lin = std::min(lin, remaining / dt);
  return MotorCommand{lin, turn};
}

}  // namespace

TrialLog run_trial(const ScenarioConfig& cfg_in, const RunOptions& opts) {
  ScenarioConfig cfg = cfg_in;
  if (opts.duration_override) cfg.duration_frames = *opts.duration_override;
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  if (opts.mode_override) cfg.mode = *opts.mode_override;
  const std::string verr = cfg.validate();
  if (!verr.empty()) throw std::invalid_argument("run_trial: " + verr);

  RuntimeParams rp = opts.params;
  rp.sync();
  MotorConfig motor = rp.motor;
  motor.mode = cfg.mode;
  const double dt = motor.dt_s;

  CameraModel cam;
  cam.fov_deg = kFrameWidth * rp.model.alpha;
  cam.vfov_deg = kFrameHeight * rp.model.alpha;

  WorldState world;
  world.arena = cfg.arena;
  std::vector<RobotRuntime> rt(cfg.robots.size());
  for (std::size_t i = 0; i < cfg.robots.size(); ++i) {
    const RobotSpec& spec = cfg.robots[i];
    RobotBody body;
    body.pose = spec.start;
    body.diameter = cfg.collision_diameter;
    body.visual_height = rp.robot_visual_height;
    body.luminance = rp.robot_luminance;
    world.robots.push_back(body);

    rt[i].kind = spec.controller;
    rt[i].speed = spec.speed;
    rt[i].standoff = spec.standoff;
    rt[i].script_mode = spec.script_mode;
    if (spec.goal_x && spec.goal_y) {
      rt[i].has_goal = true;
      rt[i].goal_x = *spec.goal_x;
      rt[i].goal_y = *spec.goal_y;
      rt[i].home_x = spec.start.x;
      rt[i].home_y = spec.start.y;
    }
    if (spec.controller == ControllerKind::Pipeline ||
        spec.controller == ControllerKind::PipelineFixed) {
      PipelineConfig pc;
      pc.params = rp.model;
      pc.motor = motor;
      pc.compat_eq6 = opts.compat_eq6;
      pc.compat_eq9 = opts.compat_eq9;
      pc.compact = opts.compact;
      rt[i].pipe = std::make_unique<Pipeline>(pc);
    }
  }

  int focus = opts.focus_robot;
  if (focus < 0) {
    for (std::size_t i = 0; i < rt.size(); ++i) {
      if (rt[i].pipe) {
        focus = static_cast<int>(i);
        break;
      }
    }
  }
  const bool dump_frames = !opts.dump_frames_dir.empty();
  if (dump_frames) std::filesystem::create_directories(opts.dump_frames_dir);

  std::mt19937_64 rng(cfg.seed);
  CollisionTracker tracker;
  TrialLog log;
  log.frames = cfg.duration_frames;

  for (std::int64_t f = 0; f < cfg.duration_frames; ++f) {
    std::vector<MotorCommand> cmds(world.robots.size());
    for (std::size_t i = 0; i < world.robots.size(); ++i) {
      const Pose& pose = world.robots[i].pose;
      BehaviorRow row;
      row.frame = f;
      row.robot = static_cast<int>(i);
      MotorCommand cmd;

      if (rt[i].pipe) {
        const Frame view = render_view(world, static_cast<int>(i), cam);
        if (dump_frames && static_cast<int>(i) == focus) {
          char name[32];
          std::snprintf(name, sizeof(name), "frame_%05lld.pgm",
                        static_cast<long long>(f));
          write_pgm(opts.dump_frames_dir / name, view.img);
        }
        FrameTrace trace;
        const bool want_trace = opts.traces != nullptr &&
                                static_cast<int>(i) == focus &&
                                f >= opts.trace_from && f <= opts.trace_to;
        const bool timed =
            opts.focus_frame_ms != nullptr && static_cast<int>(i) == focus;
        const auto t0 = std::chrono::steady_clock::now();
        cmd = rt[i].pipe->process_frame(view, pose.heading,
                                        want_trace ? &trace : nullptr);
        if (timed) {
          const auto t1 = std::chrono::steady_clock::now();
          opts.focus_frame_ms->push_back(
              std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        if (want_trace) opts.traces->push_back(std::move(trace));
        if (rt[i].kind == ControllerKind::PipelineFixed) cmd = MotorCommand{};

        const Pipeline& p = *rt[i].pipe;
        const FsmState& acted = p.last_acted_state();
        row.state = state_name(acted.kind);
        row.raw_sum = p.last_summary().raw_sum;
        row.strength = p.last_summary().strength;
        row.centroid_x = p.last_summary().centroid_x;
        switch (acted.kind) {
          case FsmState::Kind::LongTakeoff:
            row.target_heading = acted.target_heading;
            break;
          case FsmState::Kind::ShortTakeoff:
            row.target_heading = acted.phase == 1 ? acted.theta1 : acted.theta2;
            break;
          default:
            break;
        }
        log.state_frames[row.state]++;
        const bool gated = p.last_any_gated();
        if (gated && !rt[i].prev_gated) ++log.opportunities;
        rt[i].prev_gated = gated;

        for (const auto& fl : p.fields().fields) {
          log.attention[static_cast<int>(i)].push_back(AttentionRow{
              f, fl.id, fl.cx, fl.cy,
              fl.history.empty() ? 0.0 : fl.history.back()});
        }
      } else if (rt[i].kind == ControllerKind::Script) {
        cmd = script_command(rt[i], pose, dt);
        row.state = "script";
      } else {
        cmd = MotorCommand{rt[i].speed, 0.0};
        row.state = "blind";
      }

      // Scripted contact recovery stands in for the physical shoves that keep
      // real trials moving; it applies only to free-running controllers.
      if (rt[i].recovery_left > 0) {
        const double err = wrap_deg(rt[i].recovery_target - pose.heading);
        cmd = MotorCommand{-8.0,
                           std::clamp(err / dt, -motor.max_turn_rate,
                                      motor.max_turn_rate)};
        --rt[i].recovery_left;
        if (std::abs(err) <= 10.0) rt[i].recovery_left = 0;
      }
      row.linear = cmd.linear;
      row.angular = cmd.angular;
      cmds[i] = cmd;
      log.behavior.push_back(std::move(row));
    }

    const StepResult step = step_world(world, cmds, dt);

    auto events = tracker.step(world, cfg.collision_diameter);
    for (auto& e : events) {
      e.frame = f;
      if (e.wall) ++log.wall_episodes;
      else ++log.pair_episodes;
      log.events.push_back(e);
    }

    if (cfg.wall_recovery) {
      for (std::size_t i = 0; i < world.robots.size(); ++i) {
        const bool eligible = rt[i].kind == ControllerKind::Pipeline ||
                              rt[i].kind == ControllerKind::Blind;
        if (step.wall_clamped[i] && eligible && rt[i].recovery_left == 0) {
          const double to_center =
              rad2deg(std::atan2(world.arena.height / 2.0 - world.robots[i].pose.y,
                                 world.arena.width / 2.0 - world.robots[i].pose.x));
          const double jitter = static_cast<double>(rng() % 121) - 60.0;
          rt[i].recovery_target = wrap_deg(to_center + jitter);
          rt[i].recovery_left = 18 + static_cast<int>(rng() % 13);
        }
      }
    }

    for (std::size_t i = 0; i < world.robots.size(); ++i) {
      log.trajectories.push_back(TrajectoryRow{f, static_cast<int>(i),
                                               world.robots[i].pose.x,
                                               world.robots[i].pose.y,
                                               world.robots[i].pose.heading});
    }
  }
  return log;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void write_trajectories_csv(const std::filesystem::path& path,
                            const TrialLog& log) {
  std::ofstream out(path);
  out << "frame,robot_id,x,y,heading\n";
  for (const auto& r : log.trajectories) {
    out << r.frame << ',' << r.robot << ',' << fmt(r.x) << ',' << fmt(r.y)
        << ',' << fmt(r.heading) << '\n';
  }
}

void write_events_csv(const std::filesystem::path& path, const TrialLog& log) {
  std::ofstream out(path);
  out << "frame,kind,robot_a,robot_b,x,y\n";
  for (const auto& e : log.events) {
    out << e.frame << ',' << (e.wall ? "wall" : "robot") << ',' << e.a << ','
        << e.b << ',' << fmt(e.x) << ',' << fmt(e.y) << '\n';
  }
}

void write_behavior_csv(const std::filesystem::path& path,
                        const TrialLog& log) {
  std::ofstream out(path);
  out << "frame,robot_id,state,raw_sum,strength,centroid_x,target_heading,"
         "linear,angular\n";
  for (const auto& b : log.behavior) {
    out << b.frame << ',' << b.robot << ',' << b.state << ',' << fmt(b.raw_sum)
        << ',' << fmt(b.strength) << ','
        << (b.centroid_x ? fmt(*b.centroid_x) : std::string()) << ','
        << (b.target_heading ? fmt(*b.target_heading) : std::string()) << ','
        << fmt(b.linear) << ',' << fmt(b.angular) << '\n';
  }
}

void write_attention_csv(const std::filesystem::path& path,
                         const std::vector<AttentionRow>& rows) {
  std::ofstream out(path);
  out << "frame,af_id,cx,cy,resp\n";
  for (const auto& r : rows) {
    out << r.frame << ',' << r.af_id << ',' << fmt(r.cx) << ',' << fmt(r.cy)
        << ',' << fmt(r.resp) << '\n';
  }
}

std::string summary_text(const ScenarioConfig& cfg, const RunOptions& opts,
                         const TrialLog& log,
                         const std::vector<std::string>& override_echo) {
  std::ostringstream os;
  os << "frames = " << log.frames << "\n";
  os << "seed = " << (opts.seed_override ? *opts.seed_override : cfg.seed) << "\n";
  os << "mode = "
     << ((opts.mode_override ? *opts.mode_override : cfg.mode) ==
                 BehaviorMode::Escape
             ? "escape"
             : "spin")
     << "\n";
  os << "collision_episodes = " << log.wall_episodes + log.pair_episodes
     << " (wall " << log.wall_episodes << ", robot-robot " << log.pair_episodes
     << ")\n";
  os << "avoidance_opportunities = " << log.opportunities << "\n";
  if (auto sr = log.success_rate()) {
    os << "success_rate = " << fmt(*sr) << "\n";
  } else {
    os << "success_rate = n/a (no opportunities)\n";
  }
  os << "state_frames:";
  if (log.state_frames.empty()) os << " none";
  for (const auto& [k, v] : log.state_frames) os << ' ' << k << '=' << v;
  os << "\n";
  os << "overrides:";
  if (override_echo.empty()) os << " none";
  for (const auto& o : override_echo) os << ' ' << o;
  os << "\n";
  os << "parameters:\n" << opts.params.describe();
  return os.str();
}

}  // namespace lplc2
