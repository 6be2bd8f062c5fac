#include "lplc2/params.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace lplc2 {

std::string ModelParams::validate() const {
  if (w <= 0.0) return "w must be > 0";
  if (n < 1) return "n must be >= 1";
  if (r_af < 1 || r_af > 49) return "r_af must be in [1, 49]";
  if (t_a <= 0.0) return "t_a must be > 0";
  if (t_d <= 0.0) return "t_d must be > 0";
  if (d < 1) return "d must be >= 1";
  if (w_s <= 0.0) return "w_s must be > 0";
  if (alpha <= 0.0) return "alpha must be > 0";
  if (t_s <= 0.0) return "t_s must be > 0";
  if (t_i_ms <= 0.0) return "t_i_ms must be > 0";
  if (c_d < 1) return "c_d must be >= 1";
  if (s < 1) return "s must be >= 1";
  return {};
}

void RuntimeParams::sync() {
  motor.alpha = model.alpha;
  motor.t_s = model.t_s;
  motor.dt_s = model.t_i_ms / 1000.0;
}

namespace {

bool parse_double(const std::string& v, double* out) {
  try {
    std::size_t pos = 0;
    *out = std::stod(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& v, int* out) {
  try {
    std::size_t pos = 0;
    *out = std::stoi(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

bool RuntimeParams::set_key(const std::string& key, const std::string& value,
                            std::string* err) {
  auto bad_value = [&] {
    if (err) *err = "invalid value '" + value + "' for parameter '" + key + "'";
    return false;
  };
  double dv = 0.0;
  int iv = 0;

  if (key == "w") { if (!parse_double(value, &dv)) return bad_value(); model.w = dv; }
  else if (key == "n") { if (!parse_int(value, &iv)) return bad_value(); model.n = iv; }
  else if (key == "r_af") { if (!parse_int(value, &iv)) return bad_value(); model.r_af = iv; }
  else if (key == "t_a") { if (!parse_double(value, &dv)) return bad_value(); model.t_a = dv; }
  else if (key == "t_d") { if (!parse_double(value, &dv)) return bad_value(); model.t_d = dv; }
  else if (key == "d") { if (!parse_int(value, &iv)) return bad_value(); model.d = iv; }
  else if (key == "w_s") { if (!parse_double(value, &dv)) return bad_value(); model.w_s = dv; }
  else if (key == "alpha") { if (!parse_double(value, &dv)) return bad_value(); model.alpha = dv; }
  else if (key == "t_s") { if (!parse_double(value, &dv)) return bad_value(); model.t_s = dv; }
  else if (key == "t_i_ms") { if (!parse_double(value, &dv)) return bad_value(); model.t_i_ms = dv; }
  else if (key == "c_d") { if (!parse_int(value, &iv)) return bad_value(); model.c_d = iv; }
  else if (key == "s") { if (!parse_int(value, &iv)) return bad_value(); model.s = iv; }
  else if (key == "wander_speed") { if (!parse_double(value, &dv)) return bad_value(); motor.wander_speed = dv; }
  else if (key == "max_speed") { if (!parse_double(value, &dv)) return bad_value(); motor.max_speed = dv; }
  else if (key == "retreat_speed") { if (!parse_double(value, &dv)) return bad_value(); motor.retreat_speed = dv; }
  else if (key == "max_turn_rate") { if (!parse_double(value, &dv)) return bad_value(); motor.max_turn_rate = dv; }
  else if (key == "heading_tol") { if (!parse_double(value, &dv)) return bad_value(); motor.heading_tol = dv; }
  else if (key == "escape_frames") { if (!parse_int(value, &iv)) return bad_value(); motor.escape_frames = iv; }
  else if (key == "spin_frames") { if (!parse_int(value, &iv)) return bad_value(); motor.spin_frames = iv; }
  else if (key == "robot_visual_height") { if (!parse_double(value, &dv)) return bad_value(); robot_visual_height = dv; }
  else if (key == "robot_luminance") {
    if (!parse_int(value, &iv) || iv < 0 || iv > 255) return bad_value();
    robot_luminance = static_cast<std::uint8_t>(iv);
  } else {
    if (err) *err = "unknown parameter '" + key + "'";
    return false;
  }
  sync();
  return true;
}

const std::vector<std::string>& RuntimeParams::known_keys() {
  static const std::vector<std::string> keys = {
      "w", "n", "r_af", "t_a", "t_d", "d", "w_s", "alpha", "t_s", "t_i_ms",
      "c_d", "s", "wander_speed", "max_speed", "retreat_speed",
      "max_turn_rate", "heading_tol", "escape_frames", "spin_frames",
      "robot_visual_height", "robot_luminance"};
  return keys;
}

std::string RuntimeParams::describe() const {
  char buf[256];
  std::ostringstream os;
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s = %.6g\n", key, v);
    os << buf;
  };
  line("w", model.w);
  line("n", model.n);
  line("r_af", model.r_af);
  line("t_a", model.t_a);
  line("t_d", model.t_d);
  line("d", model.d);
  line("w_s", model.w_s);
  line("alpha", model.alpha);
  line("t_s", model.t_s);
  line("t_i_ms", model.t_i_ms);
  line("c_d", model.c_d);
  line("s", model.s);
  line("wander_speed", motor.wander_speed);
  line("max_speed", motor.max_speed);
  line("retreat_speed", motor.retreat_speed);
  line("max_turn_rate", motor.max_turn_rate);
  line("heading_tol", motor.heading_tol);
  line("escape_frames", motor.escape_frames);
  line("spin_frames", motor.spin_frames);
  line("robot_visual_height", robot_visual_height);
  line("robot_luminance", robot_luminance);
  return os.str();
}

}  // namespace lplc2
