#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lplc2/visuomotor.hpp"

namespace lplc2 {

// Network parameters. Defaults follow the reference configuration of the
// model; c_d and s are configuration knobs for the correlator delay and
// sampling distance.
struct ModelParams {
  double w = 0.25;          // ON-channel weight
  int n = 3;                // correlator partners per pixel
  int r_af = 36;            // attention-field half-side, px
  double t_a = 100.0;       // spawn threshold on saliency
  double t_d = 5000.0;      // prune threshold on mean response
  int d = 4;                // response-accumulation window, frames
  double w_s = 4000.0;      // speed sigmoid weight
  double alpha = 0.707;     // pixel-to-degree coefficient
  double t_s = 7000.0;      // short-mode threshold on raw_sum
  double t_i_ms = 100.0 / 3.0;  // inter-frame interval (33.33 ms)
  int c_d = 1;              // correlator delay, frames
  int s = 1;                // correlator sampling increment, px

  // Returns an empty string when valid, else a diagnostic.
  std::string validate() const;
};

// Everything a trial run can override: model parameters, motor constants,
// and how agents are drawn.
struct RuntimeParams {
  ModelParams model;
  MotorConfig motor;
  double robot_visual_height = 4.0;  // cm, rendered vertical extent
  std::uint8_t robot_luminance = 30;

  // Copies the shared values (alpha, t_s, frame interval) into the motor
  // config. Call after mutating `model`.
  void sync();

  // Applies "key=value"; returns false with *err set for unknown keys or
  // unparsable values.
  bool set_key(const std::string& key, const std::string& value,
               std::string* err);
  static const std::vector<std::string>& known_keys();

  // One "key = value" line per parameter, for run summaries.
  std::string describe() const;
};

}  // namespace lplc2
