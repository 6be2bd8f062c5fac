#pragma once

#include <optional>
#include <vector>

#include "lplc2/attention.hpp"
#include "lplc2/integrator.hpp"

namespace lplc2 {

// Wrap an angle into (-180, 180] degrees.
double wrap_deg(double a);

// Population summary of the per-field looming responses.
struct ThreatSummary {
  double raw_sum = 0.0;    // sum of all field response values
  double strength = 0.5;   // 1 / (1 + exp(-raw_sum / w_s))
  std::optional<double> centroid_x;  // response-weighted column; set iff raw_sum > 0
};

ThreatSummary summarize(const FieldSet& fields,
                        const std::vector<Lplc2Response>& responses,
                        double w_s);

// Body-frame target headings (0 deg = current forward, right turns positive).
// Long mode turns 180 deg away from the threat column:
//   wrap(alpha * (centroid_x - 49) + 180)
double long_heading(double centroid_x, double alpha);

// Two-stage short-mode headings. With bearing b = alpha * (centroid_x - 49):
//   theta1 = b - 90 if b >= 0 else b + 90
//   theta2 = theta1 - 90 if theta1 < 0 else theta1 + 90
// both wrapped into (-180, 180].
struct ShortHeadings {
  double theta1 = 0.0;
  double theta2 = 0.0;
};
ShortHeadings short_headings(double centroid_x, double alpha);

enum class BehaviorMode { Escape, Spin };

struct MotorConfig {
  double wander_speed = 10.0;    // cm/s
  double max_speed = 20.0;       // cm/s
  double retreat_speed = 20.0;   // cm/s, short-mode phase-1 reverse
  double max_turn_rate = 360.0;  // deg/s
  double heading_tol = 5.0;      // deg
  int escape_frames = 30;
  int spin_frames = 15;
  double dt_s = 1.0 / 30.0;      // frame interval in seconds
  double alpha = 0.707;
  double t_s = 7000.0;
  BehaviorMode mode = BehaviorMode::Escape;
};

// Exactly one state is active; heading fields are world-frame degrees,
// latched at state entry.
struct FsmState {
  enum class Kind { Wander, LongTakeoff, ShortTakeoff, Escape, Spin };
  Kind kind = Kind::Wander;
  double target_heading = 0.0;               // LongTakeoff
  int phase = 1;                             // ShortTakeoff: 1 or 2
  double theta1 = 0.0, theta2 = 0.0;         // ShortTakeoff phase targets
  double trigger_bearing = 0.0;              // ShortTakeoff: threat bearing at entry
  int remaining = 0;                         // Escape / Spin countdown
};

const char* state_name(FsmState::Kind k);

struct MotorCommand {
  double linear = 0.0;   // cm/s, negative = reverse
  double angular = 0.0;  // deg/s, positive = right turn
};

struct FsmResult {
  FsmState next;    // successor for the following frame
  FsmState acted;   // state that produced this frame's command (after overrides)
  MotorCommand cmd;
};

// One controller step. Threat-triggered entries (wander -> takeoff, the
// short-mode override) act within the same frame; completion transitions
// (takeoff -> escape, escape -> wander) take effect on the next step.
FsmResult fsm_step(const FsmState& state, const ThreatSummary& summary,
                   bool any_gated, double heading_deg, const MotorConfig& cfg);

}  // namespace lplc2
