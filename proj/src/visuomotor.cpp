#include "lplc2/visuomotor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lplc2 {

double wrap_deg(double a) {
  a = std::fmod(a, 360.0);
  if (a > 180.0) {
    a -= 360.0;
  } else if (a <= -180.0) {
    a += 360.0;
  }
  return a;
}

ThreatSummary summarize(const FieldSet& fields,
                        const std::vector<Lplc2Response>& responses,
                        double w_s) {
  if (fields.fields.size() != responses.size()) {
    throw std::invalid_argument("summarize: responses not aligned with fields");
  }
  ThreatSummary out;
  double weighted_x = 0.0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    out.raw_sum += responses[i].value;
    weighted_x += fields.fields[i].cx * responses[i].value;
  }
  out.strength = 1.0 / (1.0 + std::exp(-out.raw_sum / w_s));
  if (out.raw_sum > 0.0) {
    out.centroid_x = weighted_x / out.raw_sum;
  }
  return out;
}

double long_heading(double centroid_x, double alpha) {
  return wrap_deg(alpha * (centroid_x - 49.0) + 180.0);
}

ShortHeadings short_headings(double centroid_x, double alpha) {
  const double b = alpha * (centroid_x - 49.0);
  ShortHeadings h;
  h.theta1 = wrap_deg(b >= 0.0 ? b - 90.0 : b + 90.0);
  h.theta2 = wrap_deg(h.theta1 < 0.0 ? h.theta1 - 90.0 : h.theta1 + 90.0);
  return h;
}

const char* state_name(FsmState::Kind k) {
  switch (k) {
    case FsmState::Kind::Wander: return "wander";
    case FsmState::Kind::LongTakeoff: return "long_takeoff";
    case FsmState::Kind::ShortTakeoff: return "short_takeoff";
    case FsmState::Kind::Escape: return "escape";
    case FsmState::Kind::Spin: return "spin";
  }
  return "?";
}

namespace {

double turn_toward(double err_deg, const MotorConfig& cfg) {
  // Full rate until the error fits in one step, then exactly close it.
  const double want = err_deg / cfg.dt_s;
  return std::clamp(want, -cfg.max_turn_rate, cfg.max_turn_rate);
}

}  // namespace

FsmResult fsm_step(const FsmState& state, const ThreatSummary& summary,
                   bool any_gated, double heading_deg, const MotorConfig& cfg) {
  using Kind = FsmState::Kind;
  FsmState st = state;

  if (cfg.mode == BehaviorMode::Escape) {
    if (summary.raw_sum > cfg.t_s && st.kind != Kind::ShortTakeoff &&
        summary.centroid_x.has_value()) {
      // A fierce stimulus overrides whatever is running; the triggering
      // bearing is latched for the whole maneuver.
      const ShortHeadings h = short_headings(*summary.centroid_x, cfg.alpha);
      st = FsmState{};
      st.kind = Kind::ShortTakeoff;
      st.phase = 1;
      st.trigger_bearing =
          wrap_deg(heading_deg + cfg.alpha * (*summary.centroid_x - 49.0));
      st.theta1 = wrap_deg(heading_deg + h.theta1);
      st.theta2 = wrap_deg(heading_deg + h.theta2);
    } else if (st.kind == Kind::Wander && summary.raw_sum > 0.0 && any_gated) {
      st = FsmState{};
      st.kind = Kind::LongTakeoff;
      st.target_heading =
          wrap_deg(heading_deg + long_heading(*summary.centroid_x, cfg.alpha));
    }
  } else {  // spin mode: wander/spin cycle only
    if (st.kind == Kind::Wander && summary.raw_sum > 0.0 && any_gated) {
      st = FsmState{};
      st.kind = Kind::Spin;
      st.remaining = cfg.spin_frames;
    }
  }

  FsmResult r;
  r.next = st;
  r.acted = st;
  switch (st.kind) {
    case Kind::Wander: {
      r.cmd = MotorCommand{cfg.wander_speed, 0.0};
      break;
    }
    case Kind::LongTakeoff: {
      const double err = wrap_deg(st.target_heading - heading_deg);
      r.cmd = MotorCommand{0.0, turn_toward(err, cfg)};
      if (std::abs(err) <= cfg.heading_tol) {
        r.next = FsmState{};
        r.next.kind = Kind::Escape;
        r.next.remaining = cfg.escape_frames;
      }
      break;
    }
    case Kind::ShortTakeoff: {
      if (st.phase == 1) {
        const double err = wrap_deg(st.theta1 - heading_deg);
        r.cmd = MotorCommand{-cfg.retreat_speed, turn_toward(err, cfg)};
        if (std::abs(err) <= cfg.heading_tol) {
          r.next.phase = 2;
        }
      } else {
        const double err = wrap_deg(st.theta2 - heading_deg);
        r.cmd =
            MotorCommand{summary.strength * cfg.max_speed, turn_toward(err, cfg)};
        if (std::abs(err) <= cfg.heading_tol) {
          r.next = FsmState{};
          r.next.kind = Kind::Escape;
          r.next.remaining = cfg.escape_frames;
        }
      }
      break;
    }
    case Kind::Escape: {
      r.cmd = MotorCommand{summary.strength * cfg.max_speed, 0.0};
      if (st.remaining <= 1) {
        r.next = FsmState{};  // back to wander
      } else {
        r.next.remaining = st.remaining - 1;
      }
      break;
    }
    case Kind::Spin: {
      r.cmd = MotorCommand{0.0, cfg.max_turn_rate};
      if (st.remaining <= 1) {
        r.next = FsmState{};
      } else {
        r.next.remaining = st.remaining - 1;
      }
      break;
    }
  }
  return r;
}

}  // namespace lplc2
