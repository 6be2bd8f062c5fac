#include <doctest.h>

#include <cmath>

#include "lplc2/visuomotor.hpp"

using namespace lplc2;

TEST_SUITE_BEGIN("visuomotor");

namespace {

FieldSet two_fields(double x0, double x1) {
  FieldSet fs;
  AttentionField a, b;
  a.id = 0;
  a.cx = x0;
  a.cy = 35;
  b.id = 1;
  b.cx = x1;
  b.cy = 35;
  fs.fields = {a, b};
  fs.next_id = 2;
  return fs;
}

ThreatSummary summary_with(double raw, double cx) {
  ThreatSummary s;
  s.raw_sum = raw;
  s.strength = 1.0 / (1.0 + std::exp(-raw / 4000.0));
  if (raw > 0) s.centroid_x = cx;
  return s;
}

MotorConfig default_motor() { return MotorConfig{}; }

}  // namespace

TEST_CASE("wrap_deg lands in (-180, 180]") {
  CHECK(wrap_deg(180.0) == 180.0);
  CHECK(wrap_deg(-180.0) == 180.0);
  CHECK(wrap_deg(190.0) == doctest::Approx(-170.0));
  CHECK(wrap_deg(540.0) == doctest::Approx(180.0));
  CHECK(wrap_deg(-350.0) == doctest::Approx(10.0));
  CHECK(wrap_deg(0.0) == 0.0);
}

TEST_CASE("summarize: zero responses give neutral strength and no centroid") {
  FieldSet fs = two_fields(10, 90);
  std::vector<Lplc2Response> r(2);
  const ThreatSummary s = summarize(fs, r, 4000.0);
  CHECK(s.raw_sum == 0.0);
  CHECK(s.strength == 0.5);
  CHECK_FALSE(s.centroid_x.has_value());
}

TEST_CASE("summarize: sigmoid hits 0.75 at w_s * ln 3") {
  FieldSet fs = two_fields(10, 90);
  std::vector<Lplc2Response> r(2);
  r[0].value = 4000.0 * std::log(3.0);
  r[0].gated = true;
  const ThreatSummary s = summarize(fs, r, 4000.0);
  CHECK(s.strength == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("summarize: equal responses average the centroids") {
  FieldSet fs = two_fields(10, 90);
  std::vector<Lplc2Response> r(2);
  r[0] = {500.0, true};
  r[1] = {500.0, true};
  const ThreatSummary s = summarize(fs, r, 4000.0);
  REQUIRE(s.centroid_x.has_value());
  CHECK(*s.centroid_x == doctest::Approx(50.0));
}

TEST_CASE("strength is monotone and above 1/2 for positive input") {
  FieldSet fs = two_fields(10, 90);
  double prev = 0.5;
  for (double raw : {1.0, 100.0, 3000.0, 10000.0, 40000.0}) {
    std::vector<Lplc2Response> r(2);
    r[0] = {raw, true};
    const ThreatSummary s = summarize(fs, r, 4000.0);
    CHECK(s.strength > 0.5);
    CHECK(s.strength < 1.0);
    CHECK(s.strength > prev);
    prev = s.strength;
  }
}

TEST_CASE("long heading turns 180 away from the threat column") {
  CHECK(long_heading(49.0, 0.707) == doctest::Approx(180.0));
  CHECK(long_heading(0.0, 0.707) == doctest::Approx(145.357).epsilon(1e-9));
  CHECK(long_heading(98.0, 0.707) == doctest::Approx(-145.357).epsilon(1e-9));
}

TEST_CASE("long heading reflection symmetry") {
  for (double x = 0.0; x <= 98.0; x += 7.0) {
    const double a = long_heading(x, 0.707);
    const double b = long_heading(98.0 - x, 0.707);
    CHECK(wrap_deg(a + b) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("short headings trace the two-stage escape") {
  const ShortHeadings right = short_headings(98.0, 0.707);
  CHECK(right.theta1 == doctest::Approx(-55.357).epsilon(1e-9));
  CHECK(right.theta2 == doctest::Approx(-145.357).epsilon(1e-9));

  const ShortHeadings left = short_headings(0.0, 0.707);
  CHECK(left.theta1 == doctest::Approx(55.357).epsilon(1e-9));
  CHECK(left.theta2 == doctest::Approx(145.357).epsilon(1e-9));

  const ShortHeadings center = short_headings(49.0, 0.707);
  CHECK(center.theta1 == doctest::Approx(-90.0));
  CHECK(center.theta2 == doctest::Approx(180.0));  // -180 wraps to +180
}

TEST_CASE("wander holds course and speed without threat") {
  const FsmResult r =
      fsm_step(FsmState{}, summary_with(0.0, 0.0), false, 0.0, default_motor());
  CHECK(r.next.kind == FsmState::Kind::Wander);
  CHECK(r.cmd.linear == 10.0);
  CHECK(r.cmd.angular == 0.0);
}

TEST_CASE("strong threat overrides into short takeoff with reverse motion") {
  const FsmResult r = fsm_step(FsmState{}, summary_with(8000.0, 90.0), true, 0.0,
                               default_motor());
  CHECK(r.acted.kind == FsmState::Kind::ShortTakeoff);
  CHECK(r.next.kind == FsmState::Kind::ShortTakeoff);
  CHECK(r.next.phase == 1);
  CHECK(r.cmd.linear < 0.0);
}

TEST_CASE("gated threat promotes wander to long takeoff") {
  const FsmResult r = fsm_step(FsmState{}, summary_with(500.0, 0.0), true, 30.0,
                               default_motor());
  REQUIRE(r.acted.kind == FsmState::Kind::LongTakeoff);
  // target latched in world frame: heading + long_heading(centroid)
  CHECK(r.next.target_heading ==
        doctest::Approx(wrap_deg(30.0 + long_heading(0.0, 0.707))));
  CHECK(r.cmd.linear == 0.0);  // turns in place
}

TEST_CASE("long takeoff with zero error exits to escape next step") {
  FsmState st;
  st.kind = FsmState::Kind::LongTakeoff;
  st.target_heading = 42.0;
  const FsmResult r =
      fsm_step(st, summary_with(0.0, 0.0), false, 42.0, default_motor());
  CHECK(r.acted.kind == FsmState::Kind::LongTakeoff);
  CHECK(r.next.kind == FsmState::Kind::Escape);
  CHECK(r.cmd.angular == doctest::Approx(0.0));
}

TEST_CASE("short takeoff runs its two phases and ends opposite the trigger") {
  const MotorConfig cfg = default_motor();
  double heading = 0.0;
  FsmState st;
  ThreatSummary strong = summary_with(9000.0, 80.0);
  FsmResult r = fsm_step(st, strong, true, heading, cfg);
  REQUIRE(r.next.kind == FsmState::Kind::ShortTakeoff);
  const double bearing = r.next.trigger_bearing;

  // run the loop with the threat gone; latched headings steer the maneuver
  ThreatSummary calm = summary_with(0.0, 0.0);
  st = r.next;
  bool reached_phase2 = false;
  int guard = 0;
  while (st.kind == FsmState::Kind::ShortTakeoff && guard++ < 200) {
    r = fsm_step(st, calm, false, heading, cfg);
    if (st.phase == 1) CHECK(r.cmd.linear < 0.0);
    if (r.next.kind == FsmState::Kind::ShortTakeoff && r.next.phase == 2) {
      reached_phase2 = true;
    }
    heading = wrap_deg(heading + r.cmd.angular * cfg.dt_s);
    st = r.next;
  }
  CHECK(reached_phase2);
  REQUIRE(st.kind == FsmState::Kind::Escape);
  // final heading is 180 degrees from the trigger bearing, within tolerance
  const double away = wrap_deg(heading - wrap_deg(bearing + 180.0));
  CHECK(std::abs(away) <= cfg.heading_tol + 1e-9);
}

TEST_CASE("escape runs its countdown then returns to wander") {
  FsmState st;
  st.kind = FsmState::Kind::Escape;
  st.remaining = 3;
  const ThreatSummary calm = summary_with(0.0, 0.0);
  const MotorConfig cfg = default_motor();
  FsmResult r = fsm_step(st, calm, false, 0.0, cfg);
  CHECK(r.cmd.linear == doctest::Approx(0.5 * cfg.max_speed));
  CHECK(r.next.remaining == 2);
  r = fsm_step(r.next, calm, false, 0.0, cfg);
  r = fsm_step(r.next, calm, false, 0.0, cfg);
  CHECK(r.next.kind == FsmState::Kind::Wander);
}

TEST_CASE("short override dominates every state except itself") {
  const MotorConfig cfg = default_motor();
  const ThreatSummary strong = summary_with(9000.0, 20.0);
  for (auto kind : {FsmState::Kind::Wander, FsmState::Kind::LongTakeoff,
                    FsmState::Kind::Escape}) {
    FsmState st;
    st.kind = kind;
    st.remaining = 10;
    const FsmResult r = fsm_step(st, strong, true, 0.0, cfg);
    CHECK(r.acted.kind == FsmState::Kind::ShortTakeoff);
    CHECK(r.acted.phase == 1);
  }
  FsmState st;
  st.kind = FsmState::Kind::ShortTakeoff;
  st.phase = 2;
  st.theta1 = 10.0;
  st.theta2 = 100.0;
  const FsmResult r = fsm_step(st, strong, true, 0.0, cfg);
  CHECK(r.acted.phase == 2);          // phase preserved
  CHECK(r.acted.theta2 == 100.0);     // latched targets preserved
}

TEST_CASE("fsm is deterministic") {
  const MotorConfig cfg = default_motor();
  const ThreatSummary s = summary_with(6000.0, 70.0);
  FsmState st;
  st.kind = FsmState::Kind::LongTakeoff;
  st.target_heading = -120.0;
  const FsmResult a = fsm_step(st, s, true, 15.0, cfg);
  const FsmResult b = fsm_step(st, s, true, 15.0, cfg);
  CHECK(a.next.kind == b.next.kind);
  CHECK(a.cmd.linear == b.cmd.linear);
  CHECK(a.cmd.angular == b.cmd.angular);
}

TEST_CASE("spin mode spins in place then resumes wandering") {
  MotorConfig cfg = default_motor();
  cfg.mode = BehaviorMode::Spin;
  cfg.spin_frames = 3;
  FsmResult r = fsm_step(FsmState{}, summary_with(500.0, 49.0), true, 0.0, cfg);
  REQUIRE(r.acted.kind == FsmState::Kind::Spin);
  CHECK(r.cmd.linear == 0.0);
  CHECK(r.cmd.angular == cfg.max_turn_rate);
  // strong stimulus must not create escape states in spin mode
  r = fsm_step(r.next, summary_with(9000.0, 49.0), true, 0.0, cfg);
  CHECK(r.acted.kind == FsmState::Kind::Spin);
  r = fsm_step(r.next, summary_with(0.0, 0.0), false, 0.0, cfg);
  CHECK(r.next.kind == FsmState::Kind::Wander);
}

TEST_CASE("escape-entry heading opposes the threat for all columns, both modes") {
  const MotorConfig cfg = default_motor();
  for (double cx = 0.0; cx <= 98.0; cx += 9.8) {
    // long mode: drive the takeoff turn to completion
    double heading = 0.0;
    FsmResult r = fsm_step(FsmState{}, summary_with(500.0, cx), true, heading, cfg);
    FsmState st = r.next;
    heading = wrap_deg(heading + r.cmd.angular * cfg.dt_s);
    int guard = 0;
    while (st.kind == FsmState::Kind::LongTakeoff && guard++ < 200) {
      r = fsm_step(st, summary_with(0.0, 0.0), false, heading, cfg);
      heading = wrap_deg(heading + r.cmd.angular * cfg.dt_s);
      st = r.next;
    }
    REQUIRE(st.kind == FsmState::Kind::Escape);
    const double bearing = cfg.alpha * (cx - 49.0);
    CHECK(std::abs(wrap_deg(heading - (bearing + 180.0))) <=
          cfg.heading_tol + 1e-9);
  }
}

TEST_SUITE_END();
