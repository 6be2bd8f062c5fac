#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lplc2/attention.hpp"
#include "lplc2/integrator.hpp"
#include "lplc2/motion.hpp"
#include "lplc2/params.hpp"

namespace lplc2 {

struct PipelineConfig {
  ModelParams params;
  MotorConfig motor;
  bool compat_eq6 = false;  // printed (non-opponent) correlator form
  bool compat_eq9 = false;  // printed nonzero-product gate
  bool compact = false;     // 16-bit fixed-point channel storage
  int max_field_slots = 8;  // static field capacity used for budget accounting
};

// Per-field record for one processed frame (surviving fields only).
struct FieldFrameRecord {
  int af_id = 0;
  double cx = 0.0, cy = 0.0;
  QuadrantSums q;
  Lplc2Response resp;
};

// Every intermediate of one frame, for tests and inspection dumps. Not part
// of the persistent state or the memory budget.
struct FrameTrace {
  std::int64_t frame_index = 0;
  bool warmup = false;
  Frame input;
  Map diff;
  ChannelPair raw;       // rectified, unsmoothed
  ChannelPair smoothed;
  Map sal;
  MotionMaps lm;
  std::vector<FieldFrameRecord> fields;  // after pruning
  ThreatSummary summary;
  bool any_gated = false;
  FsmState state;  // state acted on this frame
  MotorCommand cmd;
};

struct BudgetItem {
  std::string name;
  std::size_t bytes = 0;
};

struct BudgetReport {
  bool compact = false;
  std::vector<BudgetItem> items;
  std::size_t total_bytes = 0;  // sum of items
  double t_min_ms = 0.0, t_mean_ms = 0.0, t_max_ms = 0.0;
  std::size_t timing_samples = 0;

  std::string table() const;
  std::string csv() const;
};

// One perception-action pipeline instance for a single robot. Owns all
// persistent buffers; not reentrant, and distinct instances share nothing.
class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& cfg);

  // Runs the fixed per-frame stage order:
  //   retina diff -> rectify -> smooth -> saliency -> centroid update ->
  //   fuse -> spawn -> correlators -> per-field integration -> prune ->
  //   summarize -> motor step.
  // `heading_deg` is the robot's current world heading (used to latch escape
  // targets). Throws std::invalid_argument on a frame dimension mismatch,
  // leaving the state untouched. During the first c_d frames (warm-up) the
  // motion maps are zero and the controller sees raw_sum = 0.
  MotorCommand process_frame(const Frame& frame, double heading_deg = 0.0,
                             FrameTrace* trace = nullptr);

  // Itemized persistent-buffer accounting plus latency stats over the given
  // per-frame wall-clock samples (milliseconds).
  BudgetReport budget_report(const std::vector<double>& frame_ms = {}) const;

  const FieldSet& fields() const { return fields_; }
  const FsmState& fsm() const { return fsm_; }
  const FsmState& last_acted_state() const { return last_acted_; }
  const ThreatSummary& last_summary() const { return last_summary_; }
  bool last_any_gated() const { return last_any_gated_; }
  std::int64_t frames_processed() const { return count_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  PipelineConfig cfg_;
  // persistent state
  Frame prev_;
  DelayLine delay_;
  FieldSet fields_;
  FsmState fsm_;
  std::int64_t count_ = 0;
  // last-frame outputs kept for logging
  FsmState last_acted_;
  ThreatSummary last_summary_;
  bool last_any_gated_ = false;
};

}  // namespace lplc2
