#include "lplc2/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lplc2 {

Pipeline::Pipeline(const PipelineConfig& cfg)
    : cfg_(cfg), delay_(cfg.params.c_d, cfg.compact) {
  const std::string err = cfg.params.validate();
  if (!err.empty()) {
    throw std::invalid_argument("Pipeline: invalid parameters: " + err);
  }
}

MotorCommand Pipeline::process_frame(const Frame& frame, double heading_deg,
                                     FrameTrace* trace) {
  if (frame.width() != kFrameWidth || frame.height() != kFrameHeight) {
    throw std::invalid_argument("process_frame: frame must be 99x72");
  }
  const ModelParams& p = cfg_.params;

  // Signal front end. The very first frame has no predecessor, so its change
  // map is identically zero.
  Map diff = count_ == 0 ? Map::frame_sized() : retina_diff(prev_, frame);
  ChannelPair raw = rectify(diff, p.w);
  ChannelPair smoothed{smooth3x3(raw.on), smooth3x3(raw.off)};
  Map sal = saliency(smoothed);

  // Attention bookkeeping on the existing set first, then one spawn attempt
  // into the uncovered remainder.
  update_centroids(fields_, sal);
  fuse(fields_);
  spawn(fields_, sal, p.t_a, p.r_af);

  // Motion detection against the channels from c_d frames ago. Cold start
  // (and any unwarmed delay line) yields zero motion.
  const bool warmup = count_ < p.c_d || !delay_.warm();
  MotionMaps lm;
  if (warmup) {
    lm = MotionMaps{Map::frame_sized(), Map::frame_sized(), Map::frame_sized(),
                    Map::frame_sized()};
  } else {
    const ChannelPair delayed = delay_.oldest();
    MotionMaps t4 = hrc_all(raw.on, delayed.on, p.n, p.s, cfg_.compat_eq6);
    MotionMaps t5 = hrc_all(raw.off, delayed.off, p.n, p.s, cfg_.compat_eq6);
    lm = local_motion(t4, t5);
  }

  // Per-field looming integration, then pruning with the fresh responses in
  // each field's window.
  std::vector<QuadrantSums> qsums(fields_.fields.size());
  std::vector<Lplc2Response> responses(fields_.fields.size());
  for (std::size_t i = 0; i < fields_.fields.size(); ++i) {
    qsums[i] = quadrant_sums(fields_.fields[i], lm);
    responses[i] = lplc2_response(qsums[i], cfg_.compat_eq9);
    fields_.fields[i].record_response(responses[i].value, p.d);
  }
  std::vector<FieldFrameRecord> survivor_records;
  {
    // Keep the per-field records aligned with the post-prune set.
    std::vector<std::pair<QuadrantSums, Lplc2Response>> by_id_q;
    std::vector<int> ids;
    for (std::size_t i = 0; i < fields_.fields.size(); ++i) {
      ids.push_back(fields_.fields[i].id);
      by_id_q.emplace_back(qsums[i], responses[i]);
    }
    prune(fields_, p.t_d, p.d);
    std::vector<Lplc2Response> survivor_responses;
    for (const auto& f : fields_.fields) {
      const auto it = std::find(ids.begin(), ids.end(), f.id);
      const std::size_t k = static_cast<std::size_t>(it - ids.begin());
      survivor_responses.push_back(by_id_q[k].second);
      survivor_records.push_back(
          FieldFrameRecord{f.id, f.cx, f.cy, by_id_q[k].first, by_id_q[k].second});
    }
    last_summary_ = summarize(fields_, survivor_responses, p.w_s);
    last_any_gated_ = false;
    for (const auto& r : survivor_responses) last_any_gated_ |= r.gated;
  }

  const FsmResult fr =
      fsm_step(fsm_, last_summary_, last_any_gated_, heading_deg, cfg_.motor);
  fsm_ = fr.next;
  last_acted_ = fr.acted;

  delay_.push(raw);
  prev_ = frame;
  ++count_;

  if (trace) {
    trace->frame_index = count_ - 1;
    trace->warmup = warmup;
    trace->input = frame;
    trace->diff = std::move(diff);
    trace->raw = std::move(raw);
    trace->smoothed = std::move(smoothed);
    trace->sal = std::move(sal);
    trace->lm = std::move(lm);
    trace->fields = std::move(survivor_records);
    trace->summary = last_summary_;
    trace->any_gated = last_any_gated_;
    trace->state = fr.acted;
    trace->cmd = fr.cmd;
  }
  return fr.cmd;
}

BudgetReport Pipeline::budget_report(const std::vector<double>& frame_ms) const {
  const std::size_t px = static_cast<std::size_t>(kFrameWidth) * kFrameHeight;
  BudgetReport rep;
  rep.compact = cfg_.compact;

  // Static capacity view: each field slot carries its centroid, id, age,
  // half-side and a d-deep response ring.
  const std::size_t field_bytes =
      2 * sizeof(double) + 2 * sizeof(int) + sizeof(int) +
      static_cast<std::size_t>(cfg_.params.d) * sizeof(double);
  rep.items.push_back({"previous_frame (u8)", px * sizeof(std::uint8_t)});
  rep.items.push_back(
      {cfg_.compact ? "delay_line channels (u16 q8.8)" : "delay_line channels (f64)",
       delay_.buffer_bytes()});
  rep.items.push_back(
      {"attention field slots", static_cast<std::size_t>(cfg_.max_field_slots) * field_bytes});
  rep.items.push_back({"fsm state", sizeof(FsmState)});
  rep.items.push_back({"model + motor parameters",
                       sizeof(ModelParams) + sizeof(MotorConfig)});
  rep.items.push_back({"frame counter", sizeof(std::int64_t)});
  rep.total_bytes = 0;
  for (const auto& it : rep.items) rep.total_bytes += it.bytes;

  if (!frame_ms.empty()) {
    rep.timing_samples = frame_ms.size();
    rep.t_min_ms = *std::min_element(frame_ms.begin(), frame_ms.end());
    rep.t_max_ms = *std::max_element(frame_ms.begin(), frame_ms.end());
    rep.t_mean_ms = std::accumulate(frame_ms.begin(), frame_ms.end(), 0.0) /
                    static_cast<double>(frame_ms.size());
  }
  return rep;
}

std::string BudgetReport::table() const {
  std::ostringstream os;
  char buf[160];
  os << "persistent pipeline state (" << (compact ? "compact" : "float")
     << " mode)\n";
  for (const auto& it : items) {
    std::snprintf(buf, sizeof(buf), "  %-34s %10zu B\n", it.name.c_str(),
                  it.bytes);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf), "  %-34s %10zu B (%.1f KB)\n", "total",
                total_bytes, total_bytes / 1024.0);
  os << buf;
  if (timing_samples > 0) {
    std::snprintf(buf, sizeof(buf),
                  "per-frame latency over %zu frames: min %.3f ms, mean %.3f "
                  "ms, max %.3f ms\n",
                  timing_samples, t_min_ms, t_mean_ms, t_max_ms);
    os << buf;
  }
  return os.str();
}

std::string BudgetReport::csv() const {
  std::ostringstream os;
  os << "mode,buffer,bytes\n";
  const char* mode = compact ? "compact" : "float";
  for (const auto& it : items) {
    os << mode << ",\"" << it.name << "\"," << it.bytes << "\n";
  }
  os << mode << ",total," << total_bytes << "\n";
  return os.str();
}

}  // namespace lplc2
