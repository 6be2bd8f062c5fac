#include "lplc2/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace lplc2 {

namespace {

void dir_offsets(Dir dir, int& dx, int& dy) {
  switch (dir) {
    case Dir::Right: dx = 1; dy = 0; break;
    case Dir::Left: dx = -1; dy = 0; break;
    case Dir::Down: dx = 0; dy = 1; break;  // y grows downward
    case Dir::Up: dx = 0; dy = -1; break;
  }
}

constexpr double kFixedScale = 256.0;  // 8 fraction bits

std::uint16_t encode_q8(double v) {
  double q = std::round(v * kFixedScale);
  if (q < 0.0) q = 0.0;
  if (q > 65535.0) q = 65535.0;
  return static_cast<std::uint16_t>(q);
}

}  // namespace

Map hrc_channel(const Map& now, const Map& delayed, Dir dir, int n, int s,
                bool printed_form) {
  if (!now.same_shape(delayed)) {
    throw std::invalid_argument("hrc_channel: map dimensions differ");
  }
  if (n < 1 || s < 1) {
    throw std::invalid_argument("hrc_channel: n and s must be >= 1");
  }
  int dx = 0, dy = 0;
  dir_offsets(dir, dx, dy);
  const int w = now.width, h = now.height;
  Map out(w, h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double near_now = now.at(x, y);
      const double near_del = delayed.at(x, y);
      double acc = 0.0;
      for (int c = 1; c <= n; ++c) {
        const int fx = x + dx * c * s;
        const int fy = y + dy * c * s;
        const double far_now = now.get_or(fx, fy, 0.0);
        if (printed_form) {
          acc += far_now * near_del - near_now * far_now;
        } else {
          const double far_del = delayed.get_or(fx, fy, 0.0);
          acc += near_del * far_now - near_now * far_del;
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

MotionMaps local_motion(const MotionMaps& t4, const MotionMaps& t5) {
  auto add = [](const Map& a, const Map& b) {
    if (!a.same_shape(b)) {
      throw std::invalid_argument("local_motion: map dimensions differ");
    }
    Map out(a.width, a.height);
    for (std::size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
  };
  return MotionMaps{add(t4.r, t5.r), add(t4.l, t5.l), add(t4.d, t5.d),
                    add(t4.u, t5.u)};
}

MotionMaps hrc_all(const Map& now, const Map& delayed, int n, int s,
                   bool printed_form) {
  return MotionMaps{hrc_channel(now, delayed, Dir::Right, n, s, printed_form),
                    hrc_channel(now, delayed, Dir::Left, n, s, printed_form),
                    hrc_channel(now, delayed, Dir::Down, n, s, printed_form),
                    hrc_channel(now, delayed, Dir::Up, n, s, printed_form)};
}

DelayLine::DelayLine(int depth, bool compact)
    : depth_(depth), compact_(compact) {
  if (depth < 1) throw std::invalid_argument("DelayLine: depth must be >= 1");
  slots_.resize(static_cast<std::size_t>(depth));
}

void DelayLine::push(const ChannelPair& ch) {
  Slot& slot = slots_[static_cast<std::size_t>(head_)];
  if (compact_) {
    if (slot.on_q.width != ch.on.width || slot.on_q.height != ch.on.height) {
      slot.on_q = Grid<std::uint16_t>(ch.on.width, ch.on.height);
      slot.off_q = Grid<std::uint16_t>(ch.off.width, ch.off.height);
    }
    for (std::size_t i = 0; i < ch.on.size(); ++i) {
      slot.on_q.data[i] = encode_q8(ch.on.data[i]);
      slot.off_q.data[i] = encode_q8(ch.off.data[i]);
    }
  } else {
    slot.on_f = ch.on;
    slot.off_f = ch.off;
  }
  head_ = (head_ + 1) % depth_;
  ++count_;
}

ChannelPair DelayLine::oldest() const {
  // After k pushes the slot at `head_` holds the entry from k - depth frames
  // ago (the next one to be overwritten).
  const Slot& slot = slots_[static_cast<std::size_t>(head_)];
  if (!compact_) return ChannelPair{slot.on_f, slot.off_f};
  ChannelPair ch{Map(slot.on_q.width, slot.on_q.height),
                 Map(slot.off_q.width, slot.off_q.height)};
  for (std::size_t i = 0; i < ch.on.size(); ++i) {
    ch.on.data[i] = slot.on_q.data[i] / kFixedScale;
    ch.off.data[i] = slot.off_q.data[i] / kFixedScale;
  }
  return ch;
}

std::size_t DelayLine::buffer_bytes() const {
  std::size_t per_map = static_cast<std::size_t>(kFrameWidth) * kFrameHeight;
  std::size_t elem = compact_ ? sizeof(std::uint16_t) : sizeof(double);
  // Two channel maps per slot; sized for the frame shape regardless of how
  // many slots are filled yet.
  return static_cast<std::size_t>(depth_) * 2 * per_map * elem;
}

}  // namespace lplc2
