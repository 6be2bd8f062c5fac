#pragma once

#include <cstdint>
#include <vector>

#include "lplc2/frontend.hpp"

namespace lplc2 {

enum class Dir { Right, Left, Down, Up };

// Signed direction-selective motion maps, one per cardinal direction.
struct MotionMaps {
  Map r, l, d, u;
};

// Delay-and-correlate motion detector on one channel. For the rightward
// detector the output at (x,y) is
//   sum_{c=1..n} delayed(x,y)*now(x+c*s,y) - now(x,y)*delayed(x+c*s,y)
// with mirrored/transposed offsets for the other directions; partners outside
// the frame contribute 0, so edge pixels weaken smoothly.
//
// `printed_form` switches the second product to now(x,y)*now(far) — a
// non-opponent variant kept for comparison; it loses direction selectivity
// for sustained stimuli.
Map hrc_channel(const Map& now, const Map& delayed, Dir dir, int n, int s,
                bool printed_form = false);

// Convergence of the ON (t4) and OFF (t5) correlator outputs: LM = T4 + T5
// per direction, elementwise.
MotionMaps local_motion(const MotionMaps& t4, const MotionMaps& t5);

// All four directions for one channel.
MotionMaps hrc_all(const Map& now, const Map& delayed, int n, int s,
                   bool printed_form = false);

// Ring of the last `depth` rectified channel pairs. The correlators read the
// entry that is exactly `depth` frames old; until that many frames have been
// pushed the line is cold and callers must treat motion as zero.
//
// Compact mode stores the channels as 16-bit fixed point (8 fraction bits),
// which is lossless for 8-bit inputs with the default ON weight.
class DelayLine {
 public:
  DelayLine() : DelayLine(1, false) {}
  DelayLine(int depth, bool compact);

  void push(const ChannelPair& ch);
  bool warm() const { return count_ >= depth_; }
  // The channel pair pushed `depth` frames ago. Only valid when warm().
  ChannelPair oldest() const;

  int depth() const { return depth_; }
  bool compact() const { return compact_; }
  std::size_t buffer_bytes() const;

 private:
  struct Slot {
    Map on_f, off_f;
    Grid<std::uint16_t> on_q, off_q;
  };

  int depth_;
  bool compact_;
  std::vector<Slot> slots_;
  int head_ = 0;
  std::int64_t count_ = 0;
};

}  // namespace lplc2
