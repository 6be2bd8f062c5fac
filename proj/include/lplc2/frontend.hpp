#pragma once

#include "lplc2/grid.hpp"

namespace lplc2 {

// Half-wave rectified luminance-change channels. `on` carries brightness
// increments scaled by the ON weight, `off` carries decrements. Values are
// non-negative by construction.
struct ChannelPair {
  Map on;
  Map off;
};

// Signed per-pixel brightness change curr - prev. Throws std::invalid_argument
// on a dimension mismatch.
Map retina_diff(const Frame& prev, const Frame& curr);

// Splits a signed change map into ON/OFF channels:
//   on  = w * max(R, 0)
//   off = max(-R, 0)
ChannelPair rectify(const Map& diff, double w);

// 3x3 mean filter with zero padding; the divisor stays 9 at the border.
Map smooth3x3(const Map& m);

}  // namespace lplc2
