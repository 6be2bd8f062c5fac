#pragma once

// Synthetic stimulus frames used by tests, the benchmark warm-ups, and the
// budget report's timing loop.

#include "lplc2/grid.hpp"

namespace lplc2 {

// Uniform frame.
Frame flat_frame(std::uint8_t value, std::int64_t ts = 0);

// Filled disc of `fg` over a `bg` frame.
Frame disc_frame(double cx, double cy, double radius, std::uint8_t fg,
                 std::uint8_t bg, std::int64_t ts = 0);

// Axis-aligned filled rectangle (inclusive bounds, clipped).
Frame rect_frame(int x0, int y0, int x1, int y1, std::uint8_t fg,
                 std::uint8_t bg, std::int64_t ts = 0);

}  // namespace lplc2
