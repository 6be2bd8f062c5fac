#include "lplc2/synth.hpp"

#include <algorithm>

namespace lplc2 {

Frame flat_frame(std::uint8_t value, std::int64_t ts) {
  Frame f;
  f.img.fill(value);
  f.timestamp = ts;
  return f;
}

Frame disc_frame(double cx, double cy, double radius, std::uint8_t fg,
                 std::uint8_t bg, std::int64_t ts) {
  Frame f = flat_frame(bg, ts);
  const double r2 = radius * radius;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy <= r2) f.img.at(x, y) = fg;
    }
  }
  return f;
}

Frame rect_frame(int x0, int y0, int x1, int y1, std::uint8_t fg,
                 std::uint8_t bg, std::int64_t ts) {
  Frame f = flat_frame(bg, ts);
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, f.width() - 1);
  y1 = std::min(y1, f.height() - 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) f.img.at(x, y) = fg;
  }
  return f;
}

}  // namespace lplc2
