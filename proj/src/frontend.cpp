#include "lplc2/frontend.hpp"

#include <algorithm>
#include <stdexcept>

namespace lplc2 {

Map retina_diff(const Frame& prev, const Frame& curr) {
  if (!prev.img.same_shape(curr.img)) {
    throw std::invalid_argument("retina_diff: frame dimensions differ");
  }
  const int w = curr.width(), h = curr.height();
  Map out(w, h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* p = &prev.img.data[prev.img.idx(0, y)];
    const std::uint8_t* c = &curr.img.data[curr.img.idx(0, y)];
    double* o = &out.data[out.idx(0, y)];
    for (int x = 0; x < w; ++x) {
      o[x] = static_cast<double>(c[x]) - static_cast<double>(p[x]);
    }
  }
  return out;
}

ChannelPair rectify(const Map& diff, double w) {
  if (w <= 0.0) {
    throw std::invalid_argument("rectify: ON weight must be positive");
  }
  ChannelPair ch{Map(diff.width, diff.height), Map(diff.width, diff.height)};
#pragma omp parallel for schedule(static)
  for (int y = 0; y < diff.height; ++y) {
    const double* r = &diff.data[diff.idx(0, y)];
    double* on = &ch.on.data[ch.on.idx(0, y)];
    double* off = &ch.off.data[ch.off.idx(0, y)];
    for (int x = 0; x < diff.width; ++x) {
      on[x] = w * std::max(r[x], 0.0);
      off[x] = std::max(-r[x], 0.0);
    }
  }
  return ch;
}

Map smooth3x3(const Map& m) {
  Map out(m.width, m.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      double acc = 0.0;
      for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
          acc += m.get_or(x + i, y + j, 0.0);
        }
      }
      out.at(x, y) = acc / 9.0;
    }
  }
  return out;
}

}  // namespace lplc2
