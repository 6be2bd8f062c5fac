#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lplc2 {

// Visual field dimensions. x is the column index (horizontal), y is the row
// index; y increases downward, so "up" means decreasing y.
inline constexpr int kFrameWidth = 99;
inline constexpr int kFrameHeight = 72;

template <typename T>
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<T> data;  // row-major

  Grid() = default;
  Grid(int w, int h, T fill = T{})
      : width(w),
        height(h),
        data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  static Grid frame_sized(T fill = T{}) {
    return Grid(kFrameWidth, kFrameHeight, fill);
  }

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x;
  }
  T& at(int x, int y) {
    assert(in_bounds(x, y));
    return data[idx(x, y)];
  }
  const T& at(int x, int y) const {
    assert(in_bounds(x, y));
    return data[idx(x, y)];
  }
  // Out-of-frame reads fall back to a caller-supplied value; the border
  // policy everywhere in this codebase is "missing neighbors contribute 0".
  T get_or(int x, int y, T fallback) const {
    return in_bounds(x, y) ? data[idx(x, y)] : fallback;
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool same_shape(const Grid& o) const {
    return width == o.width && height == o.height;
  }
  std::size_t size() const { return data.size(); }
  void fill(T v) { std::fill(data.begin(), data.end(), v); }
};

using Map = Grid<double>;
using GridU8 = Grid<std::uint8_t>;

// One 8-bit luminance image plus its frame index.
struct Frame {
  GridU8 img;
  std::int64_t timestamp = 0;

  Frame() : img(GridU8::frame_sized()) {}
  Frame(GridU8 image, std::int64_t ts) : img(std::move(image)), timestamp(ts) {}

  int width() const { return img.width; }
  int height() const { return img.height; }
};

}  // namespace lplc2
