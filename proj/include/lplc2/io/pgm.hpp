#pragma once

#include <filesystem>
#include <string>

#include "lplc2/grid.hpp"

namespace lplc2 {

// Binary portable graymap (P5), maxval 255.
void write_pgm(const std::filesystem::path& path, const GridU8& img);
GridU8 read_pgm(const std::filesystem::path& path);  // throws on malformed input

// Pipeline input loader: enforces the 99-wide by 72-high frame shape.
Frame read_frame_pgm(const std::filesystem::path& path,
                     std::int64_t timestamp = 0);

// Affine rescale of a real map to [0,255] for debug dumps. The parameters are
// written to a sidecar "<path>.txt" so the dump is invertible.
struct RescaleInfo {
  double min = 0.0, max = 0.0;
  double scale = 0.0;  // pixel = round((v - min) * scale)
};
RescaleInfo write_rescaled_pgm(const std::filesystem::path& path, const Map& m);

}  // namespace lplc2
