#include "lplc2/io/pgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lplc2 {

namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const GridU8& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_pgm: cannot open " + path.string());
  }
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  if (!out) {
    throw std::runtime_error("write_pgm: write failed for " + path.string());
  }
}

GridU8 read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_pgm: cannot open " + path.string());
  }
  if (next_token(in) != "P5") {
    throw std::runtime_error("read_pgm: not a binary graymap (P5): " +
                             path.string());
  }
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(next_token(in));
    h = std::stoi(next_token(in));
    maxval = std::stoi(next_token(in));
  } catch (...) {
    throw std::runtime_error("read_pgm: malformed header: " + path.string());
  }
  if (w <= 0 || h <= 0 || maxval != 255) {
    throw std::runtime_error("read_pgm: unsupported header (need maxval 255): " +
                             path.string());
  }
  GridU8 img(w, h);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data.size())) {
    throw std::runtime_error("read_pgm: truncated pixel data: " + path.string());
  }
  return img;
}

Frame read_frame_pgm(const std::filesystem::path& path, std::int64_t timestamp) {
  GridU8 img = read_pgm(path);
  if (img.width != kFrameWidth || img.height != kFrameHeight) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "frame must be %d wide x %d high, got %dx%d", kFrameWidth,
                  kFrameHeight, img.width, img.height);
    throw std::runtime_error("read_frame_pgm: " + std::string(buf) + ": " +
                             path.string());
  }
  return Frame(std::move(img), timestamp);
}

RescaleInfo write_rescaled_pgm(const std::filesystem::path& path, const Map& m) {
  RescaleInfo info;
  info.min = info.max = m.data.empty() ? 0.0 : m.data[0];
  for (double v : m.data) {
    info.min = std::min(info.min, v);
    info.max = std::max(info.max, v);
  }
  info.scale = info.max > info.min ? 255.0 / (info.max - info.min) : 0.0;

  GridU8 img(m.width, m.height);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    img.data[i] =
        static_cast<std::uint8_t>(std::lround((m.data[i] - info.min) * info.scale));
  }
  write_pgm(path, img);

  std::ofstream side(path.string() + ".txt");
  side << "min " << info.min << "\nmax " << info.max << "\nscale " << info.scale
       << "\noffset " << info.min << "\n";
  return info;
}

}  // namespace lplc2
