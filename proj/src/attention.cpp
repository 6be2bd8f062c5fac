#include "lplc2/attention.hpp"

#include <algorithm>
#include <cmath>

namespace lplc2 {

bool AttentionField::covers(double x, double y) const {
  return std::abs(x - cx) <= half_side && std::abs(y - cy) <= half_side;
}

FieldRect AttentionField::raster(int frame_w, int frame_h) const {
  FieldRect r;
  r.x0 = std::max(0, static_cast<int>(std::ceil(cx - half_side)));
  r.x1 = std::min(frame_w - 1, static_cast<int>(std::floor(cx + half_side)));
  r.y0 = std::max(0, static_cast<int>(std::ceil(cy - half_side)));
  r.y1 = std::min(frame_h - 1, static_cast<int>(std::floor(cy + half_side)));
  return r;
}

double AttentionField::recent_mean(int window) const {
  if (history.empty()) return 0.0;
  const std::size_t n =
      std::min<std::size_t>(history.size(), static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t i = history.size() - n; i < history.size(); ++i) {
    sum += history[i];
  }
  return sum / static_cast<double>(n);
}

void AttentionField::record_response(double value, int window) {
  history.push_back(value);
  if (history.size() > static_cast<std::size_t>(window)) {
    history.erase(history.begin());
  }
  ++age;
}

bool FieldSet::covered(double x, double y) const {
  for (const auto& f : fields) {
    if (f.covers(x, y)) return true;
  }
  return false;
}

Map saliency(const ChannelPair& smoothed) {
  Map out(smoothed.on.width, smoothed.on.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out.height; ++y) {
    const double* on = &smoothed.on.data[smoothed.on.idx(0, y)];
    const double* off = &smoothed.off.data[smoothed.off.idx(0, y)];
    double* o = &out.data[out.idx(0, y)];
    for (int x = 0; x < out.width; ++x) o[x] = on[x] + off[x];
  }
  return out;
}

bool spawn(FieldSet& fs, const Map& sal, double t_a, int r_af) {
  int best_x = -1, best_y = -1;
  double best_v = 0.0;
  bool found = false;
  // Row-major scan with a strict comparison: ties go to the smallest index.
  for (int y = 0; y < sal.height; ++y) {
    for (int x = 0; x < sal.width; ++x) {
      if (fs.covered(x, y)) continue;
      const double v = sal.at(x, y);
      if (!found || v > best_v) {
        found = true;
        best_v = v;
        best_x = x;
        best_y = y;
      }
    }
  }
  if (!found || best_v <= t_a) return false;
  AttentionField f;
  f.id = fs.next_id++;
  f.cx = best_x;
  f.cy = best_y;
  f.half_side = r_af;
  fs.fields.push_back(std::move(f));
  return true;
}

void update_centroids(FieldSet& fs, const Map& sal) {
  for (auto& f : fs.fields) {
    const FieldRect r = f.raster(sal.width, sal.height);
    if (r.empty()) continue;
    double mass = 0.0, mx = 0.0, my = 0.0;
    for (int y = r.y0; y <= r.y1; ++y) {
      for (int x = r.x0; x <= r.x1; ++x) {
        const double v = sal.at(x, y);
        mass += v;
        mx += x * v;
        my += y * v;
      }
    }
    if (mass > 0.0) {
      f.cx = mx / mass;
      f.cy = my / mass;
    }
  }
}

void fuse(FieldSet& fs) {
  std::vector<AttentionField> kept;
  kept.reserve(fs.fields.size());
  for (auto& f : fs.fields) {  // ascending id
    bool absorbed = false;
    for (const auto& k : kept) {
      if (k.covers(f.cx, f.cy)) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(std::move(f));
  }
  fs.fields = std::move(kept);
}

void prune(FieldSet& fs, double t_d, int window) {
  if (fs.fields.empty()) return;
  std::vector<bool> remove(fs.fields.size(), false);
  std::size_t n_remove = 0;
  for (std::size_t i = 0; i < fs.fields.size(); ++i) {
    const auto& f = fs.fields[i];
    if (f.age >= window && f.recent_mean(window) < t_d) {
      remove[i] = true;
      ++n_remove;
    }
  }
  if (n_remove == fs.fields.size()) {
    // Never empty the set: retain the most active field (ties to oldest id).
    std::size_t best = 0;
    for (std::size_t i = 1; i < fs.fields.size(); ++i) {
      if (fs.fields[i].recent_mean(window) >
          fs.fields[best].recent_mean(window)) {
        best = i;
      }
    }
    remove[best] = false;
  }
  std::vector<AttentionField> kept;
  kept.reserve(fs.fields.size());
  for (std::size_t i = 0; i < fs.fields.size(); ++i) {
    if (!remove[i]) kept.push_back(std::move(fs.fields[i]));
  }
  fs.fields = std::move(kept);
}

}  // namespace lplc2
