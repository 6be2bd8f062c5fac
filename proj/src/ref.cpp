#include "lplc2/ref.hpp"

#include <cmath>

namespace lplc2::ref {

Map retina_diff(const Frame& prev, const Frame& curr) {
  Map out(curr.width(), curr.height());
  for (int y = 0; y < curr.height(); ++y) {
    for (int x = 0; x < curr.width(); ++x) {
      out.at(x, y) = static_cast<double>(curr.img.at(x, y)) -
                     static_cast<double>(prev.img.at(x, y));
    }
  }
  return out;
}

ChannelPair rectify(const Map& diff, double w) {
  ChannelPair ch{Map(diff.width, diff.height), Map(diff.width, diff.height)};
  for (int y = 0; y < diff.height; ++y) {
    for (int x = 0; x < diff.width; ++x) {
      const double r = diff.at(x, y);
      ch.on.at(x, y) = w * (r + std::abs(r)) / 2.0;
      ch.off.at(x, y) = std::abs(std::abs(r) - r) / 2.0;
    }
  }
  return ch;
}

Map smooth3x3(const Map& m) {
  Map out(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      double acc = 0.0;
      for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
          if (m.in_bounds(x + i, y + j)) acc += m.at(x + i, y + j);
        }
      }
      out.at(x, y) = acc / 9.0;
    }
  }
  return out;
}

Map saliency(const ChannelPair& smoothed) {
  Map out(smoothed.on.width, smoothed.on.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.at(x, y) = smoothed.on.at(x, y) + smoothed.off.at(x, y);
    }
  }
  return out;
}

Map hrc_channel(const Map& now, const Map& delayed, Dir dir, int n, int s,
                bool printed_form) {
  int dx = 0, dy = 0;
  switch (dir) {
    case Dir::Right: dx = 1; break;
    case Dir::Left: dx = -1; break;
    case Dir::Down: dy = 1; break;
    case Dir::Up: dy = -1; break;
  }
  Map out(now.width, now.height, 0.0);
  for (int y = 0; y < now.height; ++y) {
    for (int x = 0; x < now.width; ++x) {
      for (int c = 1; c <= n; ++c) {
        const int fx = x + dx * c * s;
        const int fy = y + dy * c * s;
        const bool in = now.in_bounds(fx, fy);
        const double far_now = in ? now.at(fx, fy) : 0.0;
        const double far_del = in ? delayed.at(fx, fy) : 0.0;
        if (printed_form) {
          out.at(x, y) += far_now * delayed.at(x, y) - now.at(x, y) * far_now;
        } else {
          out.at(x, y) += delayed.at(x, y) * far_now - now.at(x, y) * far_del;
        }
      }
    }
  }
  return out;
}

std::optional<std::pair<int, int>> spawn_argmax(const FieldSet& fs,
                                                const Map& sal, double t_a) {
  bool have = false;
  int bx = -1, by = -1;
  double bv = 0.0;
  for (int y = 0; y < sal.height; ++y) {
    for (int x = 0; x < sal.width; ++x) {
      bool inside = false;
      for (const auto& f : fs.fields) {
        if (std::abs(x - f.cx) <= f.half_side &&
            std::abs(y - f.cy) <= f.half_side) {
          inside = true;
          break;
        }
      }
      if (inside) continue;
      if (!have || sal.at(x, y) > bv) {
        have = true;
        bv = sal.at(x, y);
        bx = x;
        by = y;
      }
    }
  }
  if (!have || bv <= t_a) return std::nullopt;
  return std::make_pair(bx, by);
}

std::pair<double, double> centroid_moments(const AttentionField& f,
                                           const Map& sal) {
  double mass = 0.0, mx = 0.0, my = 0.0;
  for (int y = 0; y < sal.height; ++y) {
    for (int x = 0; x < sal.width; ++x) {
      if (std::abs(x - f.cx) > f.half_side || std::abs(y - f.cy) > f.half_side) {
        continue;
      }
      mass += sal.at(x, y);
      mx += x * sal.at(x, y);
      my += y * sal.at(x, y);
    }
  }
  if (mass == 0.0) return {f.cx, f.cy};
  return {mx / mass, my / mass};
}

std::vector<int> fuse_survivor_ids(const FieldSet& fs) {
  std::vector<const AttentionField*> kept;
  for (const auto& f : fs.fields) {
    bool inside = false;
    for (const auto* k : kept) {
      if (std::abs(f.cx - k->cx) <= k->half_side &&
          std::abs(f.cy - k->cy) <= k->half_side) {
        inside = true;
        break;
      }
    }
    if (!inside) kept.push_back(&f);
  }
  std::vector<int> ids;
  for (const auto* k : kept) ids.push_back(k->id);
  return ids;
}

QuadrantSums quadrant_sums(const AttentionField& f, const MotionMaps& lm) {
  QuadrantSums q;
  for (int y = 0; y < lm.r.height; ++y) {
    for (int x = 0; x < lm.r.width; ++x) {
      if (std::abs(x - f.cx) > f.half_side || std::abs(y - f.cy) > f.half_side) {
        continue;
      }
      const double du = x - f.cx;
      const double dv = y - f.cy;
      if (du == 0.0 || dv == 0.0) continue;
      if (du > 0.0 && dv < 0.0) q.q1 += lm.r.at(x, y) + lm.u.at(x, y);
      if (du < 0.0 && dv < 0.0) q.q2 += lm.l.at(x, y) + lm.u.at(x, y);
      if (du < 0.0 && dv > 0.0) q.q3 += lm.l.at(x, y) + lm.d.at(x, y);
      if (du > 0.0 && dv > 0.0) q.q4 += lm.r.at(x, y) + lm.d.at(x, y);
    }
  }
  return q;
}

}  // namespace lplc2::ref
