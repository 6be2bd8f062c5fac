#pragma once

// Serial reference implementations, written as direct transcriptions of the
// definitions: plain nested loops, no shared code with the main kernels.
// They serve two purposes: independent oracles for the test suite, and the
// baseline side of the kernel benchmark.

#include <optional>
#include <utility>

#include "lplc2/attention.hpp"
#include "lplc2/integrator.hpp"
#include "lplc2/motion.hpp"

namespace lplc2::ref {

Map retina_diff(const Frame& prev, const Frame& curr);
ChannelPair rectify(const Map& diff, double w);
Map smooth3x3(const Map& m);
Map saliency(const ChannelPair& smoothed);

// Quadruple loop over (y, x, direction offset, partner index).
Map hrc_channel(const Map& now, const Map& delayed, Dir dir, int n, int s,
                bool printed_form = false);

// Full-frame masked argmax: scans every pixel, skips covered ones, returns
// the winning coordinate if its value exceeds t_a.
std::optional<std::pair<int, int>> spawn_argmax(const FieldSet& fs,
                                                const Map& sal, double t_a);

// Direct moment sums over the field's region; returns the unchanged centroid
// when the region mass is zero.
std::pair<double, double> centroid_moments(const AttentionField& f,
                                           const Map& sal);

// Sequential-scan fusion: ids of the fields that survive.
std::vector<int> fuse_survivor_ids(const FieldSet& fs);

// Classifies every frame pixel against the field bounds and quadrant tests
// from scratch.
QuadrantSums quadrant_sums(const AttentionField& f, const MotionMaps& lm);

}  // namespace lplc2::ref
