#pragma once

#include "lplc2/attention.hpp"
#include "lplc2/motion.hpp"

namespace lplc2 {

struct QuadrantSums {
  double q1 = 0.0;  // upper-right: rightward + upward motion
  double q2 = 0.0;  // upper-left:  leftward + upward motion
  double q3 = 0.0;  // lower-left:  leftward + downward motion
  double q4 = 0.0;  // lower-right: rightward + downward motion
};

// Sum the outward-preferring motion components over the four quadrants of the
// field, split at its centroid (y-down convention: "upper" means v < cy).
// Pixels exactly on a dividing line belong to no quadrant.
QuadrantSums quadrant_sums(const AttentionField& field, const MotionMaps& lm);

struct Lplc2Response {
  double value = 0.0;
  bool gated = false;  // value > 0 iff gated (except in printed-gate mode)
};

// Ultra-selective looming response: gated only when all four quadrant sums
// are strictly positive, in which case the value is their total.
//
// `printed_gate` gates on "no quadrant equals zero" instead, which also fires
// when all sums are negative; kept for comparison only (the value can then be
// negative).
Lplc2Response lplc2_response(const QuadrantSums& q, bool printed_gate = false);

}  // namespace lplc2
