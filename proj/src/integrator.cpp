#include "lplc2/integrator.hpp"

namespace lplc2 {

QuadrantSums quadrant_sums(const AttentionField& field, const MotionMaps& lm) {
  QuadrantSums q;
  const FieldRect r = field.raster(lm.r.width, lm.r.height);
  for (int y = r.y0; y <= r.y1; ++y) {
    const double dv = y - field.cy;
    if (dv == 0.0) continue;  // on the horizontal dividing line
    for (int x = r.x0; x <= r.x1; ++x) {
      const double du = x - field.cx;
      if (du == 0.0) continue;
      if (dv < 0.0) {
        if (du > 0.0) {
          q.q1 += lm.r.at(x, y) + lm.u.at(x, y);
        } else {
          q.q2 += lm.l.at(x, y) + lm.u.at(x, y);
        }
      } else {
        if (du < 0.0) {
          q.q3 += lm.l.at(x, y) + lm.d.at(x, y);
        } else {
          q.q4 += lm.r.at(x, y) + lm.d.at(x, y);
        }
      }
    }
  }
  return q;
}

Lplc2Response lplc2_response(const QuadrantSums& q, bool printed_gate) {
  Lplc2Response out;
  if (printed_gate) {
    // Literal nonzero-product gate; fires for all-negative sums too, so the
    // value may be negative in this mode.
    out.gated = q.q1 != 0.0 && q.q2 != 0.0 && q.q3 != 0.0 && q.q4 != 0.0;
  } else {
    out.gated = q.q1 > 0.0 && q.q2 > 0.0 && q.q3 > 0.0 && q.q4 > 0.0;
  }
  out.value = out.gated ? q.q1 + q.q2 + q.q3 + q.q4 : 0.0;
  return out;
}

}  // namespace lplc2
