#pragma once

#include <vector>

#include "lplc2/frontend.hpp"

namespace lplc2 {

// Inclusive pixel rectangle, clipped to the frame.
struct FieldRect {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  bool empty() const { return x0 > x1 || y0 > y1; }
};

// A square attention region tracking one moving object. The region is the
// set of pixels within `half_side` of the real-valued centroid along both
// axes, clipped at the frame border.
struct AttentionField {
  int id = 0;
  double cx = 0.0, cy = 0.0;
  int half_side = 36;
  std::vector<double> history;  // most recent response last, length <= window
  int age = 0;                  // responses recorded since spawn

  bool covers(double x, double y) const;
  FieldRect raster(int frame_w, int frame_h) const;
  // Mean of the recorded responses, over at most the last `window` entries.
  double recent_mean(int window) const;
  void record_response(double value, int window);
};

struct FieldSet {
  std::vector<AttentionField> fields;  // kept in ascending id order
  int next_id = 0;

  bool covered(double x, double y) const;
  std::size_t count() const { return fields.size(); }
};

// Pixelwise sum of the smoothed ON and OFF channels; the bottom-up cue that
// drives spawning and centroid tracking.
Map saliency(const ChannelPair& smoothed);

// One spawn attempt: scan the pixels not covered by any existing field in
// row-major order, take the first strict maximum of `sal`, and append a new
// field centered there when the value exceeds t_a. Returns whether a field
// was added.
bool spawn(FieldSet& fs, const Map& sal, double t_a, int r_af);

// Move each centroid to the intensity-weighted first moment of `sal` over its
// rasterized region; a zero-mass region leaves the centroid unchanged.
void update_centroids(FieldSet& fs, const Map& sal);

// Discard any field whose centroid lies within a surviving field's region.
// Fields are evaluated in ascending id order against the already-kept set, so
// of two mutually-overlapping fields the younger one is removed.
void fuse(FieldSet& fs);

// Remove fields whose mean response over the last `window` frames fell below
// t_d. Fields with fewer than `window` recorded responses are immune, and the
// set is never emptied: if every field qualifies for removal, the one with
// the highest recent mean is retained.
void prune(FieldSet& fs, double t_d, int window);

}  // namespace lplc2
