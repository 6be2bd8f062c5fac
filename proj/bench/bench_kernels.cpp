// Kernel benchmark: the parallel map kernels against their serial reference
// counterparts, plus the full per-frame pipeline. Timings are wall-clock
// means over repeated runs on synthetic looming input.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lplc2/frontend.hpp"
#include "lplc2/pipeline.hpp"
#include "lplc2/ref.hpp"
#include "lplc2/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace lplc2;

double time_ms(const std::function<void()>& fn, int reps) {
  // One warm-up, then the mean of `reps` runs.
  fn();
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s serial %8.4f ms   parallel %8.4f ms   speedup %5.2fx\n",
              name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
  const int reps = 200;
  const Frame a = disc_frame(49, 35, 12, 30, 200, 0);
  const Frame b = disc_frame(49, 35, 15, 30, 200, 1);
  const Map diff = retina_diff(a, b);
  const ChannelPair ch = rectify(diff, 0.25);
  const ChannelPair prev_ch = rectify(retina_diff(a, a), 0.25);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled\n");
#endif

  row("retina_diff",
      time_ms([&] { ref::retina_diff(a, b); }, reps),
      time_ms([&] { retina_diff(a, b); }, reps));
  row("rectify",
      time_ms([&] { ref::rectify(diff, 0.25); }, reps),
      time_ms([&] { rectify(diff, 0.25); }, reps));
  row("smooth3x3",
      time_ms([&] { ref::smooth3x3(ch.off); }, reps),
      time_ms([&] { smooth3x3(ch.off); }, reps));
  row("saliency",
      time_ms([&] { ref::saliency(ch); }, reps),
      time_ms([&] { saliency(ch); }, reps));
  row("hrc_channel (n=3)",
      time_ms([&] { ref::hrc_channel(ch.off, prev_ch.off, Dir::Right, 3, 1); },
              reps),
      time_ms([&] { hrc_channel(ch.off, prev_ch.off, Dir::Right, 3, 1); },
              reps));

  {
    AttentionField f;
    f.cx = 49;
    f.cy = 35;
    f.half_side = 36;
    MotionMaps t4 = hrc_all(ch.on, prev_ch.on, 3, 1);
    MotionMaps t5 = hrc_all(ch.off, prev_ch.off, 3, 1);
    MotionMaps lm = local_motion(t4, t5);
    row("quadrant_sums",
        time_ms([&] { ref::quadrant_sums(f, lm); }, reps),
        time_ms([&] { quadrant_sums(f, lm); }, reps));
  }

  {
    PipelineConfig pc;
    Pipeline pipe(pc);
    int i = 0;
    const double full = time_ms(
        [&] {
          const int phase = i % 30;
          const double radius = 4.0 + (phase < 15 ? phase : 30 - phase) * 2.0;
          pipe.process_frame(disc_frame(49, 35, radius, 30, 200, i), 0.0);
          ++i;
        },
        600);
    std::printf("%-24s %8.4f ms/frame (budget %.2f ms)\n", "full pipeline",
                full, pc.params.t_i_ms);
  }
  return 0;
}
