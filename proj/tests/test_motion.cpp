#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lplc2/motion.hpp"
#include "lplc2/ref.hpp"
#include "testutil.hpp"

using namespace lplc2;

TEST_SUITE_BEGIN("motion");

TEST_CASE("static scene cancels in the correlator") {
  std::mt19937 rng(21);
  const Map m = testutil::sparse_int_map(rng);
  for (Dir dir : {Dir::Right, Dir::Left, Dir::Down, Dir::Up}) {
    const Map out = hrc_channel(m, m, dir, 3, 1);
    for (double v : out.data) CHECK(v == 0.0);
  }
}

TEST_CASE("rightward-stepping edge excites right, inhibits left") {
  Map now = Map::frame_sized();
  Map delayed = Map::frame_sized();
  delayed.at(5, 10) = 10.0;
  now.at(6, 10) = 10.0;
  const Map r = hrc_channel(now, delayed, Dir::Right, 1, 1);
  const Map l = hrc_channel(now, delayed, Dir::Left, 1, 1);
  CHECK(r.at(5, 10) == 100.0);
  for (double v : l.data) CHECK(v <= 0.0);
}

TEST_CASE("correlator matches the quadruple-loop oracle exactly") {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Map now = testutil::sparse_int_map(rng);
    const Map delayed = testutil::sparse_int_map(rng);
    for (Dir dir : {Dir::Right, Dir::Left, Dir::Down, Dir::Up}) {
      const Map got = hrc_channel(now, delayed, dir, 3, 1);
      const Map want = ref::hrc_channel(now, delayed, dir, 3, 1);
      REQUIRE(got.data == want.data);  // bit-exact
    }
  }
}

TEST_CASE("printed-form variant matches its own oracle and differs from the opponent form") {
  std::mt19937 rng(23);
  const Map now = testutil::sparse_int_map(rng, 0.2);
  const Map delayed = testutil::sparse_int_map(rng, 0.2);
  const Map printed = hrc_channel(now, delayed, Dir::Right, 3, 1, true);
  const Map printed_ref = ref::hrc_channel(now, delayed, Dir::Right, 3, 1, true);
  CHECK(printed.data == printed_ref.data);
  const Map opponent = hrc_channel(now, delayed, Dir::Right, 3, 1, false);
  bool differs = false;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    differs |= printed.data[i] != opponent.data[i];
  }
  CHECK(differs);
}

TEST_CASE("horizontal mirroring swaps right and left responses") {
  std::mt19937 rng(24);
  const Map now = testutil::sparse_int_map(rng, 0.1);
  const Map delayed = testutil::sparse_int_map(rng, 0.1);
  const Map fn = testutil::flipped_horizontal(now);
  const Map fd = testutil::flipped_horizontal(delayed);
  const Map r_flipped = hrc_channel(fn, fd, Dir::Right, 3, 1);
  const Map l_orig = hrc_channel(now, delayed, Dir::Left, 3, 1);
  const Map want = testutil::flipped_horizontal(l_orig);
  CHECK(r_flipped.data == want.data);

  // Vertical directions keep their identity at mirrored coordinates.
  const Map u_flipped = hrc_channel(fn, fd, Dir::Up, 3, 1);
  const Map u_orig = hrc_channel(now, delayed, Dir::Up, 3, 1);
  CHECK(u_flipped.data == testutil::flipped_horizontal(u_orig).data);
}

TEST_CASE("reversing time order negates the output") {
  std::mt19937 rng(25);
  const Map now = testutil::sparse_int_map(rng, 0.1);
  const Map delayed = testutil::sparse_int_map(rng, 0.1);
  for (Dir dir : {Dir::Right, Dir::Left, Dir::Down, Dir::Up}) {
    const Map fwd = hrc_channel(now, delayed, dir, 3, 1);
    const Map rev = hrc_channel(delayed, now, dir, 3, 1);
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      CHECK(fwd.data[i] == doctest::Approx(-rev.data[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("local_motion sums the two channel outputs") {
  std::mt19937 rng(26);
  MotionMaps t4{testutil::random_map(rng, -5, 5), testutil::random_map(rng, -5, 5),
                testutil::random_map(rng, -5, 5), testutil::random_map(rng, -5, 5)};
  MotionMaps zero{Map::frame_sized(), Map::frame_sized(), Map::frame_sized(),
                  Map::frame_sized()};
  const MotionMaps lm = local_motion(t4, zero);
  CHECK(lm.r.data == t4.r.data);
  CHECK(lm.u.data == t4.u.data);

  MotionMaps t5{testutil::random_map(rng, -5, 5), testutil::random_map(rng, -5, 5),
                testutil::random_map(rng, -5, 5), testutil::random_map(rng, -5, 5)};
  const MotionMaps both = local_motion(t4, t5);
  for (std::size_t i = 0; i < both.r.size(); ++i) {
    CHECK(both.r.data[i] == t4.r.data[i] + t5.r.data[i]);
    CHECK(both.l.data[i] == t4.l.data[i] + t5.l.data[i]);
    CHECK(both.d.data[i] == t4.d.data[i] + t5.d.data[i]);
    CHECK(both.u.data[i] == t4.u.data[i] + t5.u.data[i]);
  }
}

TEST_CASE("dark bar moving right drives lm_r positive (OFF channel)") {
  // A dark bar stepping right over a light background; the delayed channels
  // come from the previous frame pair.
  Frame f0, f1, f2;
  f0.img.fill(200);
  f1.img.fill(200);
  f2.img.fill(200);
  for (int y = 30; y <= 40; ++y) {
    for (int x = 20; x <= 24; ++x) f0.img.at(x, y) = 30;
    for (int x = 22; x <= 26; ++x) f1.img.at(x, y) = 30;
    for (int x = 24; x <= 28; ++x) f2.img.at(x, y) = 30;
  }
  const ChannelPair delayed = rectify(retina_diff(f0, f1), 0.25);
  const ChannelPair curr = rectify(retina_diff(f1, f2), 0.25);
  MotionMaps t4 = hrc_all(curr.on, delayed.on, 3, 1);
  MotionMaps t5 = hrc_all(curr.off, delayed.off, 3, 1);
  const MotionMaps lm = local_motion(t4, t5);
  double max_r = 0.0, max_l = 0.0;
  for (std::size_t i = 0; i < lm.r.size(); ++i) {
    max_r = std::max(max_r, lm.r.data[i]);
    max_l = std::max(max_l, lm.l.data[i]);
  }
  CHECK(max_r > 0.0);
  // where rightward is strongest, leftward must not also be positive
  std::size_t arg = 0;
  for (std::size_t i = 0; i < lm.r.size(); ++i) {
    if (lm.r.data[i] > lm.r.data[arg]) arg = i;
  }
  CHECK(lm.l.data[arg] <= 0.0);
}

TEST_CASE("delay line warms after depth pushes and is depth frames old") {
  DelayLine line(2, false);
  CHECK_FALSE(line.warm());
  ChannelPair a{Map::frame_sized(), Map::frame_sized()};
  a.on.at(0, 0) = 1.0;
  ChannelPair b{Map::frame_sized(), Map::frame_sized()};
  b.on.at(0, 0) = 2.0;
  ChannelPair c{Map::frame_sized(), Map::frame_sized()};
  c.on.at(0, 0) = 3.0;
  line.push(a);
  CHECK_FALSE(line.warm());
  line.push(b);
  REQUIRE(line.warm());
  CHECK(line.oldest().on.at(0, 0) == 1.0);
  line.push(c);
  CHECK(line.oldest().on.at(0, 0) == 2.0);
}

TEST_CASE("compact delay line is lossless for rectified 8-bit inputs") {
  std::mt19937 rng(27);
  Map diff = testutil::random_map(rng, -255.0, 255.0);
  for (auto& v : diff.data) v = std::round(v);  // integer-valued change map
  const ChannelPair ch = rectify(diff, 0.25);
  DelayLine line(1, true);
  line.push(ch);
  const ChannelPair back = line.oldest();
  CHECK(back.on.data == ch.on.data);
  CHECK(back.off.data == ch.off.data);
  CHECK(line.buffer_bytes() < DelayLine(1, false).buffer_bytes());
}

TEST_SUITE_END();
