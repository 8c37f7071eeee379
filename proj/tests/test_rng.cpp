#include <doctest.h>

#include <cmath>

#include "sacg/rng.hpp"

using sacg::Rng;

TEST_CASE("same seed reproduces the stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Rng rng(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("below covers the full range without bias spikes") {
  Rng rng(7);
  int counts[10] = {};
  for (int i = 0; i < 100000; ++i) ++counts[rng.below(10)];
  for (int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(1) == 0);
}

TEST_CASE("derived streams are independent of parent consumption") {
  Rng parent(3);
  Rng derived_before = parent.derive(5);
  parent.next_u64();
  parent.next_u64();
  Rng derived_after = parent.derive(5);
  for (int i = 0; i < 100; ++i) CHECK(derived_before.next_u64() == derived_after.next_u64());

  Rng other = parent.derive(6);
  CHECK(other.next_u64() != parent.derive(5).next_u64());
}

TEST_CASE("symmetric_unit spans (-1, 1)") {
  Rng rng(11);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = rng.symmetric_unit();
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(std::fabs(sum / 100000.0) < 0.02);
}
