#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "pikl/rng.hpp"

using pikl::Rng;

TEST_CASE("matches the published SplitMix64 reference outputs") {
  // Reference sequence of the original splitmix64.c for these seeds.
  Rng a(0);
  CHECK(a.next_u64() == 16294208416658607535ULL);
  CHECK(a.next_u64() == 7960286522194355700ULL);
  CHECK(a.next_u64() == 487617019471545679ULL);

  Rng b(1234567);
  CHECK(b.next_u64() == 6457827717110365317ULL);
  CHECK(b.next_u64() == 3203168211198807973ULL);
  CHECK(b.next_u64() == 9817491932198370423ULL);
}

TEST_CASE("same seed reproduces the stream bit for bit") {
  Rng a(0xDEADBEEF), b(0xDEADBEEF);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform stays in [0,1) and has the right first moments") {
  Rng r(7);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  // 4 standard errors of the mean and a loose band for the variance
  CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniform(a,b) maps into [a,b)") {
  Rng r(11);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform(-3.0, 5.0);
    CHECK(u >= -3.0);
    CHECK(u < 5.0);
  }
}

TEST_CASE("normal has mean 0 and variance 1 within Monte Carlo error") {
  Rng r(13);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("normal consumes exactly two raw draws") {
  Rng a(99);
  (void)a.normal();
  Rng b(99);
  (void)b.next_u64();
  (void)b.next_u64();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams are deterministic and decorrelated from the parent") {
  Rng parent(4242);
  Rng s1 = parent.substream(1);
  Rng s2 = parent.substream(2);
  Rng s1again = Rng(4242).substream(1);
  CHECK(s1.next_u64() == s1again.next_u64());

  // different tags give different streams
  Rng sa = parent.substream(1), sb = parent.substream(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (sa.next_u64() == sb.next_u64());
  CHECK(same == 0);
  (void)s2;
}

TEST_CASE("substream does not disturb the parent counter") {
  Rng a(5), b(5);
  (void)a.substream(17);
  CHECK(a.next_u64() == b.next_u64());
}
