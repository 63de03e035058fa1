#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pikl/rng.hpp"
#include "pikl/schemes.hpp"

using pikl::kPi;
using pikl::Rng;
using pikl::WaveErrorSummary;
using pikl::WaveField;
using pikl::WaveGrid;
using pikl::WaveScheme;
using pikl::WaveSplit;

namespace {

WaveGrid clean_grid(int l1, int l2) {
  WaveGrid g;
  g.l1 = l1;
  g.l2 = l2;
  g.f0 = pikl::standard_wave_profile;
  return g;
}

}  // namespace

TEST_CASE("budget splits") {
  WaveGrid c = pikl::make_wave_grid(10000, WaveSplit::CourantOne);
  CHECK(c.l2 == 2000);
  CHECK(c.l1 == 4000);
  CHECK(c.cfl() == 1.0);

  WaveGrid t = pikl::make_wave_grid(10000, WaveSplit::Thirds);
  CHECK(t.l1 == 3333);
  CHECK(t.l2 == 3333);
  CHECK(t.cfl() == 2.0);

  WaveGrid tiny = pikl::make_wave_grid(1, WaveSplit::CourantOne);
  CHECK(tiny.l2 == 2);
  CHECK(tiny.l1 == 4);
}

TEST_CASE("zero initial profile stays zero") {
  WaveGrid g = clean_grid(20, 10);
  g.f0 = [](double) { return 0.0; };
  for (WaveScheme s : {WaveScheme::Euler, WaveScheme::Rk4, WaveScheme::CnAsPrinted,
                       WaveScheme::CnStandard}) {
    WaveErrorSummary e = pikl::wave_error(s, g, [](double, double) { return 0.0; });
    CHECK(e.max_abs == 0.0);
    CHECK(e.l2_rel == 0.0);
    CHECK(!e.diverged);
  }
}

TEST_CASE("leapfrog at Courant number one reproduces the standing waves") {
  // at cfl = 1 the update next[b] = cur[b+1] + cur[b-1] - prev[b] propagates
  // d'Alembert solutions exactly, and the Taylor first row equals
  // (f0(b+1) + f0(b-1))/2, so the march is exact up to roundoff
  WaveGrid g = clean_grid(80, 40);
  WaveErrorSummary e = pikl::wave_error(WaveScheme::Euler, g, pikl::standard_wave_truth);
  CHECK(e.cfl == 1.0);
  CHECK(!e.diverged);
  CHECK(e.l2_rel <= 1e-12);
}

TEST_CASE("clean benchmark errors at n = 10000") {
  WaveGrid g = pikl::make_wave_grid(10000, WaveSplit::CourantOne);
  const double euler =
      pikl::wave_error(WaveScheme::Euler, g, pikl::standard_wave_truth).l2_rel;
  const double rk4 = pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).l2_rel;
  const double cn =
      pikl::wave_error(WaveScheme::CnAsPrinted, g, pikl::standard_wave_truth).l2_rel;
  const double cn_std =
      pikl::wave_error(WaveScheme::CnStandard, g, pikl::standard_wave_truth).l2_rel;
  MESSAGE("clean n=1e4: euler ", euler, " rk4 ", rk4, " cn ", cn, " cn_std ", cn_std);
  CHECK(euler <= 1e-5);
  CHECK(rk4 <= 2e-5);
  CHECK(cn <= 2e-2);
  CHECK(cn_std < cn);
}

TEST_CASE("equal split is unstable for the explicit schemes") {
  WaveGrid g = pikl::make_wave_grid(300, WaveSplit::Thirds);
  CHECK(pikl::wave_error(WaveScheme::Euler, g, pikl::standard_wave_truth).diverged);
  CHECK(pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).diverged);
  WaveErrorSummary cn = pikl::wave_error(WaveScheme::CnAsPrinted, g, pikl::standard_wave_truth);
  CHECK(!cn.diverged);
  CHECK(cn.max_abs < 10.0);
}

TEST_CASE("second-order convergence away from the exact Courant number") {
  auto err = [](int l2) {
    WaveGrid g = clean_grid(4 * l2, l2);  // cfl = 1/2
    return pikl::wave_error(WaveScheme::Euler, g, pikl::standard_wave_truth).l2_rel;
  };
  const double coarse = err(25), fine = err(50);
  MESSAGE("cfl=0.5 errors: ", coarse, " -> ", fine);
  CHECK(fine < coarse);
  CHECK(coarse / fine >= 3.0);
  CHECK(coarse / fine <= 5.0);
}

TEST_CASE("march is linear in the initial profile") {
  auto f1 = [](double x) { return std::sin(2.0 * kPi * x); };
  auto f2 = [](double x) { return x * (1.0 - x); };
  WaveGrid g1 = clean_grid(30, 15), g2 = g1, gs = g1;
  g1.f0 = f1;
  g2.f0 = f2;
  gs.f0 = [&](double x) { return 2.0 * f1(x) - 3.0 * f2(x); };
  WaveField a = pikl::euler_wave(g1), b = pikl::euler_wave(g2), s = pikl::euler_wave(gs);
  CHECK((s.field - 2.0 * a.field + 3.0 * b.field).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("noise draw order is frozen") {
  WaveGrid g = clean_grid(4, 2);
  g.sigma = 1.5;
  g.seed = 7;
  WaveField f = pikl::euler_wave(g);

  Rng rng(7);
  double init[3], left[4], right[4];
  for (double& v : init) v = 1.5 * rng.normal();
  for (double& v : left) v = 1.5 * rng.normal();
  for (double& v : right) v = 1.5 * rng.normal();

  for (int b = 0; b <= 2; ++b) {
    CHECK(f.field(0, b) == pikl::standard_wave_profile(b / 2.0) + init[b]);
  }
  for (int a = 1; a <= 4; ++a) {
    CHECK(f.field(a, 0) == left[a - 1]);
    CHECK(f.field(a, 2) == right[a - 1]);
  }
}

TEST_CASE("noisy runs are deterministic in the seed") {
  WaveGrid g = pikl::make_wave_grid(500, WaveSplit::CourantOne, 0.1, 42);
  const double e1 = pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).l2_rel;
  const double e2 = pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).l2_rel;
  CHECK(e1 == e2);
  g.seed = 43;
  const double e3 = pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).l2_rel;
  CHECK(e1 != e3);
}

TEST_CASE("noisy benchmark ordering at n = 40000") {
  int ordered = 0;
  double rk4_last = 0.0, cn_last = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    WaveGrid g = pikl::make_wave_grid(40000, WaveSplit::CourantOne, 0.1, seed);
    const double euler =
        pikl::wave_error(WaveScheme::Euler, g, pikl::standard_wave_truth).l2_rel;
    const double rk4 = pikl::wave_error(WaveScheme::Rk4, g, pikl::standard_wave_truth).l2_rel;
    const double cn =
        pikl::wave_error(WaveScheme::CnAsPrinted, g, pikl::standard_wave_truth).l2_rel;
    MESSAGE("noisy seed ", seed, ": euler ", euler, " rk4 ", rk4, " cn ", cn);
    if (euler >= rk4 && rk4 >= cn) ++ordered;
    rk4_last = rk4;
    cn_last = cn;
  }
  CHECK(ordered == 5);
  CHECK(rk4_last >= 3e-2);
  // observed ~0.107 across seeds; the band guards against silent regressions
  CHECK(rk4_last <= 1.5e-1);
  CHECK(cn_last <= 3e-2);
}

TEST_CASE("field export") {
  WaveGrid g = clean_grid(2, 2);
  WaveField f = pikl::euler_wave(g);
  pikl::csv::Table t = pikl::wave_field_csv(f);
  REQUIRE(t.header == std::vector<std::string>({"t", "x", "value"}));
  REQUIRE(t.rows.size() == 9);
  CHECK(std::stod(t.rows[4][0]) == 0.5);
  CHECK(std::stod(t.rows[4][1]) == 0.5);
  CHECK(std::stod(t.rows[4][2]) == doctest::Approx(f.field(1, 1)).epsilon(1e-12));

  pikl::csv::Table sub = pikl::wave_field_csv(f, 2, 2);
  CHECK(sub.rows.size() == 4);
  CHECK_THROWS_AS(pikl::wave_field_csv(f, 0, 1), pikl::ConfigError);

  WaveGrid bad = clean_grid(1, 5);
  CHECK_THROWS_AS(pikl::euler_wave(bad), pikl::ConfigError);
  WaveGrid nof = clean_grid(4, 4);
  nof.f0 = nullptr;
  CHECK_THROWS_AS(pikl::euler_wave(nof), pikl::ConfigError);
}
