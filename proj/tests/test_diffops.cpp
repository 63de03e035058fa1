#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pikl/diffops.hpp"
#include "pikl/freqgrid.hpp"
#include "pikl/rng.hpp"
#include "oracles.hpp"

using pikl::Complex;
using pikl::CVec;
using pikl::FrequencyGrid;
using pikl::IVec;
using pikl::kPi;
using pikl::LinearOperator;
using pikl::Rng;
using pikl::RVec;

namespace {

RVec vec1(double a) {
  RVec v(1);
  v << a;
  return v;
}

RVec vec2(double a, double b) {
  RVec v(2);
  v << a, b;
  return v;
}

IVec mode1(int k) {
  IVec v(1);
  v << k;
  return v;
}

IVec mode2(int k1, int k2) {
  IVec v(2);
  v << k1, k2;
  return v;
}

}  // namespace

TEST_CASE("identity operator has unit symbol") {
  LinearOperator op = LinearOperator::parse("1", 1);
  for (int k = -3; k <= 3; ++k) {
    CHECK(std::abs(op.symbol(mode1(k), vec1(2.0)) - Complex(1, 0)) < 1e-15);
  }
  CHECK(op.order() == 0);
}

TEST_CASE("first derivative symbol is i pi k over B") {
  const double L = 0.8;
  LinearOperator op = LinearOperator::parse("d1", 1);
  for (int k = -4; k <= 4; ++k) {
    const Complex want(0.0, kPi * k / (2.0 * L));
    CHECK(std::abs(op.symbol(mode1(k), vec1(2.0 * L)) - want) < 1e-14);
  }
  CHECK(op.order() == 1);
}

TEST_CASE("Laplacian symbol on an isotropic grid") {
  const double L = 1.3;
  LinearOperator lap = LinearOperator::parse("d1^2 + d2^2", 2);
  for (int k1 = -2; k1 <= 2; ++k1) {
    for (int k2 = -2; k2 <= 2; ++k2) {
      const double want = -kPi * kPi * (k1 * k1 + k2 * k2) / (4.0 * L * L);
      const Complex got = lap.symbol(mode2(k1, k2), vec2(2 * L, 2 * L));
      CHECK(std::abs(got - Complex(want, 0)) < 1e-12);
    }
  }
  CHECK(lap.order() == 2);
}

TEST_CASE("grammar accepts the documented operator spellings") {
  CHECK(LinearOperator::parse("d1^2 + d1 + 1", 1).terms().size() == 3);
  CHECK(LinearOperator::parse("d1 - d2^2", 2).terms().size() == 2);
  CHECK(LinearOperator::parse("dt^2 - 4*dx^2", 2).terms().size() == 2);
  CHECK(LinearOperator::parse("0", 1).is_zero());
  CHECK(LinearOperator::parse("2.5*d1*d2", 2).terms().size() == 1);
  // whitespace between factors multiplies
  LinearOperator prod = LinearOperator::parse("d1 d2", 2);
  REQUIRE(prod.terms().size() == 1);
  CHECK(prod.terms()[0].orders[0] == 1);
  CHECK(prod.terms()[0].orders[1] == 1);
  CHECK(prod.order() == 2);
}

TEST_CASE("named axes map t,x,y,z and dt aliases d1 in one dimension") {
  LinearOperator heat = LinearOperator::parse("dt - dx^2", 2);
  const RVec B = vec2(2.0, 2.0);
  // dt acts on dimension 1, dx on dimension 2
  const Complex s10 = heat.symbol(mode2(1, 0), B);
  CHECK(s10.imag() == doctest::Approx(kPi / 2.0));
  const Complex s01 = heat.symbol(mode2(0, 1), B);
  CHECK(s01.real() == doctest::Approx(kPi * kPi / 4.0));

  LinearOperator one_d = LinearOperator::parse("dx", 1);
  CHECK(std::abs(one_d.symbol(mode1(1), vec1(1.0)) - Complex(0, kPi)) < 1e-14);
}

TEST_CASE("wave operator symbol") {
  LinearOperator wave = LinearOperator::parse("dt^2 - 4*dx^2", 2);
  const RVec B = vec2(1.0, 1.0);
  // (i pi k1)^2 - 4 (i pi k2)^2 = pi^2 (4 k2^2 - k1^2)
  const Complex got = wave.symbol(mode2(1, 2), B);
  CHECK(got.real() == doctest::Approx(kPi * kPi * (4 * 4 - 1)).epsilon(1e-12));
  CHECK(got.imag() == doctest::Approx(0.0));
}

TEST_CASE("zero operator has empty terms and zero symbol") {
  LinearOperator z = LinearOperator::zero(2);
  CHECK(z.is_zero());
  CHECK(z.order() == 0);
  CHECK(std::abs(z.symbol(mode2(2, -1), vec2(1, 1))) == 0.0);
  CHECK(LinearOperator::parse(z.print(), 2).is_zero());
}

TEST_CASE("print round-trips through parse") {
  Rng rng(3);
  const char* exprs[] = {"d1^2 + d1 + 1", "dt^2 - 4*dx^2", "2.5*d1*d2 - 0.5",
                         "d1 - d2^2",     "-3*d1^3",       "0"};
  for (const char* e : exprs) {
    const int dim = (std::string(e).find('2') != std::string::npos ||
                     std::string(e).find('x') != std::string::npos)
                        ? 2
                        : 1;
    LinearOperator a = LinearOperator::parse(e, 2);
    LinearOperator b = LinearOperator::parse(a.print(), 2);
    // identical symbols on a sample of modes
    for (int rep = 0; rep < 10; ++rep) {
      IVec k = mode2(static_cast<int>(rng.uniform(-4, 5)), static_cast<int>(rng.uniform(-4, 5)));
      const RVec B = vec2(1.5, 0.7);
      CHECK(std::abs(a.symbol(k, B) - b.symbol(k, B)) < 1e-13);
    }
    (void)dim;
  }
}

TEST_CASE("malformed expressions are rejected") {
  CHECK_THROWS_AS((void)LinearOperator::parse("dq", 2), pikl::ConfigError);
  CHECK_THROWS_AS((void)LinearOperator::parse("d1^1.5", 1), pikl::ConfigError);
  CHECK_THROWS_AS((void)LinearOperator::parse("", 1), pikl::ConfigError);
  CHECK_THROWS_AS((void)LinearOperator::parse("d3", 2), pikl::ConfigError);
  CHECK_THROWS_AS((void)LinearOperator::parse("dy", 1), pikl::ConfigError);
  CHECK_THROWS_AS((void)LinearOperator::parse("d1 +", 1), pikl::ConfigError);
}

TEST_CASE("symbol is linear in the coefficients") {
  LinearOperator a = LinearOperator::parse("d1^2 + 2*d1", 1);
  LinearOperator b = LinearOperator::parse("3*d1^2", 1);
  LinearOperator sum = LinearOperator::parse("4*d1^2 + 2*d1", 1);
  for (int k = -5; k <= 5; ++k) {
    const Complex lhs = a.symbol(mode1(k), vec1(1.0)) + b.symbol(mode1(k), vec1(1.0));
    CHECK(std::abs(lhs - sum.symbol(mode1(k), vec1(1.0))) < 1e-12);
  }
}

TEST_CASE("spectral application matches finite differences with h^2 refinement") {
  Rng rng(77);

  // d = 1, mixed-order operator
  {
    FrequencyGrid g(vec1(2.0), 4);
    LinearOperator op = LinearOperator::parse("d1^2 + d1 + 1", 1);
    CVec z(g.size()), dz(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) {
      z[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    const CVec syms = op.symbols(g);
    for (std::int64_t i = 0; i < g.size(); ++i) dz[i] = z[i] * std::conj(syms[i]);

    auto f = [&](double x) { return g.evaluate(z, vec1(x)); };
    auto err_at = [&](double h) {
      double worst = 0.0;
      for (int rep = 0; rep < 5; ++rep) {
        const double x = rng.uniform(-1.0, 1.0);
        const Complex fd = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h) +
                           (f(x + h) - f(x - h)) / (2 * h) + f(x);
        worst = std::max(worst, std::abs(fd - g.evaluate(dz, vec1(x))));
      }
      return worst;
    };
    const double e1 = err_at(1e-2);
    const double e2 = err_at(5e-3);
    CHECK(e2 < e1 / 3.0);
    // h^2/12 * max|f''''| with modes up to pi m / B = 2 pi
    CHECK(e2 < 5e-3);
  }

  // d = 2, heat operator
  {
    FrequencyGrid g(vec2(1.0, 1.0), 3);
    LinearOperator op = LinearOperator::parse("d1 - d2^2", 2);
    CVec z(g.size()), dz(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) {
      z[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    const CVec syms = op.symbols(g);
    for (std::int64_t i = 0; i < g.size(); ++i) dz[i] = z[i] * std::conj(syms[i]);

    auto f = [&](double t, double x) { return g.evaluate(z, vec2(t, x)); };
    auto err_at = [&](double h) {
      double worst = 0.0;
      for (int rep = 0; rep < 5; ++rep) {
        const double t = rng.uniform(-0.5, 0.5), x = rng.uniform(-0.5, 0.5);
        const Complex fd = (f(t + h, x) - f(t - h, x)) / (2 * h) -
                           (f(t, x + h) - 2.0 * f(t, x) + f(t, x - h)) / (h * h);
        worst = std::max(worst, std::abs(fd - g.evaluate(dz, vec2(t, x))));
      }
      return worst;
    };
    const double e1 = err_at(1e-2);
    const double e2 = err_at(5e-3);
    CHECK(e2 < e1 / 3.0);
    // modes reach 3 pi here, so the fourth derivative is ~80x larger
    CHECK(e2 < 1e-1);
  }
}
