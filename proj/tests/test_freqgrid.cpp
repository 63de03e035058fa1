#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pikl/freqgrid.hpp"
#include "pikl/rng.hpp"
#include "oracles.hpp"

using pikl::Complex;
using pikl::CVec;
using pikl::FourierCoefficients;
using pikl::FrequencyGrid;
using pikl::IVec;
using pikl::kPi;
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

// random coefficients with z_{-k} = conj(z_k), so f_z is real-valued
CVec conj_symmetric(const FrequencyGrid& g, Rng& rng) {
  CVec z(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    z[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const IVec k = g.multi_index_of(i);
    const std::int64_t j = g.index_of(-k);
    if (j > i) z[j] = std::conj(z[i]);
    if (j == i) z[i] = Complex(z[i].real(), 0.0);
  }
  return z;
}

}  // namespace

TEST_CASE("mode enumeration is lexicographic with the first dimension slowest") {
  FrequencyGrid g1(vec1(kPi), 1);
  REQUIRE(g1.size() == 3);
  CHECK(g1.multi_index_of(0)[0] == -1);
  CHECK(g1.multi_index_of(1)[0] == 0);
  CHECK(g1.multi_index_of(2)[0] == 1);

  FrequencyGrid g2(vec2(1.0, 2.0), 1);
  REQUIRE(g2.size() == 9);
  CHECK(g2.multi_index_of(0) == IVec(vec2(-1, -1).cast<int>()));
  CHECK(g2.multi_index_of(1) == IVec(vec2(-1, 0).cast<int>()));
  CHECK(g2.multi_index_of(8) == IVec(vec2(1, 1).cast<int>()));

  FrequencyGrid g20(vec2(1.0, 1.0), 20);
  CHECK(g20.size() == 1681);
}

TEST_CASE("index and multi-index are inverse bijections") {
  FrequencyGrid g(vec2(1.0, 3.0), 3);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    CHECK(g.index_of(g.multi_index_of(i)) == i);
  }
  RVec b3(3);
  b3 << 1.0, 2.0, 0.5;
  FrequencyGrid g3(b3, 2);
  REQUIRE(g3.size() == 125);
  for (std::int64_t i = 0; i < g3.size(); ++i) {
    CHECK(g3.index_of(g3.multi_index_of(i)) == i);
  }
}

TEST_CASE("volume and feature normalization") {
  FrequencyGrid g(vec2(1.0, 2.0), 2);
  CHECK(g.volume() == doctest::Approx(2.0 * 4.0).epsilon(1e-15));

  const CVec at0 = g.feature_vector(vec2(0.0, 0.0));
  const double want = 1.0 / std::sqrt(g.volume());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    CHECK(at0[i].real() == doctest::Approx(want).epsilon(1e-14));
    CHECK(at0[i].imag() == doctest::Approx(0.0).epsilon(1e-14));
  }

  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const RVec x = vec2(rng.uniform(-1, 1), rng.uniform(-2, 2));
    const double n2 = g.feature_vector(x).squaredNorm();
    CHECK(n2 == doctest::Approx(g.size() / g.volume()).epsilon(1e-12));
  }
}

TEST_CASE("feature phase matches the mode definition") {
  FrequencyGrid g(vec1(kPi), 2);
  const double x = 0.73;
  const CVec phi = g.feature_vector(vec1(x));
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  for (int k = -2; k <= 2; ++k) {
    const Complex want = norm * std::exp(Complex(0.0, kPi * k * x / kPi));
    IVec kk(1);
    kk << k;
    const Complex got = phi[g.index_of(kk)];
    CHECK(std::abs(got - want) < 1e-14);
  }
}

TEST_CASE("features are 2B-periodic") {
  FrequencyGrid g(vec2(1.0, 1.5), 3);
  const CVec a = g.feature_vector(vec2(1.0, 0.4));
  const CVec b = g.feature_vector(vec2(-1.0, 0.4));
  CHECK((a - b).norm() < 1e-12);
  const CVec c = g.feature_vector(vec2(0.3, 1.5));
  const CVec d = g.feature_vector(vec2(0.3, -1.5));
  CHECK((c - d).norm() < 1e-12);
  // wrapping far outside the torus
  const CVec e = g.feature_vector(vec2(0.3 + 4.0, 0.4 - 6.0));
  const CVec f = g.feature_vector(vec2(0.3, 0.4));
  CHECK((e - f).norm() < 1e-10);
}

TEST_CASE("evaluate implements sum of z_k times conjugate features") {
  FrequencyGrid g(vec1(kPi), 1);
  CVec z = CVec::Zero(3);
  IVec one(1);
  one << 1;
  z[g.index_of(one)] = Complex(2.0, 0.0);
  const double x = 0.31;
  const Complex got = g.evaluate(z, vec1(x));
  const Complex want = 2.0 * std::conj(std::exp(Complex(0, x)) / std::sqrt(2 * kPi));
  CHECK(std::abs(got - want) < 1e-14);

  // zero coefficients evaluate to zero, unit mode 0 to the constant
  CHECK(std::abs(g.evaluate(CVec::Zero(3), vec1(0.5))) == 0.0);
  CVec e0 = CVec::Zero(3);
  IVec zero(1);
  zero << 0;
  e0[g.index_of(zero)] = 1.0;
  CHECK(std::abs(g.evaluate(e0, vec1(-2.2)) - 1.0 / std::sqrt(2 * kPi)) < 1e-14);
}

TEST_CASE("evaluate is linear in the coefficients") {
  FrequencyGrid g(vec2(1.0, 2.0), 2);
  Rng rng(17);
  CVec z1(g.size()), z2(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    z1[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    z2[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  const Complex a(1.7, -0.4);
  for (int rep = 0; rep < 20; ++rep) {
    const RVec x = vec2(rng.uniform(-1, 1), rng.uniform(-2, 2));
    const Complex lhs = g.evaluate(a * z1 + z2, x);
    const Complex rhs = a * g.evaluate(z1, x) + g.evaluate(z2, x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("conjugate-symmetric coefficients give a real-valued function") {
  Rng rng(23);
  FrequencyGrid g(vec2(1.0, 1.0), 2);
  const CVec z = conj_symmetric(g, rng);
  for (int rep = 0; rep < 100; ++rep) {
    const RVec x = vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(std::abs(g.evaluate(z, x).imag()) <= 1e-12);
  }
}

TEST_CASE("Parseval identity on the full torus") {
  Rng rng(31);

  // d = 1: multiple of the period with 64 nodes, trapezoid is exact here
  FrequencyGrid g1(vec1(kPi), 3);
  CVec z1(g1.size());
  for (std::int64_t i = 0; i < g1.size(); ++i) {
    z1[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  const int n = 64;
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -kPi + 2.0 * kPi * i / n;
    q += std::norm(g1.evaluate(z1, vec1(x)));
  }
  q *= 2.0 * kPi / n;
  CHECK(q == doctest::Approx(z1.squaredNorm()).epsilon(1e-8));

  // d = 2
  FrequencyGrid g2(vec2(1.0, 2.0), 2);
  CVec z2(g2.size());
  for (std::int64_t i = 0; i < g2.size(); ++i) {
    z2[i] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  double q2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const RVec x = vec2(-1.0 + 2.0 * i / n, -2.0 + 4.0 * j / n);
      q2 += std::norm(g2.evaluate(z2, x));
    }
  }
  q2 *= g2.volume() / (static_cast<double>(n) * n);
  CHECK(q2 == doctest::Approx(z2.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("coefficient container validates length and reports symmetry residual") {
  FrequencyGrid g(vec1(1.0), 2);
  CHECK_THROWS(FourierCoefficients(g, CVec::Zero(4)));

  Rng rng(41);
  FourierCoefficients sym(g, conj_symmetric(g, rng));
  CHECK(sym.conj_symmetry_residual() <= 1e-15);

  CVec broken = sym.z;
  broken[0] += Complex(0.0, 0.5);
  FourierCoefficients bad(g, broken);
  CHECK(bad.conj_symmetry_residual() >= 0.4);
}

TEST_CASE("grids compare by shape") {
  CHECK(FrequencyGrid(vec1(1.0), 2) == FrequencyGrid(vec1(1.0), 2));
  CHECK(FrequencyGrid(vec1(1.0), 2) != FrequencyGrid(vec1(1.0), 3));
  CHECK(FrequencyGrid(vec1(1.0), 2) != FrequencyGrid(vec1(2.0), 2));
  CHECK(FrequencyGrid(vec1(1.0), 1) != FrequencyGrid(vec2(1.0, 1.0), 1));
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS(FrequencyGrid(vec1(0.0), 1));
  CHECK_THROWS(FrequencyGrid(vec1(-1.0), 1));
  CHECK_THROWS(FrequencyGrid(vec1(1.0), -1));
  CHECK_THROWS((void)FrequencyGrid(vec1(1.0), 1).feature_vector(vec2(0, 0)));
}
