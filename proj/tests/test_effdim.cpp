#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "pikl/effdim.hpp"
#include "pikl/oracle1d.hpp"
#include "pikl/rng.hpp"
#include "oracles.hpp"

using pikl::CharMatrix;
using pikl::CMat;
using pikl::Domain;
using pikl::FrequencyGrid;
using pikl::kPi;
using pikl::LinearOperator;
using pikl::PenaltyMatrix;
using pikl::PenaltySpec;
using pikl::RVec;
using pikl::SobolevMode;

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

}  // namespace

TEST_CASE("full torus with a diagonal penalty has an explicit spectrum") {
  FrequencyGrid g(vec1(2.0), 6);
  PenaltySpec spec{0.3, 0.0, 2, SobolevMode::PaperVerbatim};
  Domain torus = Domain::cube(vec1(2.0));
  PenaltyMatrix M = pikl::assemble_M(g, LinearOperator::zero(1), torus, spec);
  CharMatrix C = pikl::char_matrix(torus, g);

  RVec eigs = pikl::effdim_spectrum(C, M);
  std::vector<double> want;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double k2 = static_cast<double>(g.multi_index_of(i).squaredNorm());
    want.push_back(1.0 / (spec.lambda * (1.0 + std::pow(k2 / 2.0, 2))));
  }
  std::sort(want.rbegin(), want.rend());
  REQUIRE(eigs.size() == static_cast<std::int64_t>(want.size()));
  for (std::int64_t i = 0; i < eigs.size(); ++i) {
    CHECK(eigs[i] == doctest::Approx(want[i]).epsilon(1e-12));
    if (i > 0) CHECK(eigs[i] <= eigs[i - 1]);
  }
}

TEST_CASE("effective dimension closed forms") {
  CHECK(pikl::effective_dimension(RVec::Zero(5)) == 0.0);
  RVec one(1);
  one << 1.0;
  CHECK(pikl::effective_dimension(one) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pikl::effective_dimension(one, 3.0) == doctest::Approx(0.75).epsilon(1e-15));

  pikl::Rng rng(5);
  RVec spec(40);
  for (int i = 0; i < 40; ++i) spec[i] = std::exp(rng.normal());
  double prev = 0.0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 7.0}) {
    const double N = pikl::effective_dimension(spec, kappa);
    CHECK(N >= prev);
    CHECK(N <= 40.0);
    prev = N;
  }

  RVec bad(2);
  bad << 1.0, -1e-6;
  CHECK_THROWS_AS((void)pikl::effective_dimension(bad), pikl::NumericError);
  RVec tiny(1);
  tiny << -1e-12;
  CHECK(pikl::effective_dimension(tiny) == 0.0);
  CHECK_THROWS_AS((void)pikl::effective_dimension(one, 0.0), pikl::ConfigError);
}

TEST_CASE("squared singular values match a dense eigendecomposition") {
  FrequencyGrid g(vec1(1.5), 5);
  PenaltySpec spec{0.05, 0.8, 2, SobolevMode::DerivativeEnergy};
  Domain window = Domain::translate(vec1(0.2), Domain::cube(vec1(0.7)));
  PenaltyMatrix M = pikl::assemble_M(g, LinearOperator::parse("d1^2 - d1", 1), window, spec);
  CharMatrix C = pikl::char_matrix(window, g);

  RVec eigs = pikl::effdim_spectrum(C, M);

  const CMat direct = C.entries * M.M.inverse() * C.entries;
  Eigen::SelfAdjointEigenSolver<CMat> es(direct);
  RVec want = es.eigenvalues().reverse();
  REQUIRE(eigs.size() == want.size());
  for (std::int64_t i = 0; i < eigs.size(); ++i) {
    CHECK(std::abs(eigs[i] - std::max(want[i], 0.0)) <= 1e-8 * (1.0 + eigs[0]));
  }

  // operator norm bound through the penalty floor
  Eigen::SelfAdjointEigenSolver<CMat> em(M.M);
  CHECK(eigs[0] <= (1.0 + 1e-10) / em.eigenvalues().minCoeff());
}

TEST_CASE("effective dimension shrinks as the penalty grows") {
  FrequencyGrid g(vec1(2.0), 12);
  Domain window = Domain::cube(vec1(1.0));
  LinearOperator op = LinearOperator::parse("d1", 1);
  CharMatrix C = pikl::char_matrix(window, g);

  auto N_at = [&](double lambda, double mu) {
    PenaltySpec spec{lambda, mu, 1, SobolevMode::DerivativeEnergy};
    PenaltyMatrix M = pikl::assemble_M(g, op, window, spec);
    return pikl::effective_dimension(pikl::effdim_spectrum(C, M));
  };

  double prev = 1e300;
  for (double lambda : {1e-3, 1e-2, 1e-1, 1.0, 1e2, 1e5, 1e9}) {
    const double N = N_at(lambda, 1.0);
    CHECK(N <= prev * (1.0 + 1e-9));
    prev = N;
  }
  CHECK(prev <= 1e-6);  // lambda -> infinity kills every mode

  prev = 1e300;
  for (double mu : {0.0, 0.5, 2.0, 10.0, 1e4}) {
    const double N = N_at(0.01, mu);
    CHECK(N <= prev * (1.0 + 1e-9));
    CHECK(N >= 0.0);
    CHECK(N <= static_cast<double>(g.size()));
    prev = N;
  }
}

TEST_CASE("truncated spectrum sits inside the continuum brackets") {
  // first-order roughness on [-1, 1]: eigenvalue k of the limiting operator
  // lies between 4L^2/((lambda+mu)(k+4)^2 pi^2) and 4L^2/((lambda+mu)(k-2)^2 pi^2)
  const double lambda = 0.01, mu = 1.0, L = 1.0;
  FrequencyGrid g(vec1(2.0 * L), 100);
  Domain window = Domain::cube(vec1(L));
  PenaltySpec spec{lambda, mu, 1, SobolevMode::DerivativeEnergy};
  PenaltyMatrix M = pikl::assemble_M(g, LinearOperator::parse("d1", 1), window, spec);
  CharMatrix C = pikl::char_matrix(window, g);
  RVec eigs = pikl::effdim_spectrum(C, M);

  pikl::Oracle1DParams params{lambda, mu, L};
  for (int k = 3; k <= 50; ++k) {
    const auto [lo, hi] = pikl::eigen_brackets(params, k);
    CHECK(lo > 0.0);
    CHECK(lo < hi);
    CHECK(eigs[k - 1] >= lo);
    CHECK(eigs[k - 1] <= hi);
  }
  CHECK_THROWS_AS(pikl::eigen_brackets(params, 2), std::invalid_argument);

  // coarser truncation only loses mass: eigenvalues increase with m
  FrequencyGrid g25(vec1(2.0 * L), 25);
  PenaltyMatrix M25 = pikl::assemble_M(g25, LinearOperator::parse("d1", 1), window, spec);
  RVec eigs25 = pikl::effdim_spectrum(pikl::char_matrix(window, g25), M25);
  for (int k = 1; k <= 20; ++k) {
    CHECK(eigs25[k - 1] <= eigs[k - 1] * (1.0 + 1e-9));
  }
}

TEST_CASE("default schedule values") {
  const pikl::Schedule sched = pikl::default_schedule();
  const auto [lambda, mu] = sched(100.0);
  CHECK(lambda == doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-15));
  CHECK(mu == doctest::Approx(1.0 / std::log(100.0)).epsilon(1e-15));
}

TEST_CASE("oscillator curve grows slower than any power") {
  pikl::EffDimProblem problem{FrequencyGrid(vec1(2.0), 100),
                              LinearOperator::parse("d1^2 + 1", 1),
                              Domain::cube(vec1(1.0)),
                              PenaltySpec{1.0, 1.0, 2, SobolevMode::PaperVerbatim},
                              1.0};
  const std::vector<double> ns = {100, 316, 1000, 3162, 10000};
  const auto points = pikl::effdim_curve(problem, ns);
  REQUIRE(points.size() == ns.size());

  std::vector<double> xs, ys;
  for (const auto& pt : points) {
    CHECK(pt.N > 0.0);
    CHECK(pt.top_eigenvalues.size() == 20);
    xs.push_back(std::log(pt.n));
    ys.push_back(std::log(pt.N));
  }
  const double slope = oracles::slope(xs, ys);
  MESSAGE("oscillator effective-dimension slope: ", slope);
  CHECK(slope <= 0.2);
  CHECK(slope >= -0.05);

  pikl::csv::Table t = pikl::effdim_csv(points, 100);
  REQUIRE(t.header.size() == 25);
  CHECK(t.header[0] == "n");
  CHECK(t.header[4] == "N");
  CHECK(t.header[5] == "eig1");
  CHECK(t.header[24] == "eig20");
  REQUIRE(t.rows.size() == ns.size());
  CHECK(std::stod(t.rows[0][0]) == 100.0);
  CHECK(std::stod(t.rows[0][3]) == 100.0);
  CHECK(std::stod(t.rows[2][4]) == doctest::Approx(points[2].N).epsilon(1e-9));
  CHECK(std::stod(t.rows[1][5]) == doctest::Approx(points[1].top_eigenvalues[0]).epsilon(1e-9));
}

TEST_CASE("heat window on a disk keeps the dimension flat") {
  pikl::EffDimProblem problem{FrequencyGrid(vec2(2.0 * kPi, 2.0 * kPi), 20),
                              LinearOperator::parse("d1 - d2^2", 2),
                              Domain::ball2d(kPi),
                              PenaltySpec{1.0, 1.0, 2, SobolevMode::PaperVerbatim},
                              1.0};
  const std::vector<double> ns = {100, 316, 1000};
  const auto points = pikl::effdim_curve(problem, ns);

  std::vector<double> xs, ys;
  for (const auto& pt : points) {
    xs.push_back(std::log(pt.n));
    ys.push_back(std::log(pt.N));
  }
  const double slope = oracles::slope(xs, ys);
  MESSAGE("disk heat effective-dimension slope: ", slope);
  CHECK(slope <= 0.3);
}
