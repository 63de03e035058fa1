#ifndef PIKL_DATAGEN_HPP
#define PIKL_DATAGEN_HPP

#include <cstdint>
#include <functional>

#include "pikl/fit.hpp"
#include "pikl/types.hpp"

namespace pikl {

// Damped-oscillation regression task: Y = f1(X) + noise with X ~ U([-pi, pi]).
struct HarmonicData {
  Dataset data;
  std::function<double(const RVec&)> truth;
  std::function<double(double)> f1, f2;  // the two decaying oscillation modes
  double sigma = 0.5;
};

HarmonicData gen_harmonic(std::int64_t n, std::uint64_t seed);

// Heat-operator regression with a deliberate model mismatch on [-pi, pi]^2.
struct HeatHybridData {
  Dataset data;  // columns (t, x)
  std::function<double(const RVec&)> truth;
  std::function<double(const RVec&)> residual;  // heat operator applied to truth
  double residual_l2_sq = 0.0;  // mean-square residual over the domain
  double truth_l2_sq = 0.0;     // mean-square of the truth itself
  double sigma = 0.5;
};

HeatHybridData gen_heat_hybrid(std::int64_t n, std::uint64_t seed);

// Wave-equation boundary/initial samples on [0,1]^2 in four groups:
// (0, U) with the initial profile, (U, 0) and (U, 1) at zero, and a
// first-order-in-time row at t = 1/n.
Dataset gen_wave_boundary(std::int64_t n, double sigma, std::uint64_t seed);

struct Heat4dData {
  Dataset data;  // d = 4
  std::function<double(const RVec&)> truth;
  double sigma = 0.1;
};

// Boundary samples of a 4-D heat solution on [-1/2, 1/2]^4: the t = 0 face
// plus the six spatial faces, in equal proportion.
Heat4dData gen_heat4d(std::int64_t n, std::uint64_t seed);

// Two bottom series with partially cancelling noise and their sum.
struct HierToyData {
  RMat x_train;  // n x 2d, columns (X1 | X2)
  RMat y_train;  // n x 3, columns (Y1, Y2, Y3 = Y1 + Y2)
  RMat x_test;
  RMat y_test;
  RMat s_benchmark;  // 3 x 2; maps (Y1, Y2) to (Y3, Y1, Y2)
  RVec theta1, theta2;
  double sigma2 = 0.0;
};

HierToyData gen_hier_toy(int d, int n_train, int n_test, double sigma2,
                         std::uint64_t seed);

struct HierToyErrors {
  double bu = 0.0;
  double rec = 0.0;
  double mint = 0.0;
  double weakl = 0.0;
  bool rec_feasible = true;
  bool mint_feasible = true;
};

// Mean hierarchical test error (sum of the three MSEs) over Monte Carlo draws
// for the bottom-up, reconciliation, minimum-trace, and joint estimators.
// The joint-OLS baselines are flagged infeasible when the stacked design has
// more than 0.9 * n_train columns.
HierToyErrors hier_toy_benchmark(int d, int n_train, int n_test, double sigma2,
                                 int draws, std::uint64_t seed);

}  // namespace pikl

#endif
