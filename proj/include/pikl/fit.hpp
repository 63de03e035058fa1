#pragma once
// Regularized Fourier-feature regression: theta = (Phi^* Phi + n M)^{-1} Phi^* Y,
// with the Gram matrix accumulated in multilevel-Toeplitz form (one streaming
// pass over the data, (4m+1)^d distinct values) and a Hermitian factorization
// solve.

#include <functional>
#include <memory>

#include "pikl/freqgrid.hpp"
#include "pikl/penalty.hpp"
#include "pikl/types.hpp"

namespace pikl {

struct Dataset {
  RMat X;  // n x d, points on the torus (wrapped periodically when evaluated)
  RVec Y;  // n
};

void validate_dataset(const Dataset& data, int dim);

struct PiklModel {
  FourierCoefficients theta;
  double lambda = 0.0;       // penalty floor used in the fit
  std::int64_t n = 0;        // observations used
  double solve_residual = 0.0;  // ||H theta - b|| / (1 + ||b||)

  [[nodiscard]] double predict(const RVec& x) const;
  [[nodiscard]] Complex predict_complex(const RVec& x) const;  // imaginary part is a diagnostic
  [[nodiscard]] RVec predict_many(const RMat& points) const;
};

PiklModel fit(const FrequencyGrid& grid, const PenaltyMatrix& M, const Dataset& data);

// Phi(x)^* M^{-1} Phi(y) with the factorization of M cached across calls.
class KernelEvaluator {
 public:
  KernelEvaluator(const PenaltyMatrix& M);
  [[nodiscard]] Complex operator()(const RVec& x, const RVec& y) const;
  [[nodiscard]] const FrequencyGrid& grid() const { return grid_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  FrequencyGrid grid_;
};

Complex kernel_value(const PenaltyMatrix& M, const RVec& x, const RVec& y);

// ( sum_i |f(x_i) - truth(x_i)|^2 / sum_i |truth(x_i)|^2 )^{1/2}
double l2_relative_error(const PiklModel& model,
                         const std::function<double(const RVec&)>& truth,
                         const RMat& eval_points);

// Uniform product grid with per_dim points per axis spanning [lo, hi].
RMat grid_points(const RVec& lo, const RVec& hi, int per_dim);

}  // namespace pikl
