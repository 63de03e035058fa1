#pragma once
// Closed-form reference kernel on [-L, L] for the one-dimensional problem with
// first-order Sobolev part and operator D = d/dx:
//   K(x,y) = gamma/(2 lambda sinh(2 gamma L)) *
//              [ (cosh(2 gamma L) + cosh(2 gamma x)) cosh(gamma (x-y))
//                + ((1 - 2*[x>y]) sinh(2 gamma L) - sinh(2 gamma x)) sinh(gamma (x-y)) ]
// with gamma = sqrt(lambda / (lambda + mu)), plus the kernel-ridge fit through
// it and closed-form eigenvalue brackets.

#include <utility>

#include "pikl/types.hpp"

namespace pikl {

struct Oracle1DParams {
  double lambda = 1.0;  // > 0
  double mu = 0.0;      // >= 0
  double L = 1.0;       // > 0

  [[nodiscard]] double gamma() const;
};

// Evaluates K via an equivalent compact form,
//   K(x,y) = gamma/(2 lambda) * [cosh(2gL - g|x-y|) + cosh(g(x+y))] / sinh(2gL),
// switching to exponential differences once 2gL is large enough to overflow
// the hyperbolics.
double kernel_exact(const Oracle1DParams& p, double x, double y);

// Kernel-ridge predictor f(x) = sum_i w_i K(x, X_i), w = (K + n I)^{-1} Y.
class ExactPredictor {
 public:
  ExactPredictor(Oracle1DParams p, RVec X, RVec w) : p_(p), X_(std::move(X)), w_(std::move(w)) {}
  double operator()(double x) const;
  [[nodiscard]] const RVec& weights() const { return w_; }

 private:
  Oracle1DParams p_;
  RVec X_;
  RVec w_;
};

ExactPredictor fit_exact_kernel(const RVec& X, const RVec& Y, const Oracle1DParams& p);

// (lower, upper) bounds for the k-th descending eigenvalue, k >= 3:
//   4L^2/((lambda+mu)(k+4)^2 pi^2)  <=  sigma_k  <=  4L^2/((lambda+mu)(k-2)^2 pi^2)
std::pair<double, double> eigen_brackets(const Oracle1DParams& p, int k);

}  // namespace pikl
