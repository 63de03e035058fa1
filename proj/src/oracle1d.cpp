#include "pikl/oracle1d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

namespace pikl {

double Oracle1DParams::gamma() const {
  if (!(lambda > 0.0)) throw ConfigError("oracle1d: lambda must be positive");
  if (!(mu >= 0.0)) throw ConfigError("oracle1d: mu must be non-negative");
  if (!(L > 0.0)) throw ConfigError("oracle1d: L must be positive");
  return std::sqrt(lambda / (lambda + mu));
}

namespace {

// cosh(a) / sinh(b) for 0 < b, |a| <= b; safe for arbitrarily large b.
double cosh_over_sinh(double a, double b) {
  if (b < 350.0) return std::cosh(a) / std::sinh(b);
  return (std::exp(a - b) + std::exp(-a - b)) / (1.0 - std::exp(-2.0 * b));
}

}  // namespace

double kernel_exact(const Oracle1DParams& p, double x, double y) {
  const double tol = 1e-12 * (1.0 + p.L);
  if (std::abs(x) > p.L + tol || std::abs(y) > p.L + tol) {
    throw std::invalid_argument("oracle1d: kernel arguments must lie in [-L, L]");
  }
  const double g = p.gamma();
  const double b = 2.0 * g * p.L;
  return g / (2.0 * p.lambda) *
         (cosh_over_sinh(b - g * std::abs(x - y), b) + cosh_over_sinh(g * (x + y), b));
}

double ExactPredictor::operator()(double x) const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < X_.size(); ++i) acc += w_[i] * kernel_exact(p_, x, X_[i]);
  return acc;
}

ExactPredictor fit_exact_kernel(const RVec& X, const RVec& Y, const Oracle1DParams& p) {
  const Eigen::Index n = X.size();
  if (n < 1) throw std::invalid_argument("oracle1d: fit needs at least one observation");
  if (Y.size() != n) throw std::invalid_argument("oracle1d: X and Y sizes differ");

  RMat G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_exact(p, X[i], X[j]);
      G(i, j) = v;
      G(j, i) = v;
    }
  }
  RMat A = G + static_cast<double>(n) * RMat::Identity(n, n);
  Eigen::LDLT<RMat> ldlt(A);
  RVec w = ldlt.solve(Y);
  const double resid = (A * w - Y).norm() / (1.0 + Y.norm());
  if (ldlt.info() != Eigen::Success || resid > 1e-8) {
    const RVec d = ldlt.vectorD();
    throw NumericError("oracle1d: kernel system solve failed (residual " +
                       std::to_string(resid) + ", diagonal ratio " +
                       std::to_string(d.maxCoeff() / std::max(d.minCoeff(), 1e-300)) + ")");
  }
  return ExactPredictor(p, X, std::move(w));
}

std::pair<double, double> eigen_brackets(const Oracle1DParams& p, int k) {
  if (k < 3) throw std::invalid_argument("oracle1d: eigenvalue brackets need k >= 3");
  const double gamma_check = p.gamma();  // validates parameters
  (void)gamma_check;
  const double num = 4.0 * p.L * p.L / ((p.lambda + p.mu) * kPi * kPi);
  const double lower = num / ((k + 4.0) * (k + 4.0));
  const double upper = num / ((k - 2.0) * (k - 2.0));
  return {lower, upper};
}

}  // namespace pikl
