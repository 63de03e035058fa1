#include "pikl/fit.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

namespace pikl {

void validate_dataset(const Dataset& data, int dim) {
  if (data.X.rows() < 1) throw ConfigError("dataset: needs at least one observation");
  if (data.X.cols() != dim) {
    throw ConfigError("dataset: points have dimension " + std::to_string(data.X.cols()) +
                      ", expected " + std::to_string(dim));
  }
  if (data.Y.size() != data.X.rows()) throw ConfigError("dataset: X and Y sizes differ");
  if (!data.X.allFinite() || !data.Y.allFinite()) {
    throw ConfigError("dataset: non-finite values");
  }
}

double PiklModel::predict(const RVec& x) const { return predict_complex(x).real(); }

Complex PiklModel::predict_complex(const RVec& x) const {
  return theta.grid.evaluate(theta.z, x);
}

RVec PiklModel::predict_many(const RMat& points) const {
  RVec out(points.rows());
  RVec x(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    x = points.row(i).transpose();
    out[i] = predict(x);
  }
  return out;
}

PiklModel fit(const FrequencyGrid& grid, const PenaltyMatrix& M, const Dataset& data) {
  if (M.grid != grid) throw ConfigError("fit: penalty grid mismatch");
  validate_dataset(data, grid.dim());

  const std::int64_t p = grid.size();
  const std::int64_t n = data.X.rows();
  const double vol = grid.volume();

  // One pass over the data: S(delta) = sum_i exp(i pi <delta, x_i / B>) on the
  // difference lattice, and b = Phi^* Y = sum_i Y_i phi(x_i).
  FrequencyGrid diff(grid.half_widths(), 2 * grid.order());
  const double diff_scale = std::sqrt(diff.volume());
  CVec S = CVec::Zero(diff.size());
  CVec b = CVec::Zero(p);
  RVec x(grid.dim());
  for (std::int64_t i = 0; i < n; ++i) {
    x = data.X.row(i).transpose();
    S += diff_scale * diff.feature_vector(x);
    b += data.Y[i] * grid.feature_vector(x);
  }

  CMat H(p, p);
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> modes(p, grid.dim());
  for (std::int64_t i = 0; i < p; ++i) modes.row(i) = grid.multi_index_of(i).transpose();
  IVec delta(grid.dim());
  const double nd = static_cast<double>(n);
  for (std::int64_t k = 0; k < p; ++k) {
    for (std::int64_t j = 0; j < p; ++j) {
      delta = (modes.row(j) - modes.row(k)).transpose();
      H(j, k) = S[diff.index_of(delta)] / vol + nd * M.M(j, k);
    }
  }

  Eigen::LDLT<CMat> ldlt(H);
  CVec theta = ldlt.solve(b);
  theta += ldlt.solve(b - H * theta);  // one refinement step
  const double resid = (H * theta - b).norm() / (1.0 + b.norm());
  if (ldlt.info() != Eigen::Success || !theta.allFinite() || resid > 1e-8) {
    const RVec d = ldlt.vectorD().real();
    throw NumericError("fit: normal-equation solve failed (residual " + std::to_string(resid) +
                       ", diagonal ratio " +
                       std::to_string(d.maxCoeff() / std::max(d.minCoeff(), 1e-300)) + ")");
  }

  PiklModel model{FourierCoefficients(grid, std::move(theta)), M.lambda, n, resid};
  return model;
}

struct KernelEvaluator::Impl {
  Eigen::LDLT<CMat> ldlt;
};

KernelEvaluator::KernelEvaluator(const PenaltyMatrix& M) : grid_(M.grid) {
  auto impl = std::make_shared<Impl>();
  impl->ldlt.compute(M.M);
  if (impl->ldlt.info() != Eigen::Success) {
    throw NumericError("kernel: penalty factorization failed");
  }
  impl_ = std::move(impl);
}

Complex KernelEvaluator::operator()(const RVec& x, const RVec& y) const {
  const CVec fy = impl_->ldlt.solve(grid_.feature_vector(y));
  return grid_.feature_vector(x).dot(fy);
}

Complex kernel_value(const PenaltyMatrix& M, const RVec& x, const RVec& y) {
  return KernelEvaluator(M)(x, y);
}

double l2_relative_error(const PiklModel& model,
                         const std::function<double(const RVec&)>& truth,
                         const RMat& eval_points) {
  if (eval_points.rows() < 1) throw std::invalid_argument("l2_relative_error: empty grid");
  double num = 0.0, den = 0.0;
  RVec x(eval_points.cols());
  for (Eigen::Index i = 0; i < eval_points.rows(); ++i) {
    x = eval_points.row(i).transpose();
    const double t = truth(x);
    const double e = model.predict(x) - t;
    num += e * e;
    den += t * t;
  }
  if (den <= 0.0) throw std::invalid_argument("l2_relative_error: reference is zero on the grid");
  return std::sqrt(num / den);
}

RMat grid_points(const RVec& lo, const RVec& hi, int per_dim) {
  const int d = static_cast<int>(lo.size());
  if (hi.size() != d) throw std::invalid_argument("grid_points: bound dimension mismatch");
  if (per_dim < 2) throw std::invalid_argument("grid_points: need at least two points per axis");
  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) total *= per_dim;
  RMat pts(total, d);
  for (std::int64_t i = 0; i < total; ++i) {
    std::int64_t rem = i;
    for (int j = d - 1; j >= 0; --j) {
      const int idx = static_cast<int>(rem % per_dim);
      rem /= per_dim;
      pts(i, j) = lo[j] + (hi[j] - lo[j]) * idx / (per_dim - 1);
    }
  }
  return pts;
}

}  // namespace pikl
