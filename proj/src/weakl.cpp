#include "pikl/weakl.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace pikl {

namespace {

CVec solve_normal(const CMat& h_lower, const CVec& b, double* residual_out) {
  const CMat h = h_lower.selfadjointView<Eigen::Lower>();
  Eigen::LDLT<CMat> ldlt(h);
  if (ldlt.info() != Eigen::Success) {
    throw NumericError("normal system factorization failed");
  }
  CVec theta = ldlt.solve(b);
  theta += ldlt.solve(b - h * theta);
  const double resid = (h * theta - b).norm() / (1.0 + b.norm());
  if (!std::isfinite(resid) || resid > 1e-10) {
    const RVec d = ldlt.vectorD().cwiseAbs();
    const double cond =
        d.minCoeff() > 0 ? d.maxCoeff() / d.minCoeff() : std::numeric_limits<double>::infinity();
    throw NumericError("normal system residual " + std::to_string(resid) +
                       " exceeds 1e-10; diagonal pivot ratio " + std::to_string(cond));
  }
  if (residual_out) *residual_out = resid;
  return theta;
}

void check_matrix(const RMat& x, const char* what) {
  if (!x.allFinite()) throw ConfigError(std::string(what) + " contains non-finite values");
}

RVec ones_or(const RVec& v, int size, const char* what) {
  if (v.size() == 0) return RVec::Ones(size);
  if (v.size() != size) {
    throw ConfigError(std::string(what) + " has " + std::to_string(v.size()) +
                      " entries, expected " + std::to_string(size));
  }
  if (!v.allFinite() || v.minCoeff() < 0) {
    throw ConfigError(std::string(what) + " entries must be finite and >= 0");
  }
  return v;
}

int total_blocks(const std::vector<TargetModel>& targets) {
  int b = 0;
  for (const auto& t : targets) b += static_cast<int>(t.blocks.size());
  return b;
}

int total_dim(const std::vector<TargetModel>& targets) {
  int d = 0;
  for (const auto& t : targets) d += t.dim();
  return d;
}

int total_input(const std::vector<TargetModel>& targets) {
  int d = 0;
  for (const auto& t : targets) d += t.input_dim();
  return d;
}

// n M*M for the block-diagonal penalty; adds in place on the diagonal.
void add_block_penalty(const std::vector<TargetModel>& targets, const RVec& block_lambda,
                       double n, CMat& h) {
  int off = 0, bi = 0;
  for (const auto& t : targets) {
    for (const auto& blk : t.blocks) {
      const RVec reg = blk.regularizer_diag();
      for (int i = 0; i < blk.dim(); ++i) {
        h(off + i, off + i) += n * block_lambda[bi] * reg[i] * reg[i];
      }
      off += blk.dim();
      ++bi;
    }
  }
}

CVec fourier_map(double t, int m) {
  CVec phi(2 * m + 1);
  const Complex e = std::polar(1.0, t);
  Complex cur(1.0, 0.0);
  phi[m] = cur;
  for (int k = 1; k <= m; ++k) {
    cur *= e;
    phi[m + k] = cur;
    phi[m - k] = std::conj(cur);
  }
  return phi;
}

double fourier_ridge(int k, double s) { return 1.0 + std::pow(static_cast<double>(k) * k, s); }

}  // namespace

FeatureBlock FeatureBlock::linear(int input_dim) {
  if (input_dim < 1) throw ConfigError("linear block needs input_dim >= 1");
  FeatureBlock b;
  b.kind = Kind::Linear;
  b.input_dim = input_dim;
  return b;
}

FeatureBlock FeatureBlock::fourier(int m, double s) {
  if (m < 1) throw ConfigError("fourier block needs m >= 1");
  if (!(s > 0)) throw ConfigError("fourier block needs s > 0");
  FeatureBlock b;
  b.kind = Kind::Fourier;
  b.input_dim = 1;
  b.modes = m;
  b.s = s;
  return b;
}

FeatureBlock FeatureBlock::categorical(int cardinality) {
  if (cardinality < 1) throw ConfigError("categorical block needs cardinality >= 1");
  FeatureBlock b;
  b.kind = Kind::Categorical;
  b.input_dim = 1;
  b.modes = cardinality / 2;
  b.cardinality = cardinality;
  return b;
}

int FeatureBlock::dim() const {
  switch (kind) {
    case Kind::Linear:
      return input_dim;
    default:
      return 2 * modes + 1;
  }
}

RVec FeatureBlock::regularizer_diag() const {
  if (kind != Kind::Fourier) return RVec::Ones(dim());
  RVec d(dim());
  for (int k = -modes; k <= modes; ++k) d[k + modes] = std::sqrt(fourier_ridge(k, s));
  return d;
}

CVec FeatureBlock::features(const double* x) const {
  switch (kind) {
    case Kind::Linear: {
      CVec f(input_dim);
      for (int i = 0; i < input_dim; ++i) f[i] = Complex(x[i], 0.0);
      return f;
    }
    case Kind::Fourier:
      return fourier_map(x[0], modes);
    case Kind::Categorical: {
      const long code = std::lround(x[0]);
      if (code < 0 || code >= cardinality || std::abs(x[0] - code) > 1e-9) {
        throw ConfigError("categorical value " + std::to_string(x[0]) +
                          " is not a code in 0.." + std::to_string(cardinality - 1));
      }
      const double psi = -kPi + 2.0 * kPi * (code + 1) / cardinality;
      return fourier_map(psi, modes);
    }
  }
  throw ConfigError("unknown block kind");
}

Rescaler Rescaler::fit(const RMat& x) {
  if (x.rows() < 1) throw ConfigError("rescaler needs at least one row");
  check_matrix(x, "rescaler input");
  Rescaler r;
  r.lo = x.colwise().minCoeff();
  r.hi = x.colwise().maxCoeff();
  for (int j = 0; j < r.lo.size(); ++j) {
    if (r.hi[j] <= r.lo[j]) r.hi[j] = r.lo[j] + 1.0;
  }
  return r;
}

double Rescaler::apply_one(int col, double v) const {
  double y = -kPi + 2.0 * kPi * (v - lo[col]) / (hi[col] - lo[col]);
  if (y < -kPi || y > kPi) {
    ++clamped;
    y = std::min(kPi, std::max(-kPi, y));
  }
  return y;
}

RMat Rescaler::apply(const RMat& x) const {
  if (x.cols() != lo.size()) throw ConfigError("rescaler column count mismatch");
  const std::int64_t before = clamped;
  RMat y(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    for (int i = 0; i < x.rows(); ++i) y(i, j) = apply_one(j, x(i, j));
  }
  if (clamped > before) {
    std::fprintf(stderr, "warning: clamped %lld out-of-range values to [-pi, pi]\n",
                 static_cast<long long>(clamped - before));
  }
  return y;
}

int TargetModel::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.dim();
  return d;
}

int TargetModel::input_dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.input_dim;
  return d;
}

WeaKLModel::WeaKLModel(std::vector<TargetModel> targets, CVec theta, double residual)
    : targets_(std::move(targets)), theta_(std::move(theta)), residual_(residual) {
  int off = 0;
  for (const auto& t : targets_) {
    target_offset_.push_back(off);
    off += t.dim();
  }
  if (off != theta_.size()) throw ConfigError("theta size does not match targets");
}

int WeaKLModel::input_dim() const { return total_input(targets_); }

CVec WeaKLModel::theta_block(int target, int block) const {
  int off = target_offset_.at(target);
  const auto& blocks = targets_[target].blocks;
  for (int b = 0; b < block; ++b) off += blocks.at(b).dim();
  return theta_.segment(off, blocks.at(block).dim());
}

RVec WeaKLModel::predict_row(const RVec& x) const {
  if (x.size() != input_dim()) throw ConfigError("input row has wrong dimension");
  RVec out(num_targets());
  int xoff = 0;
  for (int a = 0; a < num_targets(); ++a) {
    int toff = target_offset_[a];
    Complex acc(0.0, 0.0);
    for (const auto& blk : targets_[a].blocks) {
      acc += blk.features(x.data() + xoff).dot(theta_.segment(toff, blk.dim()));
      xoff += blk.input_dim;
      toff += blk.dim();
    }
    out[a] = acc.real();
  }
  return out;
}

RMat WeaKLModel::predict(const RMat& x) const {
  RMat out(x.rows(), num_targets());
  RVec row(x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    row = x.row(i).transpose();
    out.row(i) = predict_row(row).transpose();
  }
  return out;
}

double WeaKLModel::effect(int target, int block, const double* x) const {
  const auto& blk = targets_.at(target).blocks.at(block);
  return blk.features(x).dot(theta_block(target, block)).real();
}

double WeaKLModel::conj_symmetry_residual() const {
  double worst = 0.0;
  for (int a = 0; a < num_targets(); ++a) {
    for (int b = 0; b < static_cast<int>(targets_[a].blocks.size()); ++b) {
      const CVec z = theta_block(a, b);
      const double scale = 1.0 + z.cwiseAbs().maxCoeff();
      if (targets_[a].blocks[b].kind == FeatureBlock::Kind::Linear) {
        worst = std::max(worst, z.imag().cwiseAbs().maxCoeff() / scale);
        continue;
      }
      const int m = targets_[a].blocks[b].modes;
      double dev = std::abs(z[m].imag());
      for (int k = 1; k <= m; ++k) dev = std::max(dev, std::abs(z[m + k] - std::conj(z[m - k])));
      worst = std::max(worst, dev / scale);
    }
  }
  return worst;
}

namespace {

struct Assembled {
  CMat h;  // lower triangle filled
  CVec b;
};

// Sum over observations of Phi* L*L Phi and Phi* L*L Y for the block-diagonal
// per-target feature layout.
Assembled assemble_data(const std::vector<TargetModel>& targets, const RVec& trust,
                        const RMat& x, const RMat& y) {
  const int d2 = static_cast<int>(targets.size());
  const int dim = total_dim(targets);
  const int in_dim = total_input(targets);
  if (x.cols() != in_dim) {
    throw ConfigError("design has " + std::to_string(x.cols()) + " columns, expected " +
                      std::to_string(in_dim));
  }
  if (y.rows() != x.rows() || y.cols() != d2) throw ConfigError("target shape mismatch");
  if (x.rows() < 1) throw ConfigError("empty data");
  check_matrix(x, "design");
  check_matrix(y, "targets");

  Assembled out;
  out.h = CMat::Zero(dim, dim);
  out.b = CVec::Zero(dim);
  CVec u(dim);
  RVec row(in_dim);
  for (int t = 0; t < x.rows(); ++t) {
    row = x.row(t).transpose();
    int xoff = 0, toff = 0;
    for (int a = 0; a < d2; ++a) {
      const double w = trust[a] * trust[a];
      u.setZero();
      int boff = toff;
      for (const auto& blk : targets[a].blocks) {
        u.segment(boff, blk.dim()) = blk.features(row.data() + xoff);
        xoff += blk.input_dim;
        boff += blk.dim();
      }
      out.h.selfadjointView<Eigen::Lower>().rankUpdate(u, w);
      out.b += (w * y(t, a)) * u;
    }
  }
  return out;
}

}  // namespace

WeaKLModel weakl_solve(const WeaKLProblem& problem, const RMat& x, const RMat& y) {
  const int d2 = static_cast<int>(problem.targets.size());
  if (d2 < 1) throw ConfigError("no targets");
  const RVec trust = ones_or(problem.trust, d2, "trust");
  if (trust.minCoeff() <= 0) throw ConfigError("trust entries must be > 0");
  const RVec bl = ones_or(problem.block_lambda, total_blocks(problem.targets), "block_lambda");

  Assembled sys = assemble_data(problem.targets, trust, x, y);
  const double n = static_cast<double>(x.rows());
  const int dim = total_dim(problem.targets);
  if (problem.penalty_square.size() > 0) {
    if (problem.penalty_square.rows() != dim || problem.penalty_square.cols() != dim) {
      throw ConfigError("penalty_square must be dim(theta) x dim(theta)");
    }
    sys.h += n * problem.penalty_square;
  } else {
    add_block_penalty(problem.targets, bl, n, sys.h);
  }
  if (problem.soft_weight > 0 && problem.soft_constraint.size() > 0) {
    if (problem.soft_constraint.cols() != dim) {
      throw ConfigError("soft constraint must have dim(theta) columns");
    }
    sys.h += (n * problem.soft_weight) *
             (problem.soft_constraint.adjoint() * problem.soft_constraint);
  }
  double resid = 0.0;
  CVec theta = solve_normal(sys.h, sys.b, &resid);
  return WeaKLModel(problem.targets, std::move(theta), resid);
}

WeaKLModel weakl_solve_reduced(const WeaKLProblem& problem, const RMat& x, const RMat& y,
                               const CMat& p) {
  const int d2 = static_cast<int>(problem.targets.size());
  if (d2 < 1) throw ConfigError("no targets");
  const int dim = total_dim(problem.targets);
  if (p.rows() != dim || p.cols() < 1 || p.cols() > dim) {
    throw ConfigError("reduction matrix must be dim(theta) x k with 1 <= k <= dim(theta)");
  }
  const RVec trust = ones_or(problem.trust, d2, "trust");
  if (trust.minCoeff() <= 0) throw ConfigError("trust entries must be > 0");
  const RVec bl = ones_or(problem.block_lambda, total_blocks(problem.targets), "block_lambda");

  Assembled sys = assemble_data(problem.targets, trust, x, y);
  const double n = static_cast<double>(x.rows());
  if (problem.penalty_square.size() > 0) {
    if (problem.penalty_square.rows() != dim || problem.penalty_square.cols() != dim) {
      throw ConfigError("penalty_square must be dim(theta) x dim(theta)");
    }
    sys.h += n * problem.penalty_square;
  } else {
    add_block_penalty(problem.targets, bl, n, sys.h);
  }
  const CMat full = sys.h.selfadjointView<Eigen::Lower>();
  const CMat hred = p.adjoint() * full * p;
  const CVec bred = p.adjoint() * sys.b;
  double resid = 0.0;
  const CVec theta_red = solve_normal(hred, bred, &resid);
  CVec theta = p * theta_red;
  return WeaKLModel(problem.targets, std::move(theta), resid);
}

AdditiveFit additive_fit(const std::vector<FeatureBlock>& blocks, const RMat& x,
                         const RVec& y, const RVec& lambdas) {
  for (const auto& b : blocks) {
    if (b.input_dim != 1) {
      throw ConfigError("additive blocks consume one feature each");
    }
  }
  WeaKLProblem prob;
  prob.targets = {TargetModel{blocks}};
  prob.block_lambda = lambdas;
  RMat ymat = y;
  ymat.resize(y.size(), 1);
  AdditiveFit fit;
  fit.model = weakl_solve(prob, x, ymat);
  return fit;
}

double AdditiveFit::effect(int feature, double x) const { return model.effect(0, feature, &x); }

double AdditiveFit::predict_row(const RVec& x) const { return model.predict_row(x)[0]; }

RVec AdditiveFit::predict(const RMat& x) const { return model.predict(x).col(0); }

OnlineFit online_fit(const RMat& g_values, const RVec& t, const RVec& y,
                     const RVec& lambdas, int m, double s) {
  const int n = static_cast<int>(t.size());
  const int d = static_cast<int>(g_values.cols());
  if (n < 1) throw ConfigError("empty adaptation window");
  if (g_values.rows() != n || y.size() != n) throw ConfigError("window length mismatch");
  if (m < 1) throw ConfigError("online fit needs m >= 1");
  if (lambdas.size() != d + 1) throw ConfigError("need one lambda per correction (d+1)");
  if (!lambdas.allFinite() || lambdas.minCoeff() < 0) throw ConfigError("lambdas must be >= 0");
  check_matrix(g_values, "base effects");

  const int p = 2 * m + 1;
  const int dim = p * (d + 1);
  CMat h = CMat::Zero(dim, dim);
  CVec b = CVec::Zero(dim);
  CVec u(dim);
  for (int j = 0; j < n; ++j) {
    const CVec phi = fourier_map(t[j], m);
    u.segment(0, p) = phi;
    for (int l = 0; l < d; ++l) u.segment((l + 1) * p, p) = g_values(j, l) * phi;
    const double w = y[j] - g_values.row(j).sum();
    h.selfadjointView<Eigen::Lower>().rankUpdate(u, 1.0);
    b += w * u;
  }
  for (int l = 0; l <= d; ++l) {
    for (int k = -m; k <= m; ++k) {
      h(l * p + k + m, l * p + k + m) += n * lambdas[l] * fourier_ridge(k, s);
    }
  }
  OnlineFit fit;
  fit.m = m;
  fit.s = s;
  const CVec theta = solve_normal(h, b, &fit.solve_residual);
  fit.theta.resize(p, d + 1);
  for (int l = 0; l <= d; ++l) fit.theta.col(l) = theta.segment(l * p, p);
  return fit;
}

double OnlineFit::correction(int l, double t) const {
  return fourier_map(t, m).dot(theta.col(l)).real();
}

double OnlineFit::predict(double t, const RVec& g_values) const {
  double acc = correction(0, t);
  for (int l = 0; l < g_values.size(); ++l) {
    acc += (1.0 + correction(l + 1, t)) * g_values[l];
  }
  return acc;
}

CombineFit combine_forecasts(const RMat& expert_preds, const RVec& t, const RVec& y,
                             const RVec& lambdas, int m, double s) {
  const int n = static_cast<int>(t.size());
  const int p = static_cast<int>(expert_preds.cols());
  if (n < 1) throw ConfigError("empty data");
  if (p < 1) throw ConfigError("need at least one expert");
  if (expert_preds.rows() != n || y.size() != n) throw ConfigError("series length mismatch");
  if (m < 1) throw ConfigError("combination needs m >= 1");
  if (lambdas.size() != p) throw ConfigError("need one lambda per expert");
  if (!lambdas.allFinite() || lambdas.minCoeff() < 0) throw ConfigError("lambdas must be >= 0");
  check_matrix(expert_preds, "expert predictions");

  const int pm = 2 * m + 1;
  const int dim = pm * p;
  CMat h = CMat::Zero(dim, dim);
  CVec b = CVec::Zero(dim);
  CVec u(dim);
  for (int j = 0; j < n; ++j) {
    const CVec phi = fourier_map(t[j], m);
    for (int l = 0; l < p; ++l) u.segment(l * pm, pm) = expert_preds(j, l) * phi;
    const double w = y[j] - expert_preds.row(j).sum() / p;
    h.selfadjointView<Eigen::Lower>().rankUpdate(u, 1.0);
    b += w * u;
  }
  for (int l = 0; l < p; ++l) {
    for (int k = -m; k <= m; ++k) {
      h(l * pm + k + m, l * pm + k + m) += n * lambdas[l] * fourier_ridge(k, s);
    }
  }
  CombineFit fit;
  fit.m = m;
  fit.s = s;
  fit.experts = p;
  const CVec theta = solve_normal(h, b, &fit.solve_residual);
  fit.theta.resize(pm, p);
  for (int l = 0; l < p; ++l) fit.theta.col(l) = theta.segment(l * pm, pm);
  return fit;
}

double CombineFit::weight(int expert, double t) const {
  return 1.0 / experts + fourier_map(t, m).dot(theta.col(expert)).real();
}

double CombineFit::predict(double t, const RVec& expert_values) const {
  double acc = 0.0;
  for (int l = 0; l < experts; ++l) acc += weight(l, t) * expert_values[l];
  return acc;
}

CMat constraint_projector(const CMat& p) {
  if (p.rows() < 1 || p.cols() < 1 || p.cols() > p.rows()) {
    throw ConfigError("projector input must be tall with at least one column");
  }
  const CMat g = p.adjoint() * p;
  Eigen::SelfAdjointEigenSolver<CMat> eig(g);
  if (eig.info() != Eigen::Success) throw NumericError("projector eigendecomposition failed");
  const RVec ev = eig.eigenvalues();
  if (ev.minCoeff() <= 1e-12 * std::max(1.0, ev.maxCoeff())) {
    throw ConfigError("constraint matrix is rank deficient");
  }
  Eigen::LDLT<CMat> ldlt(g);
  CMat c = CMat::Identity(p.rows(), p.rows());
  c -= p * ldlt.solve(CMat(p.adjoint()));
  return c;
}

SummationMatrix SummationMatrix::from_matrix(RMat s) {
  const int l1 = static_cast<int>(s.rows());
  const int l2 = static_cast<int>(s.cols());
  if (l2 < 1 || l1 < l2) throw ConfigError("summation matrix must be l1 x l2 with l1 >= l2 >= 1");
  for (int i = 0; i < l1; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < l2; ++j) {
      const double v = s(i, j);
      if (v != 0.0 && v != 1.0) throw ConfigError("summation matrix entries must be 0 or 1");
      row_sum += v;
      if (i < l2 && v != (i == j ? 1.0 : 0.0)) {
        throw ConfigError("top block of the summation matrix must be the identity");
      }
    }
    if (row_sum == 0.0) throw ConfigError("summation matrix has an all-zero row");
  }
  SummationMatrix out;
  out.s = std::move(s);
  return out;
}

namespace {

std::vector<int> node_offsets(const std::vector<TargetModel>& nodes) {
  std::vector<int> off;
  int o = 0;
  for (const auto& t : nodes) {
    off.push_back(o);
    o += t.dim();
  }
  off.push_back(o);
  return off;
}

// Per-observation feature vectors of every node model, concatenated.
CVec stacked_features(const std::vector<TargetModel>& nodes, const std::vector<int>& off,
                      const RVec& row) {
  CVec f(off.back());
  int xoff = 0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    int boff = off[a];
    for (const auto& blk : nodes[a].blocks) {
      f.segment(boff, blk.dim()) = blk.features(row.data() + xoff);
      xoff += blk.input_dim;
      boff += blk.dim();
    }
  }
  return f;
}

void check_hier_data(const std::vector<TargetModel>& nodes, const RMat& x, const RMat& y,
                     int l1) {
  if (x.rows() < 1) throw ConfigError("empty data");
  if (x.cols() != total_input(nodes)) throw ConfigError("design column count mismatch");
  if (y.rows() != x.rows() || y.cols() != l1) {
    throw ConfigError("node targets must have one column per node");
  }
  check_matrix(x, "design");
  check_matrix(y, "targets");
}

}  // namespace

int HierFit::input_dim() const { return total_input(nodes); }

CVec HierFit::node_block(int node) const {
  return theta.segment(node_offset.at(node), node_offset.at(node + 1) - node_offset.at(node));
}

RVec HierFit::predict_row(const RVec& x) const {
  const CVec f = stacked_features(nodes, node_offset, x);
  RVec node_pred(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const int d = node_offset[a + 1] - node_offset[a];
    node_pred[a] =
        f.segment(node_offset[a], d).dot(theta.segment(node_offset[a], d)).real();
  }
  if (global) return node_pred;
  return s.s * node_pred;
}

RMat HierFit::predict(const RMat& x) const {
  RMat out(x.rows(), s.l1());
  RVec row(x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    row = x.row(i).transpose();
    out.row(i) = predict_row(row).transpose();
  }
  return out;
}

HierFit hier_bu(const SummationMatrix& s, const std::vector<TargetModel>& bottom,
                const RVec& trust, const RVec& block_lambda, const RMat& x, const RMat& y) {
  const int l1 = s.l1(), l2 = s.l2();
  if (static_cast<int>(bottom.size()) != l2) {
    throw ConfigError("need one bottom model per summation column");
  }
  const RVec tr = ones_or(trust, l1, "trust");
  if (tr.maxCoeff() <= 0) throw ConfigError("trust has no positive entry");
  const RVec bl = ones_or(block_lambda, total_blocks(bottom), "block_lambda");
  check_hier_data(bottom, x, y, l1);

  const std::vector<int> off = node_offsets(bottom);
  const int dim = off.back();
  CMat h = CMat::Zero(dim, dim);
  CVec b = CVec::Zero(dim);
  CVec u(dim);
  RVec row(x.cols());
  for (int t = 0; t < x.rows(); ++t) {
    row = x.row(t).transpose();
    const CVec f = stacked_features(bottom, off, row);
    for (int i = 0; i < l1; ++i) {
      const double w = tr[i] * tr[i];
      if (w == 0) continue;
      u.setZero();
      for (int a = 0; a < l2; ++a) {
        if (s.s(i, a) != 0.0) {
          u.segment(off[a], off[a + 1] - off[a]) = f.segment(off[a], off[a + 1] - off[a]);
        }
      }
      h.selfadjointView<Eigen::Lower>().rankUpdate(u, w);
      b += (w * y(t, i)) * u;
    }
  }
  add_block_penalty(bottom, bl, static_cast<double>(x.rows()), h);

  HierFit fit;
  fit.nodes = bottom;
  fit.s = s;
  fit.node_offset = off;
  fit.theta = solve_normal(h, b, &fit.solve_residual);
  return fit;
}

HierFit hier_global(const SummationMatrix& s, const std::vector<TargetModel>& all_nodes,
                    const RVec& gamma, const RVec& block_lambda, const RMat& x,
                    const RMat& y) {
  const int l1 = s.l1(), l2 = s.l2();
  if (static_cast<int>(all_nodes.size()) != l1) {
    throw ConfigError("need one model per node");
  }
  const RVec ga = ones_or(gamma, l1, "gamma");
  const RVec bl = ones_or(block_lambda, total_blocks(all_nodes), "block_lambda");
  check_hier_data(all_nodes, x, y, l1);

  const std::vector<int> off = node_offsets(all_nodes);
  const int dim = off.back();
  CMat h = CMat::Zero(dim, dim);
  CVec b = CVec::Zero(dim);
  CVec u(dim), v(dim);
  RVec row(x.cols());
  for (int t = 0; t < x.rows(); ++t) {
    row = x.row(t).transpose();
    const CVec f = stacked_features(all_nodes, off, row);
    for (int i = 0; i < l1; ++i) {
      const int di = off[i + 1] - off[i];
      u.setZero();
      u.segment(off[i], di) = f.segment(off[i], di);
      h.selfadjointView<Eigen::Lower>().rankUpdate(u, 1.0);
      b += y(t, i) * u;
    }
    // coherence rows vanish identically on bottom nodes
    for (int i = l2; i < l1; ++i) {
      const double w = ga[i] * ga[i];
      if (w == 0) continue;
      v.setZero();
      for (int a = 0; a < l2; ++a) {
        if (s.s(i, a) != 0.0) {
          v.segment(off[a], off[a + 1] - off[a]) = f.segment(off[a], off[a + 1] - off[a]);
        }
      }
      v.segment(off[i], off[i + 1] - off[i]) -= f.segment(off[i], off[i + 1] - off[i]);
      h.selfadjointView<Eigen::Lower>().rankUpdate(v, w);
    }
  }
  add_block_penalty(all_nodes, bl, static_cast<double>(x.rows()), h);

  HierFit fit;
  fit.nodes = all_nodes;
  fit.s = s;
  fit.node_offset = off;
  fit.global = true;
  fit.theta = solve_normal(h, b, &fit.solve_residual);
  return fit;
}

HierFit hier_transfer(const SummationMatrix& s, const std::vector<TargetModel>& bottom,
                      const RVec& trust, const std::vector<int>& j, const RVec& alpha,
                      double lambda, const RVec& block_lambda, const RMat& x,
                      const RMat& y) {
  const int l1 = s.l1(), l2 = s.l2();
  if (static_cast<int>(bottom.size()) != l2) {
    throw ConfigError("need one bottom model per summation column");
  }
  if (j.empty() || alpha.size() != static_cast<int>(j.size())) {
    throw ConfigError("need one alpha per transfer node");
  }
  if (lambda < 0 || !std::isfinite(lambda)) throw ConfigError("transfer weight must be >= 0");
  const int d0 = bottom.at(j.at(0)).dim();
  for (std::size_t a = 0; a < j.size(); ++a) {
    if (j[a] < 0 || j[a] >= l2) throw ConfigError("transfer node index out of range");
    if (bottom[j[a]].dim() != d0) {
      throw ConfigError("transfer nodes must share one block dimension");
    }
    if (alpha[a] == 0 || !std::isfinite(alpha[a])) {
      throw ConfigError("transfer weights alpha must be nonzero");
    }
  }

  const RVec tr = ones_or(trust, l1, "trust");
  if (tr.maxCoeff() <= 0) throw ConfigError("trust has no positive entry");
  const RVec bl = ones_or(block_lambda, total_blocks(bottom), "block_lambda");
  check_hier_data(bottom, x, y, l1);

  const std::vector<int> off = node_offsets(bottom);
  const int dim = off.back();
  CMat h = CMat::Zero(dim, dim);
  CVec b = CVec::Zero(dim);
  CVec u(dim);
  RVec row(x.cols());
  for (int t = 0; t < x.rows(); ++t) {
    row = x.row(t).transpose();
    const CVec f = stacked_features(bottom, off, row);
    for (int i = 0; i < l1; ++i) {
      const double w = tr[i] * tr[i];
      if (w == 0) continue;
      u.setZero();
      for (int a = 0; a < l2; ++a) {
        if (s.s(i, a) != 0.0) {
          u.segment(off[a], off[a + 1] - off[a]) = f.segment(off[a], off[a + 1] - off[a]);
        }
      }
      h.selfadjointView<Eigen::Lower>().rankUpdate(u, w);
      b += (w * y(t, i)) * u;
    }
  }
  add_block_penalty(bottom, bl, static_cast<double>(x.rows()), h);

  if (lambda > 0) {
    const int nj = static_cast<int>(j.size());
    CMat mj = CMat::Zero(d0 * nj, d0);
    for (int a = 0; a < nj; ++a) {
      mj.block(a * d0, 0, d0, d0) = alpha[a] * CMat::Identity(d0, d0);
    }
    const CMat c = constraint_projector(mj);
    const double n = static_cast<double>(x.rows());
    for (int a = 0; a < nj; ++a) {
      for (int bidx = 0; bidx < nj; ++bidx) {
        h.block(off[j[a]], off[j[bidx]], d0, d0) +=
            (n * lambda) * c.block(a * d0, bidx * d0, d0, d0);
      }
    }
  }

  HierFit fit;
  fit.nodes = bottom;
  fit.s = s;
  fit.node_offset = off;
  fit.theta = solve_normal(h, b, &fit.solve_residual);
  return fit;
}

double reconciliation_residual(const HierFit& fit, const RMat& x) {
  if (!fit.global) return 0.0;
  const int l2 = fit.s.l2();
  double num = 0.0, den = 0.0;
  RVec row(x.cols());
  for (int t = 0; t < x.rows(); ++t) {
    row = x.row(t).transpose();
    const RVec pred = fit.predict_row(row);
    const RVec rec = fit.s.s * pred.head(l2);
    num += (rec - pred).squaredNorm();
    den += pred.squaredNorm();
  }
  return std::sqrt(num) / (1.0 + std::sqrt(den));
}

}  // namespace pikl
