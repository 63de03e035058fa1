#include "pikl/effdim.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pikl {

RVec effdim_spectrum(const CharMatrix& C, const PenaltyMatrix& M) {
  if (C.grid != M.grid) throw ConfigError("effdim: grid mismatch between C and M");

  Eigen::SelfAdjointEigenSolver<CMat> es(M.M);
  if (es.info() != Eigen::Success) throw NumericError("effdim: penalty eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NumericError("effdim: penalty matrix is not positive definite");
  }
  const CMat inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();

  CMat A = inv_sqrt * C.entries;
  Eigen::BDCSVD<CMat> svd(A);
  RVec eigs = svd.singularValues().array().square();

  if (eigs.size() > 0) {
    const double floor = 1e-14 * eigs[0];
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      if (eigs[i] < floor) eigs[i] = 0.0;
    }
  }
  return eigs;
}

double effective_dimension(const RVec& eigs, double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("effdim: kappa must be positive");
  double N = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double a = eigs[i];
    if (a < -1e-10) throw NumericError("effdim: negative eigenvalue " + std::to_string(a));
    if (a <= 0.0) continue;
    N += 1.0 / (1.0 + 1.0 / (kappa * a));
  }
  return N;
}

Schedule default_schedule() {
  return [](double n) { return std::make_pair(std::log(n) / n, 1.0 / std::log(n)); };
}

std::vector<EffDimPoint> effdim_curve(const EffDimProblem& problem,
                                      const std::vector<double>& n_grid,
                                      const Schedule& schedule) {
  const CharMatrix C = char_matrix(problem.domain, problem.grid);
  std::vector<EffDimPoint> out;
  out.reserve(n_grid.size());
  for (double n : n_grid) {
    if (!(n > 1.0)) throw ConfigError("effdim: schedule needs n > 1");
    PenaltySpec spec = problem.penalty;
    std::tie(spec.lambda, spec.mu) = schedule(n);
    const PenaltyMatrix M = assemble_M(problem.grid, problem.op, problem.domain, spec);
    const RVec eigs = effdim_spectrum(C, M);
    EffDimPoint pt;
    pt.n = n;
    pt.lambda = spec.lambda;
    pt.mu = spec.mu;
    pt.N = effective_dimension(eigs, problem.kappa);
    pt.top_eigenvalues = eigs.head(std::min<Eigen::Index>(20, eigs.size()));
    out.push_back(std::move(pt));
  }
  return out;
}

csv::Table effdim_csv(const std::vector<EffDimPoint>& points, int m) {
  csv::Table t;
  t.header = {"n", "lambda", "mu", "m", "N"};
  for (int i = 1; i <= 20; ++i) t.header.push_back("eig" + std::to_string(i));
  for (const EffDimPoint& pt : points) {
    std::vector<std::string> row;
    row.push_back(csv::format_number(pt.n));
    row.push_back(csv::format_number(pt.lambda));
    row.push_back(csv::format_number(pt.mu));
    row.push_back(std::to_string(m));
    row.push_back(csv::format_number(pt.N));
    for (int i = 0; i < 20; ++i) {
      row.push_back(i < pt.top_eigenvalues.size()
                        ? csv::format_number(pt.top_eigenvalues[i])
                        : "0");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace pikl
