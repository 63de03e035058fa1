#include "pikl/penalty.hpp"

#include <cmath>
#include <cstdio>

namespace pikl {

SobolevMode sobolev_mode_from_string(const std::string& name) {
  if (name == "paper_verbatim") return SobolevMode::PaperVerbatim;
  if (name == "derivative_energy") return SobolevMode::DerivativeEnergy;
  throw ConfigError("sobolev_mode must be 'paper_verbatim' or 'derivative_energy', got '" +
                    name + "'");
}

std::string to_string(SobolevMode mode) {
  return mode == SobolevMode::PaperVerbatim ? "paper_verbatim" : "derivative_energy";
}

namespace {

void check_spec(const PenaltySpec& spec) {
  if (!(spec.lambda > 0.0)) throw ConfigError("penalty: lambda must be positive");
  if (!(spec.mu >= 0.0)) throw ConfigError("penalty: mu must be non-negative");
  if (spec.s < 1) throw ConfigError("penalty: Sobolev order s must be a positive integer");
}

}  // namespace

RVec sobolev_diagonal(const FrequencyGrid& grid, const PenaltySpec& spec) {
  check_spec(spec);
  const int d = grid.dim();
  const RVec& B = grid.half_widths();

  if (spec.mode == SobolevMode::PaperVerbatim) {
    for (int j = 1; j < d; ++j) {
      if (B[j] != B[0]) {
        throw ConfigError("penalty: paper_verbatim Sobolev weights need an isotropic grid");
      }
    }
  }

  RVec w(grid.size());
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const IVec k = grid.multi_index_of(i);
    double base = 0.0;
    if (spec.mode == SobolevMode::PaperVerbatim) {
      base = k.cast<double>().squaredNorm() / std::pow(B[0], d);
    } else {
      for (int j = 0; j < d; ++j) {
        const double f = kPi * k[j] / B[j];
        base += f * f;
      }
    }
    w[i] = spec.lambda * (1.0 + std::pow(base, spec.s));
  }
  return w;
}

PenaltyMatrix assemble_M(const FrequencyGrid& grid, const LinearOperator& op,
                         const Domain& domain, const PenaltySpec& spec) {
  check_spec(spec);
  if (op.dim() != grid.dim()) throw ConfigError("penalty: operator dimension mismatch");
  if (spec.s < op.order()) {
    throw ConfigError("penalty: Sobolev order s = " + std::to_string(spec.s) +
                      " is below the operator order " + std::to_string(op.order()));
  }
  if (spec.mu > 0.0 && op.is_zero()) {
    std::fprintf(stderr, "warning: penalty has mu > 0 but a zero operator; "
                         "the operator term vanishes\n");
  }

  const RVec w = sobolev_diagonal(grid, spec);
  const std::int64_t p = grid.size();

  PenaltyMatrix out{grid, CMat(), spec.lambda};
  if (spec.mu == 0.0 || op.is_zero()) {
    out.M = CMat::Zero(p, p);
    for (std::int64_t i = 0; i < p; ++i) out.M(i, i) = Complex(w[i], 0.0);
    return out;
  }

  CharMatrix C = char_matrix(domain, grid);
  const CVec P = op.symbols(grid);
  out.M = std::move(C.entries);
  for (std::int64_t k = 0; k < p; ++k) {
    const Complex ck = spec.mu * std::conj(P[k]);
    for (std::int64_t j = 0; j < p; ++j) out.M(j, k) *= P[j] * ck;
  }
  for (std::int64_t i = 0; i < p; ++i) out.M(i, i) += Complex(w[i], 0.0);
  return out;
}

double penalty_norm(const PenaltyMatrix& M, const FourierCoefficients& z) {
  if (z.grid != M.grid) throw std::invalid_argument("penalty_norm: grid mismatch");
  const Complex q = z.z.dot(M.M * z.z);
  if (std::abs(q.imag()) > 1e-8 * (1.0 + std::abs(q.real()))) {
    throw NumericError("penalty_norm: quadratic form has a non-real value");
  }
  return q.real();
}

}  // namespace pikl
