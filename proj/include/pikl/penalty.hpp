#pragma once
// Hermitian positive-definite penalty matrix
//   M_{j,k} = w_k delta_{j,k} + mu * P(j) * conj(P(k)) * F(k - j)
// combining a Sobolev diagonal w with the quadratic energy of a differential
// operator over a domain.

#include <string>

#include "pikl/diffops.hpp"
#include "pikl/domains.hpp"
#include "pikl/freqgrid.hpp"
#include "pikl/types.hpp"

namespace pikl {

enum class SobolevMode { PaperVerbatim, DerivativeEnergy };

SobolevMode sobolev_mode_from_string(const std::string& name);
std::string to_string(SobolevMode mode);

struct PenaltySpec {
  double lambda = 1.0;          // Sobolev weight, > 0
  double mu = 0.0;              // operator weight, >= 0
  int s = 1;                    // Sobolev order, >= operator order
  SobolevMode mode = SobolevMode::DerivativeEnergy;
};

struct PenaltyMatrix {
  FrequencyGrid grid;
  CMat M;          // (2m+1)^d square, Hermitian, eigenvalues >= lambda
  double lambda;   // diagonal floor, kept for bounds and diagnostics
};

// Diagonal weights w_k:
//   PaperVerbatim:     lambda * (1 + (||k||_2^2 / B^d)^s), isotropic B only
//   DerivativeEnergy:  lambda * (1 + (sum_j (pi k_j / B_j)^2)^s)
RVec sobolev_diagonal(const FrequencyGrid& grid, const PenaltySpec& spec);

PenaltyMatrix assemble_M(const FrequencyGrid& grid, const LinearOperator& op,
                         const Domain& domain, const PenaltySpec& spec);

// real(z^* M z); the imaginary part is a pure roundoff diagnostic.
double penalty_norm(const PenaltyMatrix& M, const FourierCoefficients& z);

}  // namespace pikl
