#pragma once
// Spectrum of C M^{-1} C (computed as squared singular values of M^{-1/2} C)
// and the effective dimension N = sum_a 1/(1 + (kappa a)^{-1}).

#include <functional>
#include <utility>
#include <vector>

#include "pikl/csv.hpp"
#include "pikl/domains.hpp"
#include "pikl/penalty.hpp"
#include "pikl/types.hpp"

namespace pikl {

// Descending, clipped to zero below 1e-14 times the top eigenvalue.
RVec effdim_spectrum(const CharMatrix& C, const PenaltyMatrix& M);

double effective_dimension(const RVec& eigs, double kappa = 1.0);

struct EffDimProblem {
  FrequencyGrid grid;
  LinearOperator op;
  Domain domain;
  PenaltySpec penalty;   // lambda and mu are overwritten by the schedule
  double kappa = 1.0;
};

struct EffDimPoint {
  double n = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double N = 0.0;
  RVec top_eigenvalues;  // up to 20
};

using Schedule = std::function<std::pair<double, double>(double n)>;

// Default schedule lambda(n) = log(n)/n, mu(n) = 1/log(n).
Schedule default_schedule();

std::vector<EffDimPoint> effdim_curve(const EffDimProblem& problem,
                                      const std::vector<double>& n_grid,
                                      const Schedule& schedule = default_schedule());

// Columns: n, lambda, mu, m, N, eig1..eig20.
csv::Table effdim_csv(const std::vector<EffDimPoint>& points, int m);

}  // namespace pikl
