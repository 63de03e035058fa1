#pragma once

#include <string>
#include <vector>

#include "pikl/freqgrid.hpp"
#include "pikl/types.hpp"

namespace pikl {

/// Constant-coefficient linear differential operator
///   D(f) = sum_alpha a_alpha d^alpha f,
/// stored as (coefficient, derivative multi-index) terms. On the mode-k
/// feature the operator acts by the symbol
///   P(k) = sum_alpha a_alpha prod_j (i pi k_j / B_j)^{alpha_j},
/// with the +i convention matching the feature phase exp(+i pi <k, x/B>).
class LinearOperator {
 public:
  struct Term {
    double coeff;
    IVec orders;
  };

  LinearOperator(int dim, std::vector<Term> terms);

  static LinearOperator zero(int dim);

  /// Mini-grammar: sum of terms, a term is an optional numeric coefficient
  /// times derivative factors, e.g. "dt^2 - 4*dx^2", "d1^2 + d1 + 1",
  /// "2.5*d1*d2", "0". Axes: d1..d9 are dimensions 1..9; dt,dx,dy,dz name
  /// dimensions 1..4 when dim >= 2, and dt/dx both name the only dimension
  /// when dim == 1. Whitespace between factors multiplies.
  static LinearOperator parse(const std::string& text, int dim);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Max total derivative order over the terms (0 for the zero operator).
  [[nodiscard]] int order() const;

  [[nodiscard]] Complex symbol(const IVec& k, const RVec& half_widths) const;
  [[nodiscard]] CVec symbols(const FrequencyGrid& grid) const;

  /// Canonical text form; parse(print()) round-trips.
  [[nodiscard]] std::string print() const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

}  // namespace pikl
