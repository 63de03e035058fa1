#pragma once

#include <cstdint>

#include "pikl/types.hpp"

namespace pikl {

/// Truncated Fourier mode set {-m,...,m}^d on the anisotropic torus
/// prod_j [-B_j, B_j], enumerated lexicographically in (k_1,...,k_d) with the
/// first coordinate slowest. Mode k carries the feature
///   phi_k(x) = vol^{-1/2} exp(i pi sum_j k_j x_j / B_j),  vol = prod_j 2 B_j.
class FrequencyGrid {
 public:
  FrequencyGrid(RVec half_widths, int m);

  [[nodiscard]] int dim() const { return static_cast<int>(B_.size()); }
  [[nodiscard]] int order() const { return m_; }
  [[nodiscard]] std::int64_t size() const { return size_; }
  [[nodiscard]] double volume() const { return volume_; }
  [[nodiscard]] const RVec& half_widths() const { return B_; }

  [[nodiscard]] IVec multi_index_of(std::int64_t i) const;
  [[nodiscard]] std::int64_t index_of(const IVec& k) const;

  /// phi(x); x is wrapped onto the torus by 2B_j-periodicity.
  [[nodiscard]] CVec feature_vector(const RVec& x) const;

  /// Per-dimension phase powers u_j^p = exp(i pi p x_j / B_j) for
  /// p in [-maxpow, maxpow]; column j holds dimension j, row p + maxpow.
  /// Negative powers are exact conjugates of the positive ones.
  [[nodiscard]] CMat phase_powers(const RVec& x, int maxpow) const;

  /// Project-wide evaluation convention: f_z(x) = sum_k z_k conj(phi_k(x)).
  [[nodiscard]] Complex evaluate(const CVec& z, const RVec& x) const;

  [[nodiscard]] bool operator==(const FrequencyGrid& other) const {
    return m_ == other.m_ && B_.size() == other.B_.size() && B_ == other.B_;
  }
  [[nodiscard]] bool operator!=(const FrequencyGrid& other) const { return !(*this == other); }

 private:
  RVec B_;
  int m_;
  std::int64_t size_;
  double volume_;
};

/// Coefficient vector bound to its grid. When `real_valued` is set the
/// conjugate-symmetry residual max_k |z_k - conj(z_{-k})| is available as a
/// diagnostic.
struct FourierCoefficients {
  FrequencyGrid grid;
  CVec z;
  bool real_valued = false;

  FourierCoefficients(FrequencyGrid g, CVec coeffs);
  [[nodiscard]] double conj_symmetry_residual() const;
};

}  // namespace pikl
