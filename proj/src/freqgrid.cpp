#include "pikl/freqgrid.hpp"

#include <cmath>
#include <limits>

namespace pikl {

FrequencyGrid::FrequencyGrid(RVec half_widths, int m) : B_(std::move(half_widths)), m_(m) {
  if (B_.size() == 0) throw std::invalid_argument("FrequencyGrid: dimension must be positive");
  if (m_ < 0) throw std::invalid_argument("FrequencyGrid: truncation order must be non-negative");
  for (Eigen::Index j = 0; j < B_.size(); ++j) {
    if (!(B_[j] > 0.0)) throw std::invalid_argument("FrequencyGrid: half-widths must be positive");
  }
  const std::int64_t side = 2 * static_cast<std::int64_t>(m_) + 1;
  std::int64_t n = 1;
  for (int j = 0; j < dim(); ++j) {
    if (n > std::numeric_limits<std::int64_t>::max() / side || n * side > (std::int64_t{1} << 31)) {
      throw std::length_error("FrequencyGrid: (2m+1)^d exceeds the supported size");
    }
    n *= side;
  }
  size_ = n;
  volume_ = 1.0;
  for (Eigen::Index j = 0; j < B_.size(); ++j) volume_ *= 2.0 * B_[j];
}

IVec FrequencyGrid::multi_index_of(std::int64_t i) const {
  if (i < 0 || i >= size_) throw std::out_of_range("FrequencyGrid: linear index out of range");
  const std::int64_t side = 2 * static_cast<std::int64_t>(m_) + 1;
  IVec k(dim());
  for (int j = dim() - 1; j >= 0; --j) {
    k[j] = static_cast<int>(i % side) - m_;
    i /= side;
  }
  return k;
}

std::int64_t FrequencyGrid::index_of(const IVec& k) const {
  if (k.size() != B_.size()) throw std::invalid_argument("FrequencyGrid: dimension mismatch");
  const std::int64_t side = 2 * static_cast<std::int64_t>(m_) + 1;
  std::int64_t i = 0;
  for (int j = 0; j < dim(); ++j) {
    if (k[j] < -m_ || k[j] > m_) throw std::out_of_range("FrequencyGrid: mode out of range");
    i = i * side + (k[j] + m_);
  }
  return i;
}

CMat FrequencyGrid::phase_powers(const RVec& x, int maxpow) const {
  if (x.size() != B_.size()) throw std::invalid_argument("FrequencyGrid: dimension mismatch");
  CMat powers(2 * maxpow + 1, dim());
  for (int j = 0; j < dim(); ++j) {
    const Complex u = std::polar(1.0, kPi * x[j] / B_[j]);
    Complex acc(1.0, 0.0);
    powers(maxpow, j) = acc;
    for (int p = 1; p <= maxpow; ++p) {
      acc *= u;
      powers(maxpow + p, j) = acc;
      powers(maxpow - p, j) = std::conj(acc);
    }
  }
  return powers;
}

CVec FrequencyGrid::feature_vector(const RVec& x) const {
  const CMat powers = phase_powers(x, m_);
  CVec phi(size_);
  const double norm = 1.0 / std::sqrt(volume_);
  // Lexicographic tensor product, first dimension slowest.
  phi.setConstant(Complex(norm, 0.0));
  std::int64_t block = size_;
  const std::int64_t side = 2 * static_cast<std::int64_t>(m_) + 1;
  for (int j = 0; j < dim(); ++j) {
    block /= side;
    std::int64_t idx = 0;
    while (idx < size_) {
      for (std::int64_t r = 0; r < side; ++r) {
        const Complex u = powers(r, j);
        for (std::int64_t b = 0; b < block; ++b) phi[idx++] *= u;
      }
    }
  }
  return phi;
}

Complex FrequencyGrid::evaluate(const CVec& z, const RVec& x) const {
  if (z.size() != size_) throw std::invalid_argument("FrequencyGrid: coefficient length mismatch");
  // Eigen dot conjugates its left factor, giving sum_k z_k conj(phi_k(x)).
  return feature_vector(x).dot(z);
}

FourierCoefficients::FourierCoefficients(FrequencyGrid g, CVec coeffs)
    : grid(std::move(g)), z(std::move(coeffs)) {
  if (z.size() != grid.size()) {
    throw std::invalid_argument("FourierCoefficients: length does not match grid");
  }
}

double FourierCoefficients::conj_symmetry_residual() const {
  double worst = 0.0;
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    const IVec k = grid.multi_index_of(i);
    const std::int64_t j = grid.index_of(-k);
    worst = std::max(worst, std::abs(z[i] - std::conj(z[j])));
  }
  return worst;
}

}  // namespace pikl
