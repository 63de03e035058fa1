#pragma once

#include <cmath>
#include <cstdint>

#include "pikl/types.hpp"

namespace pikl {

/// Counter-based SplitMix64 stream.
///
/// Draw i of a stream with seed s is mix64(s + (i+1)*0x9E3779B97F4A7C15).
/// The integer and uniform streams are bit-identical across platforms;
/// normal() goes through libm (log/sqrt/cos), so normals are deterministic
/// per build but may differ in the last ulp between C libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), counter_(0) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Independent stream derived deterministically from this seed and a tag.
  [[nodiscard]] Rng substream(std::uint64_t tag) const {
    return Rng(mix64(seed_ ^ mix64(tag + 0x9E3779B97F4A7C15ULL)));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace pikl
