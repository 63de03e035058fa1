#pragma once
// Finite-difference baselines for the 1-D wave equation
//   d2f/dt2 = 4 d2f/dx2  on [0,1]^2,  f(t,0) = f(t,1) = 0,  df/dt(0,.) = 0,
// marching l1 time steps over l2 space cells. The discrete Laplacian is
//   (Lap f)(b) = l2^2 (f(b+1) - 2 f(b) + f(b-1)).
// Optionally the sampled initial/boundary nodes carry Gaussian noise.

#include <cstdint>
#include <functional>

#include "pikl/csv.hpp"
#include "pikl/types.hpp"

namespace pikl {

struct WaveGrid {
  int l1 = 2;  // time steps
  int l2 = 2;  // space cells
  std::function<double(double)> f0;  // initial profile on [0,1]
  double sigma = 0.0;                // noise std dev at sampled nodes
  std::uint64_t seed = 0;

  [[nodiscard]] double cfl() const { return 2.0 * l2 / l1; }
};

// Standard initial profile sin(pi x) + sin(4 pi x)/2 and the matching solution
// sin(pi x) cos(2 pi t) + sin(4 pi x) cos(8 pi t)/2.
double standard_wave_profile(double x);
double standard_wave_truth(double t, double x);

// Splits a total budget n = 2*l1 + l2 into (l1, l2).
//   Thirds:     l1 = l2 = n/3 (rounded); Courant number 2, unstable for the
//               explicit schemes — kept for comparison runs.
//   CourantOne: l1 = 2*l2 (n = 5*l2); Courant number 1.
enum class WaveSplit { Thirds, CourantOne };
WaveGrid make_wave_grid(std::int64_t n_total, WaveSplit split,
                        double sigma = 0.0, std::uint64_t seed = 0);

enum class WaveScheme { Euler, Rk4, CnAsPrinted, CnStandard };

struct WaveField {
  int l1 = 0, l2 = 0;
  double cfl = 0.0;
  RMat field;  // (l1+1) x (l2+1); row a holds time a/l1
  bool diverged = false;
  double max_abs = 0.0;
};

WaveField euler_wave(const WaveGrid& g);
WaveField rk4_wave(const WaveGrid& g);
WaveField cn_wave(const WaveGrid& g, bool standard_cn = false);

// Streams the march without storing the field; the error is the relative l2
// norm of (field - truth) over all grid nodes.
struct WaveErrorSummary {
  double l2_rel = 0.0;
  double cfl = 0.0;
  bool diverged = false;
  double max_abs = 0.0;
};
WaveErrorSummary wave_error(WaveScheme scheme, const WaveGrid& g,
                            const std::function<double(double, double)>& truth);

// Long-format (t, x, value) rows, subsampled by the strides.
csv::Table wave_field_csv(const WaveField& f, int stride_t = 1, int stride_x = 1);

}  // namespace pikl
