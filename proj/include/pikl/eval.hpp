#ifndef PIKL_EVAL_HPP
#define PIKL_EVAL_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "pikl/rng.hpp"
#include "pikl/types.hpp"

namespace pikl {

struct Metrics {
  double rmse = 0.0;
  double mape = 0.0;
  double mae = 0.0;
};

// mape needs every target nonzero
Metrics metrics(const RVec& y, const RVec& yhat);
double rmse(const RVec& y, const RVec& yhat);
double mae(const RVec& y, const RVec& yhat);

struct BootstrapConfig {
  enum class Mode { MovingBlock, Stationary };

  int block_length = 0;     // 0 -> floor(n^{1/4})
  int replicates = 1000;
  Mode mode = Mode::MovingBlock;
  double mean_length = 0.0; // stationary mode; 0 -> block_length
  std::uint64_t seed = 0;
  double level = 0.90;
};

struct BootstrapResult {
  RVec replicates;
  double point = 0.0;
  double lo = 0.0, hi = 0.0;
  double sigma = 0.0;
  int block_length_used = 0;
};

// g maps the column means of a resampled series to the statistic
using Statistic = std::function<double(const RVec&)>;

BootstrapResult block_bootstrap(const RMat& z, const Statistic& g,
                                const BootstrapConfig& cfg);

std::string bootstrap_json(const BootstrapResult& r, const BootstrapConfig& cfg);

struct SkillResult {
  double skill = 0.0;
  double sigma = 0.0;
  double lower_bound = 0.0;  // skill - z_alpha * sigma
  BootstrapResult bootstrap;
};

// errors are per-time forecast errors (absolute values are taken internally);
// the joint series (|e1|, |e2|) is resampled together to preserve pairing
SkillResult skill_score(const RVec& errors1, const RVec& errors2,
                        const BootstrapConfig& cfg, double z_alpha = 1.28);

struct GridResult {
  std::size_t best_index = 0;
  RVec scores;
};

// Evaluates every candidate, returns the first index attaining the minimum.
GridResult grid_search(std::size_t candidates,
                       const std::function<double(std::size_t)>& validation_mse);

// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(RVec values, double q);

namespace detail {
// Geometric block length with the given mean, >= 1.
int geometric_block_length(Rng& rng, double mean_length);
}  // namespace detail

}  // namespace pikl

#endif
