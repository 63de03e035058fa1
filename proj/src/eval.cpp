#include "pikl/eval.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace pikl {

namespace {

void check_pair(const RVec& y, const RVec& yhat) {
  if (y.size() != yhat.size()) throw ConfigError("series lengths differ");
  if (y.size() < 1) throw ConfigError("empty series");
  if (!y.allFinite() || !yhat.allFinite()) throw ConfigError("non-finite series values");
}

}  // namespace

double rmse(const RVec& y, const RVec& yhat) {
  check_pair(y, yhat);
  return std::sqrt((y - yhat).squaredNorm() / y.size());
}

double mae(const RVec& y, const RVec& yhat) {
  check_pair(y, yhat);
  return (y - yhat).cwiseAbs().mean();
}

Metrics metrics(const RVec& y, const RVec& yhat) {
  check_pair(y, yhat);
  Metrics m;
  m.rmse = rmse(y, yhat);
  m.mae = mae(y, yhat);
  double acc = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) throw ConfigError("mape undefined: target value is zero");
    acc += std::abs(yhat[i] - y[i]) / std::abs(y[i]);
  }
  m.mape = acc / y.size();
  return m;
}

double quantile(RVec values, double q) {
  if (values.size() < 1) throw ConfigError("quantile of empty sample");
  q = std::min(1.0, std::max(0.0, q));
  std::sort(values.data(), values.data() + values.size());
  const double pos = q * (values.size() - 1);
  const int i = static_cast<int>(pos);
  if (i + 1 >= values.size()) return values[values.size() - 1];
  const double frac = pos - i;
  return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

namespace detail {

int geometric_block_length(Rng& rng, double mean_length) {
  if (!(mean_length > 1.0)) return 1;
  const double p = 1.0 / mean_length;
  const double u = rng.uniform();
  const double len = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(len < 1e9)) return 1000000000;
  return std::max(1, static_cast<int>(len));
}

}  // namespace detail

BootstrapResult block_bootstrap(const RMat& z, const Statistic& g,
                                const BootstrapConfig& cfg) {
  const int n = static_cast<int>(z.rows());
  if (n < 1) throw ConfigError("empty series");
  if (!z.allFinite()) throw ConfigError("non-finite series values");
  if (cfg.replicates < 1) throw ConfigError("need at least one replicate");
  if (!g) throw ConfigError("missing statistic");

  int len = cfg.block_length;
  if (len == 0) len = std::max(1, static_cast<int>(std::floor(std::pow(n, 0.25))));
  if (len < 1) throw ConfigError("block length must be >= 1");
  if (len > n) throw ConfigError("block length exceeds series length");
  const double mean_len = cfg.mean_length > 0 ? cfg.mean_length : static_cast<double>(len);

  BootstrapResult out;
  out.block_length_used = len;
  out.point = g(z.colwise().mean().transpose());
  out.replicates.resize(cfg.replicates);

  Rng master(cfg.seed);
  RVec sum(z.cols());
  for (int rep = 0; rep < cfg.replicates; ++rep) {
    Rng rng = master.substream(static_cast<std::uint64_t>(rep));
    sum.setZero();
    int taken = 0;
    if (cfg.mode == BootstrapConfig::Mode::MovingBlock) {
      while (taken < n) {
        const int start = static_cast<int>(rng.uniform() * (n - len + 1));
        for (int i = 0; i < len && taken < n; ++i, ++taken) {
          sum += z.row(start + i).transpose();
        }
      }
    } else {
      while (taken < n) {
        const int start = static_cast<int>(rng.uniform() * n);
        const int blk = detail::geometric_block_length(rng, mean_len);
        for (int i = 0; i < blk && taken < n; ++i, ++taken) {
          sum += z.row((start + i) % n).transpose();
        }
      }
    }
    out.replicates[rep] = g(sum / n);
  }

  out.lo = quantile(out.replicates, (1.0 - cfg.level) / 2.0);
  out.hi = quantile(out.replicates, 1.0 - (1.0 - cfg.level) / 2.0);
  if (cfg.replicates > 1) {
    const double mean = out.replicates.mean();
    out.sigma = std::sqrt((out.replicates.array() - mean).square().sum() /
                          (cfg.replicates - 1));
  }
  return out;
}

std::string bootstrap_json(const BootstrapResult& r, const BootstrapConfig& cfg) {
  nlohmann::json j;
  j["point"] = r.point;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["sigma"] = r.sigma;
  j["level"] = cfg.level;
  j["replicates"] = static_cast<int>(r.replicates.size());
  j["block_length"] = r.block_length_used;
  j["mode"] = cfg.mode == BootstrapConfig::Mode::MovingBlock ? "moving_block" : "stationary";
  j["seed"] = cfg.seed;
  return j.dump(2);
}

SkillResult skill_score(const RVec& errors1, const RVec& errors2,
                        const BootstrapConfig& cfg, double z_alpha) {
  check_pair(errors1, errors2);
  RMat z(errors1.size(), 2);
  z.col(0) = errors1.cwiseAbs();
  z.col(1) = errors2.cwiseAbs();
  if (z.col(1).mean() <= 0) throw ConfigError("skill denominator is zero");

  SkillResult out;
  out.bootstrap = block_bootstrap(
      z, [](const RVec& m) { return 1.0 - m[0] / m[1]; }, cfg);
  out.skill = out.bootstrap.point;
  out.sigma = out.bootstrap.sigma;
  out.lower_bound = out.skill - z_alpha * out.sigma;
  return out;
}

GridResult grid_search(std::size_t candidates,
                       const std::function<double(std::size_t)>& validation_mse) {
  if (candidates == 0) throw ConfigError("empty grid");
  if (!validation_mse) throw ConfigError("missing objective");
  GridResult out;
  out.scores.resize(static_cast<int>(candidates));
  for (std::size_t i = 0; i < candidates; ++i) {
    out.scores[static_cast<int>(i)] = validation_mse(i);
  }
  double best = out.scores[0];
  out.best_index = 0;
  for (std::size_t i = 1; i < candidates; ++i) {
    if (out.scores[static_cast<int>(i)] < best) {
      best = out.scores[static_cast<int>(i)];
      out.best_index = i;
    }
  }
  return out;
}

}  // namespace pikl
