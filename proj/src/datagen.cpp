#include "pikl/datagen.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "pikl/rng.hpp"
#include "pikl/weakl.hpp"

namespace pikl {

namespace {

double harmonic_f1(double x) { return std::exp(-x / 2.0) * std::cos(std::sqrt(3.0) * x / 2.0); }
double harmonic_f2(double x) { return std::exp(-x / 2.0) * std::sin(std::sqrt(3.0) * x / 2.0); }

void check_n(std::int64_t n, std::int64_t least) {
  if (n < least) throw ConfigError("need at least " + std::to_string(least) + " samples");
}

}  // namespace

HarmonicData gen_harmonic(std::int64_t n, std::uint64_t seed) {
  check_n(n, 1);
  HarmonicData out;
  out.data.X.resize(n, 1);
  out.data.Y.resize(n);
  Rng rng(seed);
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(-kPi, kPi);
    out.data.X(i, 0) = x;
    out.data.Y[i] = harmonic_f1(x) + out.sigma * rng.normal();
  }
  out.truth = [](const RVec& x) { return harmonic_f1(x[0]); };
  out.f1 = harmonic_f1;
  out.f2 = harmonic_f2;
  return out;
}

HeatHybridData gen_heat_hybrid(std::int64_t n, std::uint64_t seed) {
  check_n(n, 1);
  HeatHybridData out;
  out.truth = [](const RVec& p) {
    return std::exp(-p[0]) * std::cos(p[1]) + 0.5 * std::sin(2.0 * p[1]);
  };
  out.residual = [](const RVec& p) { return 2.0 * std::sin(2.0 * p[1]); };
  out.residual_l2_sq = 2.0;
  out.truth_l2_sq = std::sinh(2.0 * kPi) / (4.0 * kPi) + 0.125;
  out.data.X.resize(n, 2);
  out.data.Y.resize(n);
  Rng rng(seed);
  RVec p(2);
  for (std::int64_t i = 0; i < n; ++i) {
    p[0] = rng.uniform(-kPi, kPi);
    p[1] = rng.uniform(-kPi, kPi);
    out.data.X.row(i) = p.transpose();
    out.data.Y[i] = out.truth(p) + out.sigma * rng.normal();
  }
  return out;
}

Dataset gen_wave_boundary(std::int64_t n, double sigma, std::uint64_t seed) {
  check_n(n, 4);
  if (sigma < 0 || !std::isfinite(sigma)) throw ConfigError("noise level must be >= 0");
  Dataset out;
  out.X.resize(n, 2);
  out.Y.resize(n);
  Rng rng(seed);
  const std::int64_t q = n / 4;
  const double nn = static_cast<double>(n);
  const double c1 = 1.0 - 2.0 * kPi * kPi / (nn * nn);
  const double c4 = 0.5 - 16.0 * kPi * kPi / (nn * nn);
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    double t, x, y;
    if (i < q) {
      t = 0.0;
      x = u;
      y = std::sin(kPi * u) + 0.5 * std::sin(4.0 * kPi * u);
    } else if (i < 2 * q) {
      t = u;
      x = 0.0;
      y = 0.0;
    } else if (i < 3 * q) {
      t = u;
      x = 1.0;
      y = 0.0;
    } else {
      t = 1.0 / nn;
      x = u;
      y = c1 * std::sin(kPi * u) + c4 * std::sin(4.0 * kPi * u);
    }
    if (sigma > 0) y += sigma * rng.normal();
    out.X(i, 0) = t;
    out.X(i, 1) = x;
    out.Y[i] = y;
  }
  return out;
}

Heat4dData gen_heat4d(std::int64_t n, std::uint64_t seed) {
  check_n(n, 1);
  Heat4dData out;
  out.truth = [](const RVec& p) {
    return std::exp(-3.0 * p[0] / (kPi * kPi)) * std::cos(p[1] / kPi) *
           std::cos(p[2] / kPi) * std::cos(p[3] / kPi);
  };
  out.data.X.resize(n, 4);
  out.data.Y.resize(n);
  Rng rng(seed);
  RVec p(4);
  for (std::int64_t i = 0; i < n; ++i) {
    const int piece = static_cast<int>(i % 7);
    if (piece == 0) {
      p[0] = 0.0;
      for (int j = 1; j < 4; ++j) p[j] = rng.uniform(-0.5, 0.5);
    } else {
      const int face = piece - 1;
      const int dim = 1 + face / 2;
      p[0] = rng.uniform(-0.5, 0.5);
      for (int j = 1; j < 4; ++j) {
        if (j == dim) {
          p[j] = face % 2 == 0 ? -0.5 : 0.5;
        } else {
          p[j] = rng.uniform(-0.5, 0.5);
        }
      }
    }
    out.data.X.row(i) = p.transpose();
    out.data.Y[i] = out.truth(p) + out.sigma * rng.normal();
  }
  return out;
}

HierToyData gen_hier_toy(int d, int n_train, int n_test, double sigma2,
                         std::uint64_t seed) {
  if (d < 1) throw ConfigError("need d >= 1");
  if (n_train < 1 || n_test < 1) throw ConfigError("need train and test samples");
  if (!(sigma2 > 0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be > 0");

  HierToyData out;
  out.sigma2 = sigma2;
  Rng rng(seed);
  out.theta1.resize(d);
  out.theta2.resize(d);
  for (int j = 0; j < d; ++j) out.theta1[j] = rng.normal();
  for (int j = 0; j < d; ++j) out.theta2[j] = rng.normal();

  const auto fill = [&](RMat& x, RMat& y, int rows) {
    x.resize(rows, 2 * d);
    y.resize(rows, 3);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < 2 * d; ++j) x(i, j) = rng.normal();
      const double e1 = rng.normal();
      const double e2 = sigma2 * rng.normal();
      const double y1 = x.row(i).head(d).dot(out.theta1) + e1;
      const double y2 = x.row(i).tail(d).dot(out.theta2) - e1 + e2;
      y(i, 0) = y1;
      y(i, 1) = y2;
      y(i, 2) = y1 + y2;
    }
  };
  fill(out.x_train, out.y_train, n_train);
  fill(out.x_test, out.y_test, n_test);

  out.s_benchmark.resize(3, 2);
  out.s_benchmark << 1, 1, 1, 0, 0, 1;
  return out;
}

namespace {

RVec ols(const RMat& x, const RVec& y) {
  const RMat g = x.transpose() * x;
  Eigen::LDLT<RMat> ldlt(g);
  if (ldlt.info() != Eigen::Success) throw NumericError("singular least-squares system");
  return ldlt.solve(x.transpose() * y);
}

double mse(const RVec& a, const RVec& b) { return (a - b).squaredNorm() / a.size(); }

}  // namespace

HierToyErrors hier_toy_benchmark(int d, int n_train, int n_test, double sigma2,
                                 int draws, std::uint64_t seed) {
  if (draws < 1) throw ConfigError("need at least one draw");
  HierToyErrors out;
  const bool joint_ols_feasible = 2 * d <= static_cast<int>(0.9 * n_train);
  out.rec_feasible = joint_ols_feasible;
  out.mint_feasible = joint_ols_feasible;

  RMat rec_update(3, 3);
  {
    RMat s(3, 2);
    s << 1, 1, 1, 0, 0, 1;
    const RMat sts = s.transpose() * s;
    rec_update = s * sts.inverse() * s.transpose();
  }
  RMat jsel(2, 3);
  jsel << 0, 1, 0, 0, 0, 1;
  RVec uvec(3);
  uvec << -1, 1, 1;

  SummationMatrix s_bu;
  {
    RMat s(3, 2);
    s << 1, 0, 0, 1, 1, 1;
    s_bu = SummationMatrix::from_matrix(s);
  }
  const std::vector<TargetModel> bottom = {TargetModel{{FeatureBlock::linear(d)}},
                                           TargetModel{{FeatureBlock::linear(d)}}};
  RVec trust(3);
  trust << 1.0, 1.0, 1.0 / sigma2;  // squared trust gives the loss weight 1/sigma2^2
  const RVec block_lambda = RVec::Zero(2);

  Rng master(seed);
  for (int rep = 0; rep < draws; ++rep) {
    const HierToyData toy = gen_hier_toy(d, n_train, n_test, sigma2, master.next_u64());

    const RMat x1 = toy.x_train.leftCols(d), x2 = toy.x_train.rightCols(d);
    const RMat t1 = toy.x_test.leftCols(d), t2 = toy.x_test.rightCols(d);
    const RVec th1 = ols(x1, toy.y_train.col(0));
    const RVec th2 = ols(x2, toy.y_train.col(1));

    const RVec p1 = t1 * th1, p2 = t2 * th2;
    const RVec p3 = p1 + p2;
    out.bu += mse(p1, toy.y_test.col(0)) + mse(p2, toy.y_test.col(1)) +
              mse(p3, toy.y_test.col(2));

    if (joint_ols_feasible) {
      const RVec th3 = ols(toy.x_train, toy.y_train.col(2));
      // base forecasts in (Y3, Y1, Y2) order on train and test
      RMat base_test(n_test, 3), base_train(n_train, 3);
      base_test.col(0) = toy.x_test * th3;
      base_test.col(1) = p1;
      base_test.col(2) = p2;
      base_train.col(0) = toy.x_train * th3;
      base_train.col(1) = x1 * th1;
      base_train.col(2) = x2 * th2;

      const RMat rec = base_test * rec_update.transpose();
      out.rec += mse(rec.col(0), toy.y_test.col(2)) + mse(rec.col(1), toy.y_test.col(0)) +
                 mse(rec.col(2), toy.y_test.col(1));

      RMat err_train(n_train, 3);
      err_train.col(0) = base_train.col(0) - toy.y_train.col(2);
      err_train.col(1) = base_train.col(1) - toy.y_train.col(0);
      err_train.col(2) = base_train.col(2) - toy.y_train.col(1);
      const RMat centered = err_train.rowwise() - err_train.colwise().mean();
      const RMat w = centered.transpose() * centered / std::max(1, n_train - 1);
      const double uwu = uvec.dot(w * uvec);
      if (uwu <= 0 || !std::isfinite(uwu)) {
        out.mint_feasible = false;
      } else {
        RMat s(3, 2);
        s << 1, 1, 1, 0, 0, 1;
        const RMat mint_update = s * (jsel - jsel * w * uvec * uvec.transpose() / uwu);
        const RMat mint = base_test * mint_update.transpose();
        out.mint += mse(mint.col(0), toy.y_test.col(2)) +
                    mse(mint.col(1), toy.y_test.col(0)) +
                    mse(mint.col(2), toy.y_test.col(1));
      }
    }

    const HierFit fit =
        hier_bu(s_bu, bottom, trust, block_lambda, toy.x_train, toy.y_train);
    const RMat pred = fit.predict(toy.x_test);
    out.weakl += mse(pred.col(0), toy.y_test.col(0)) + mse(pred.col(1), toy.y_test.col(1)) +
                 mse(pred.col(2), toy.y_test.col(2));
  }

  out.bu /= draws;
  out.weakl /= draws;
  if (joint_ols_feasible) {
    out.rec /= draws;
    out.mint /= draws;
  } else {
    out.rec = std::numeric_limits<double>::quiet_NaN();
    out.mint = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace pikl
