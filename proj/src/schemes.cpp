#include "pikl/schemes.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pikl/rng.hpp"

namespace pikl {

double standard_wave_profile(double x) {
  return std::sin(kPi * x) + 0.5 * std::sin(4.0 * kPi * x);
}

double standard_wave_truth(double t, double x) {
  return std::sin(kPi * x) * std::cos(2.0 * kPi * t) +
         0.5 * std::sin(4.0 * kPi * x) * std::cos(8.0 * kPi * t);
}

WaveGrid make_wave_grid(std::int64_t n_total, WaveSplit split, double sigma,
                        std::uint64_t seed) {
  WaveGrid g;
  if (split == WaveSplit::Thirds) {
    const std::int64_t l = std::max<std::int64_t>(2, (n_total + 1) / 3);
    g.l1 = static_cast<int>(l);
    g.l2 = static_cast<int>(l);
  } else {
    const std::int64_t l2 = std::max<std::int64_t>(2, (n_total + 2) / 5);
    g.l1 = static_cast<int>(2 * l2);
    g.l2 = static_cast<int>(l2);
  }
  g.f0 = standard_wave_profile;
  g.sigma = sigma;
  g.seed = seed;
  return g;
}

namespace {

struct BoundaryData {
  RVec init;         // length l2+1, added to the initial row
  RVec left, right;  // length l1, Dirichlet values at rows 1..l1
};

BoundaryData draw_boundary(const WaveGrid& g) {
  BoundaryData d;
  d.init = RVec::Zero(g.l2 + 1);
  d.left = RVec::Zero(g.l1);
  d.right = RVec::Zero(g.l1);
  if (g.sigma > 0.0) {
    Rng rng(g.seed);
    for (int b = 0; b <= g.l2; ++b) d.init[b] = g.sigma * rng.normal();
    for (int a = 0; a < g.l1; ++a) d.left[a] = g.sigma * rng.normal();
    for (int a = 0; a < g.l1; ++a) d.right[a] = g.sigma * rng.normal();
  }
  return d;
}

// l2^2 second difference; boundary entries left at zero.
void laplacian(const RVec& f, int l2, RVec& out) {
  const double s = static_cast<double>(l2) * l2;
  out.setZero();
  for (int b = 1; b < l2; ++b) out[b] = s * (f[b + 1] - 2.0 * f[b] + f[b - 1]);
}

// Solves (I + c*T) w = r on the interior, T = tridiag(-1, 2, -1).
struct Tridiag {
  int n = 0;
  double c = 0.0;
  std::vector<double> d;  // eliminated diagonal

  void factor(int n_interior, double coupling) {
    n = n_interior;
    c = coupling;
    d.resize(n);
    const double diag = 1.0 + 2.0 * c;
    d[0] = diag;
    for (int i = 1; i < n; ++i) d[i] = diag - c * c / d[i - 1];
  }

  void solve(RVec& r) const {
    for (int i = 1; i < n; ++i) r[i] += c * r[i - 1] / d[i - 1];
    r[n - 1] /= d[n - 1];
    for (int i = n - 2; i >= 0; --i) r[i] = (r[i] + c * r[i + 1]) / d[i];
  }
};

struct MarchState {
  bool diverged = false;
  double max_abs = 0.0;

  void observe(const RVec& row) {
    const double m = row.cwiseAbs().maxCoeff();
    if (!std::isfinite(m) || m > 1e8) diverged = true;
    if (std::isfinite(m) && m > max_abs) max_abs = m;
  }
};

template <typename RowCb>
MarchState march(WaveScheme scheme, const WaveGrid& g, RowCb&& cb) {
  if (g.l1 < 2 || g.l2 < 2) throw ConfigError("wave grid needs l1, l2 >= 2");
  if (!g.f0) throw ConfigError("wave grid has no initial profile");

  const int l1 = g.l1, l2 = g.l2;
  const double k2 = 1.0 / (static_cast<double>(l1) * l1);  // squared time step
  const BoundaryData bd = draw_boundary(g);
  MarchState st;

  RVec prev(l2 + 1), cur(l2 + 1), next(l2 + 1), lap(l2 + 1);
  for (int b = 0; b <= l2; ++b) prev[b] = g.f0(static_cast<double>(b) / l2) + bd.init[b];
  st.observe(prev);
  cb(0, prev);

  if (scheme == WaveScheme::Rk4) {
    RVec f = prev, gv = RVec::Zero(l2 + 1);
    RVec kf1(l2 + 1), kg1(l2 + 1), kf2(l2 + 1), kg2(l2 + 1), kf3(l2 + 1), kg3(l2 + 1),
        kf4(l2 + 1), kg4(l2 + 1), tf(l2 + 1), tg(l2 + 1);
    const double k = 1.0 / l1;
    for (int a = 0; a < l1; ++a) {
      // F(f, g) = (g, 4 Lap f)
      kf1 = gv;
      laplacian(f, l2, kg1);
      kg1 *= 4.0;

      tf = f + 0.5 * k * kf1;
      tg = gv + 0.5 * k * kg1;
      kf2 = tg;
      laplacian(tf, l2, kg2);
      kg2 *= 4.0;

      tf = f + 0.5 * k * kf2;
      tg = gv + 0.5 * k * kg2;
      kf3 = tg;
      laplacian(tf, l2, kg3);
      kg3 *= 4.0;

      tf = f + k * kf3;
      tg = gv + k * kg3;
      kf4 = tg;
      laplacian(tf, l2, kg4);
      kg4 *= 4.0;

      f += (k / 6.0) * (kf1 + 2.0 * kf2 + 2.0 * kf3 + kf4);
      gv += (k / 6.0) * (kg1 + 2.0 * kg2 + 2.0 * kg3 + kg4);
      f[0] = bd.left[a];
      f[l2] = bd.right[a];
      gv[0] = 0.0;
      gv[l2] = 0.0;
      st.observe(f);
      cb(a + 1, f);
    }
    return st;
  }

  // Taylor first row: f(1,.) = f(0,.) + 2 l1^{-2} Lap f(0,.)
  laplacian(prev, l2, lap);
  cur = prev + 2.0 * k2 * lap;
  cur[0] = bd.left[0];
  cur[l2] = bd.right[0];
  st.observe(cur);
  cb(1, cur);

  if (scheme == WaveScheme::Euler) {
    for (int a = 1; a < l1; ++a) {
      laplacian(cur, l2, lap);
      next = 2.0 * cur - prev + 4.0 * k2 * lap;
      next[0] = bd.left[a];
      next[l2] = bd.right[a];
      st.observe(next);
      prev.swap(cur);
      cur.swap(next);
      cb(a + 1, cur);
    }
    return st;
  }

  // Crank-Nicolson family: (I + A) W = rhs on the interior with
  // A = 2 l2^2 l1^{-2} T. As printed, W = f(a+1) + f(a) and
  // rhs = 3 f(a) - f(a-1); the standard variant uses W = f(a+1) + f(a-1)
  // and rhs = 2 f(a).
  const bool standard = scheme == WaveScheme::CnStandard;
  const double c = 2.0 * static_cast<double>(l2) * l2 * k2;
  Tridiag tri;
  tri.factor(l2 - 1, c);
  RVec rhs(l2 - 1);
  for (int a = 1; a < l1; ++a) {
    const double bl = bd.left[a], br = bd.right[a];  // boundary at row a+1
    if (standard) {
      for (int b = 1; b < l2; ++b) rhs[b - 1] = 2.0 * cur[b];
      rhs[0] += c * (bl + prev[0]);
      rhs[l2 - 2] += c * (br + prev[l2]);
    } else {
      for (int b = 1; b < l2; ++b) rhs[b - 1] = 3.0 * cur[b] - prev[b];
      rhs[0] += c * (bl + cur[0]);
      rhs[l2 - 2] += c * (br + cur[l2]);
    }
    tri.solve(rhs);
    next[0] = bl;
    next[l2] = br;
    if (standard) {
      for (int b = 1; b < l2; ++b) next[b] = rhs[b - 1] - prev[b];
    } else {
      for (int b = 1; b < l2; ++b) next[b] = rhs[b - 1] - cur[b];
    }
    st.observe(next);
    prev.swap(cur);
    cur.swap(next);
    cb(a + 1, cur);
  }
  return st;
}

WaveField run_full(WaveScheme scheme, const WaveGrid& g) {
  const std::int64_t cells =
      (static_cast<std::int64_t>(g.l1) + 1) * (static_cast<std::int64_t>(g.l2) + 1);
  if (cells > 200'000'000) {
    throw ConfigError("wave field of " + std::to_string(cells) +
                      " nodes is too large to store; use wave_error");
  }
  WaveField out;
  out.l1 = g.l1;
  out.l2 = g.l2;
  out.cfl = g.cfl();
  out.field.resize(g.l1 + 1, g.l2 + 1);
  const MarchState st = march(scheme, g, [&out](int a, const RVec& row) {
    out.field.row(a) = row.transpose();
  });
  out.diverged = st.diverged;
  out.max_abs = st.max_abs;
  return out;
}

}  // namespace

WaveField euler_wave(const WaveGrid& g) { return run_full(WaveScheme::Euler, g); }
WaveField rk4_wave(const WaveGrid& g) { return run_full(WaveScheme::Rk4, g); }
WaveField cn_wave(const WaveGrid& g, bool standard_cn) {
  return run_full(standard_cn ? WaveScheme::CnStandard : WaveScheme::CnAsPrinted, g);
}

WaveErrorSummary wave_error(WaveScheme scheme, const WaveGrid& g,
                            const std::function<double(double, double)>& truth) {
  if (!truth) throw ConfigError("wave_error: no reference");
  double num = 0.0, den = 0.0;
  const int l1 = g.l1, l2 = g.l2;
  const MarchState st = march(scheme, g, [&](int a, const RVec& row) {
    const double t = static_cast<double>(a) / l1;
    for (int b = 0; b <= l2; ++b) {
      const double tr = truth(t, static_cast<double>(b) / l2);
      const double e = row[b] - tr;
      num += e * e;
      den += tr * tr;
    }
  });
  WaveErrorSummary out;
  out.cfl = g.cfl();
  out.diverged = st.diverged;
  out.max_abs = st.max_abs;
  out.l2_rel = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

csv::Table wave_field_csv(const WaveField& f, int stride_t, int stride_x) {
  if (stride_t < 1 || stride_x < 1) throw ConfigError("wave_field_csv: strides must be >= 1");
  csv::Table t;
  t.header = {"t", "x", "value"};
  for (int a = 0; a <= f.l1; a += stride_t) {
    for (int b = 0; b <= f.l2; b += stride_x) {
      t.rows.push_back({csv::format_number(static_cast<double>(a) / f.l1),
                        csv::format_number(static_cast<double>(b) / f.l2),
                        csv::format_number(f.field(a, b))});
    }
  }
  return t;
}

}  // namespace pikl
