#include "pikl/domains.hpp"

#include <cmath>
#include <map>
#include <utility>

#include <json.hpp>

#include "pikl/rng.hpp"

namespace pikl {

struct Domain::Node {
  Kind kind;
  int dim = 0;
  RVec half_widths;  // Cube
  double radius = 0.0;
  double factor = 1.0;
  RVec shift;
  std::vector<std::shared_ptr<const Node>> children;
  std::function<bool(const RVec&)> membership;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool has_child_tree = false;  // Numeric wrapping a geometric child
};

namespace {

using Node = Domain::Node;

// sin(pi*t*c/B) / (pi*t), continuous at t = 0
double cube_factor(double t, double c, double B) {
  const double u = kPi * t * c / B;
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return (c / B) * (1.0 - u2 / 6.0 + u2 * u2 / 120.0);
  }
  return std::sin(u) / (kPi * t);
}

// J1(q)/q, continuous at q = 0
double j1_over_q(double q) {
  if (q < 1e-4) {
    const double q2 = q * q;
    return 0.5 - q2 / 16.0 + q2 * q2 / 384.0;
  }
  return std::cyl_bessel_j(1.0, q) / q;
}

struct NumericSamples {
  RMat accepted;       // rows = accepted points in the leaf's torus chunk
  std::int64_t total;  // points drawn
};

struct EvalCtx {
  std::map<std::pair<const Node*, int>, NumericSamples> cache;
};

bool contains_node(const Node& nd, const double* x);

const NumericSamples& numeric_samples(const Node& nd, const double* B, int offset,
                                      EvalCtx& ctx) {
  const auto key = std::make_pair(&nd, offset);
  auto it = ctx.cache.find(key);
  if (it != ctx.cache.end()) return it->second;

  Rng rng(nd.seed);
  RVec x(nd.dim);
  std::vector<double> kept;
  for (std::int64_t i = 0; i < nd.samples; ++i) {
    for (int j = 0; j < nd.dim; ++j) x[j] = rng.uniform(-B[j], B[j]);
    const bool in = nd.has_child_tree ? contains_node(*nd.children[0], x.data())
                                      : nd.membership(x);
    if (in) kept.insert(kept.end(), x.data(), x.data() + nd.dim);
  }
  NumericSamples s;
  s.total = nd.samples;
  s.accepted = Eigen::Map<const RMat>(kept.data(),
                                      static_cast<Eigen::Index>(kept.size() / nd.dim),
                                      nd.dim);
  return ctx.cache.emplace(key, std::move(s)).first->second;
}

Complex eval_node(const Node& nd, const double* t, const double* B, int offset,
                  EvalCtx& ctx) {
  switch (nd.kind) {
    case Domain::Kind::Cube: {
      double prod = 1.0;
      for (int j = 0; j < nd.dim; ++j) prod *= cube_factor(t[j], nd.half_widths[j], B[j]);
      return {prod, 0.0};
    }
    case Domain::Kind::Ball2D: {
      const double q = kPi * nd.radius * std::hypot(t[0] / B[0], t[1] / B[1]);
      const double val = kPi * nd.radius * nd.radius / (2.0 * B[0] * B[1]) * j1_over_q(q);
      return {val, 0.0};
    }
    case Domain::Kind::Scale: {
      RVec ts(nd.dim);
      for (int j = 0; j < nd.dim; ++j) ts[j] = nd.factor * t[j];
      const double jac = std::pow(std::abs(nd.factor), nd.dim);
      return jac * eval_node(*nd.children[0], ts.data(), B, offset, ctx);
    }
    case Domain::Kind::Translate: {
      double phase = 0.0;
      for (int j = 0; j < nd.dim; ++j) phase += t[j] * nd.shift[j] / B[j];
      return std::polar(1.0, kPi * phase) * eval_node(*nd.children[0], t, B, offset, ctx);
    }
    case Domain::Kind::Union: {
      Complex sum(0.0, 0.0);
      for (const auto& c : nd.children) sum += eval_node(*c, t, B, offset, ctx);
      return sum;
    }
    case Domain::Kind::Product: {
      Complex prod(1.0, 0.0);
      int off = 0;
      for (const auto& c : nd.children) {
        prod *= eval_node(*c, t + off, B + off, offset + off, ctx);
        off += c->dim;
      }
      return prod;
    }
    case Domain::Kind::Numeric: {
      const NumericSamples& s = numeric_samples(nd, B, offset, ctx);
      Complex sum(0.0, 0.0);
      for (Eigen::Index i = 0; i < s.accepted.rows(); ++i) {
        double phase = 0.0;
        for (int j = 0; j < nd.dim; ++j) phase += t[j] * s.accepted(i, j) / B[j];
        sum += std::polar(1.0, kPi * phase);
      }
      return sum / static_cast<double>(s.total);
    }
  }
  throw std::logic_error("unreachable domain kind");
}

bool contains_node(const Node& nd, const double* x) {
  switch (nd.kind) {
    case Domain::Kind::Cube:
      for (int j = 0; j < nd.dim; ++j)
        if (std::abs(x[j]) > nd.half_widths[j]) return false;
      return true;
    case Domain::Kind::Ball2D:
      return std::hypot(x[0], x[1]) <= nd.radius;
    case Domain::Kind::Scale: {
      RVec y(nd.dim);
      for (int j = 0; j < nd.dim; ++j) y[j] = x[j] / nd.factor;
      return contains_node(*nd.children[0], y.data());
    }
    case Domain::Kind::Translate: {
      RVec y(nd.dim);
      for (int j = 0; j < nd.dim; ++j) y[j] = x[j] - nd.shift[j];
      return contains_node(*nd.children[0], y.data());
    }
    case Domain::Kind::Union:
      for (const auto& c : nd.children)
        if (contains_node(*c, x)) return true;
      return false;
    case Domain::Kind::Product: {
      int off = 0;
      for (const auto& c : nd.children) {
        if (!contains_node(*c, x + off)) return false;
        off += c->dim;
      }
      return true;
    }
    case Domain::Kind::Numeric: {
      if (nd.has_child_tree) return contains_node(*nd.children[0], x);
      RVec y = Eigen::Map<const RVec>(x, nd.dim);
      return nd.membership(y);
    }
  }
  throw std::logic_error("unreachable domain kind");
}

double measure_node(const Node& nd, const double* B) {
  switch (nd.kind) {
    case Domain::Kind::Cube: {
      double prod = 1.0;
      for (int j = 0; j < nd.dim; ++j) prod *= 2.0 * nd.half_widths[j];
      return prod;
    }
    case Domain::Kind::Ball2D:
      return kPi * nd.radius * nd.radius;
    case Domain::Kind::Scale:
      return std::pow(std::abs(nd.factor), nd.dim) * measure_node(*nd.children[0], B);
    case Domain::Kind::Translate:
      return measure_node(*nd.children[0], B);
    case Domain::Kind::Union: {
      double sum = 0.0;
      for (const auto& c : nd.children) sum += measure_node(*c, B);
      return sum;
    }
    case Domain::Kind::Product: {
      double prod = 1.0;
      int off = 0;
      for (const auto& c : nd.children) {
        prod *= measure_node(*c, B + off);
        off += c->dim;
      }
      return prod;
    }
    case Domain::Kind::Numeric: {
      EvalCtx ctx;
      const NumericSamples& s = numeric_samples(nd, B, 0, ctx);
      double vol = 1.0;
      for (int j = 0; j < nd.dim; ++j) vol *= 2.0 * B[j];
      return vol * static_cast<double>(s.accepted.rows()) / static_cast<double>(s.total);
    }
  }
  throw std::logic_error("unreachable domain kind");
}

// Conservative per-dimension bounds; Numeric is bounded only by its torus chunk.
void bounding_box(const Node& nd, const double* B, RVec& lo, RVec& hi) {
  lo.resize(nd.dim);
  hi.resize(nd.dim);
  switch (nd.kind) {
    case Domain::Kind::Cube:
      lo = -nd.half_widths;
      hi = nd.half_widths;
      return;
    case Domain::Kind::Ball2D:
      lo.setConstant(-nd.radius);
      hi.setConstant(nd.radius);
      return;
    case Domain::Kind::Scale: {
      RVec clo, chi;
      bounding_box(*nd.children[0], B, clo, chi);
      for (int j = 0; j < nd.dim; ++j) {
        lo[j] = std::min(nd.factor * clo[j], nd.factor * chi[j]);
        hi[j] = std::max(nd.factor * clo[j], nd.factor * chi[j]);
      }
      return;
    }
    case Domain::Kind::Translate: {
      bounding_box(*nd.children[0], B, lo, hi);
      lo += nd.shift;
      hi += nd.shift;
      return;
    }
    case Domain::Kind::Union: {
      lo.setConstant(std::numeric_limits<double>::infinity());
      hi.setConstant(-std::numeric_limits<double>::infinity());
      RVec clo, chi;
      for (const auto& c : nd.children) {
        bounding_box(*c, B, clo, chi);
        lo = lo.cwiseMin(clo);
        hi = hi.cwiseMax(chi);
      }
      return;
    }
    case Domain::Kind::Product: {
      int off = 0;
      RVec clo, chi;
      for (const auto& c : nd.children) {
        bounding_box(*c, B + off, clo, chi);
        lo.segment(off, c->dim) = clo;
        hi.segment(off, c->dim) = chi;
        off += c->dim;
      }
      return;
    }
    case Domain::Kind::Numeric:
      for (int j = 0; j < nd.dim; ++j) {
        lo[j] = -B[j];
        hi[j] = B[j];
      }
      return;
  }
}

void validate_node(const Node& nd, const double* B) {
  constexpr double kTol = 1e-9;
  switch (nd.kind) {
    case Domain::Kind::Cube:
      for (int j = 0; j < nd.dim; ++j) {
        if (nd.half_widths[j] > B[j] + kTol) {
          throw ConfigError("domain: cube half-width " + std::to_string(nd.half_widths[j]) +
                            " exceeds torus half-width " + std::to_string(B[j]));
        }
      }
      return;
    case Domain::Kind::Ball2D:
      if (nd.radius > std::min(B[0], B[1]) + kTol) {
        throw ConfigError("domain: ball radius exceeds torus half-width");
      }
      return;
    case Domain::Kind::Scale:
      validate_node(*nd.children[0], B);
      return;
    case Domain::Kind::Translate: {
      validate_node(*nd.children[0], B);
      RVec lo, hi;
      bounding_box(*nd.children[0], B, lo, hi);
      for (int j = 0; j < nd.dim; ++j) {
        if (lo[j] + nd.shift[j] < -B[j] - kTol || hi[j] + nd.shift[j] > B[j] + kTol) {
          throw ConfigError("domain: translate pushes the domain outside the torus "
                            "(dimension " + std::to_string(j + 1) + ")");
        }
      }
      return;
    }
    case Domain::Kind::Union: {
      for (const auto& c : nd.children) validate_node(*c, B);
      if (nd.children.size() < 2) return;
      Rng rng(0xD15501u);
      RVec x(nd.dim);
      for (int i = 0; i < 10000; ++i) {
        for (int j = 0; j < nd.dim; ++j) x[j] = rng.uniform(-B[j], B[j]);
        int hits = 0;
        for (const auto& c : nd.children) hits += contains_node(*c, x.data()) ? 1 : 0;
        if (hits > 1) {
          throw ConfigError("domain: union children overlap (detected by sampling)");
        }
      }
      return;
    }
    case Domain::Kind::Product: {
      int off = 0;
      for (const auto& c : nd.children) {
        validate_node(*c, B + off);
        off += c->dim;
      }
      return;
    }
    case Domain::Kind::Numeric:
      if (nd.samples < 1) throw ConfigError("domain: numeric domain needs at least one sample");
      return;
  }
}

void check_grid(const Domain& dom, const FrequencyGrid& grid) {
  if (dom.dim() != grid.dim()) {
    throw ConfigError("domain dimension " + std::to_string(dom.dim()) +
                      " does not match grid dimension " + std::to_string(grid.dim()));
  }
}

}  // namespace

// Factories ------------------------------------------------------------------

Domain Domain::cube(RVec half_widths) {
  if (half_widths.size() == 0) throw ConfigError("domain: cube needs at least one dimension");
  for (Eigen::Index j = 0; j < half_widths.size(); ++j) {
    if (!(half_widths[j] > 0.0)) throw ConfigError("domain: cube half-widths must be positive");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cube;
  n->dim = static_cast<int>(half_widths.size());
  n->half_widths = std::move(half_widths);
  return Domain(std::move(n));
}

Domain Domain::ball2d(double radius) {
  if (!(radius > 0.0)) throw ConfigError("domain: ball radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ball2D;
  n->dim = 2;
  n->radius = radius;
  return Domain(std::move(n));
}

Domain Domain::scale(double factor, Domain child) {
  if (!(factor >= -1.0 && factor <= 1.0) || factor == 0.0) {
    throw ConfigError("domain: scale factor must lie in [-1,1] and be nonzero");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->dim = child.dim();
  n->factor = factor;
  n->children.push_back(child.node_);
  return Domain(std::move(n));
}

Domain Domain::translate(RVec shift, Domain child) {
  if (shift.size() != child.dim()) throw ConfigError("domain: translate shift dimension mismatch");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Translate;
  n->dim = child.dim();
  n->shift = std::move(shift);
  n->children.push_back(child.node_);
  return Domain(std::move(n));
}

Domain Domain::disjoint_union(std::vector<Domain> children) {
  if (children.empty()) throw ConfigError("domain: union needs at least one child");
  const int d = children.front().dim();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->dim = d;
  for (const Domain& c : children) {
    if (c.dim() != d) throw ConfigError("domain: union children must share a dimension");
    n->children.push_back(c.node_);
  }
  return Domain(std::move(n));
}

Domain Domain::product(std::vector<Domain> children) {
  if (children.empty()) throw ConfigError("domain: product needs at least one child");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->dim = 0;
  for (const Domain& c : children) {
    n->dim += c.dim();
    n->children.push_back(c.node_);
  }
  return Domain(std::move(n));
}

Domain Domain::numeric(int dim, std::function<bool(const RVec&)> membership,
                       std::int64_t samples, std::uint64_t seed) {
  if (dim < 1) throw ConfigError("domain: numeric dimension must be positive");
  if (samples < 1) throw ConfigError("domain: numeric domain needs at least one sample");
  if (!membership) throw ConfigError("domain: numeric domain needs a membership callback");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Numeric;
  n->dim = dim;
  n->membership = std::move(membership);
  n->samples = samples;
  n->seed = seed;
  return Domain(std::move(n));
}

Domain Domain::numeric(Domain child, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("domain: numeric domain needs at least one sample");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Numeric;
  n->dim = child.dim();
  n->samples = samples;
  n->seed = seed;
  n->has_child_tree = true;
  n->children.push_back(child.node_);
  return Domain(std::move(n));
}

int Domain::dim() const { return node_->dim; }
Domain::Kind Domain::kind() const { return node_->kind; }

bool Domain::contains(const RVec& x) const {
  if (x.size() != node_->dim) throw std::invalid_argument("domain: point dimension mismatch");
  return contains_node(*node_, x.data());
}

double Domain::measure(const RVec& half_widths) const {
  if (half_widths.size() != node_->dim) {
    throw std::invalid_argument("domain: half_widths dimension mismatch");
  }
  return measure_node(*node_, half_widths.data());
}

// Characteristic function ----------------------------------------------------

Complex char_fn_real(const Domain& dom, const FrequencyGrid& grid, const RVec& t) {
  check_grid(dom, grid);
  if (t.size() != grid.dim()) throw std::invalid_argument("char_fn: offset dimension mismatch");
  validate_node(dom.root(), grid.half_widths().data());
  EvalCtx ctx;
  return eval_node(dom.root(), t.data(), grid.half_widths().data(), 0, ctx);
}

Complex char_fn(const Domain& dom, const FrequencyGrid& grid, const IVec& k) {
  return char_fn_real(dom, grid, k.cast<double>());
}

CharMatrix char_matrix(const Domain& dom, const FrequencyGrid& grid) {
  check_grid(dom, grid);
  validate_node(dom.root(), grid.half_widths().data());

  const int d = grid.dim();
  const std::int64_t p = grid.size();
  FrequencyGrid diff(grid.half_widths(), 2 * grid.order());

  EvalCtx ctx;
  CVec table(diff.size());
  RVec t(d);
  for (std::int64_t i = 0; i < diff.size(); ++i) {
    const IVec delta = diff.multi_index_of(i);
    for (int j = 0; j < d; ++j) t[j] = static_cast<double>(delta[j]);
    table[i] = eval_node(dom.root(), t.data(), grid.half_widths().data(), 0, ctx);
  }

  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> modes(p, d);
  for (std::int64_t i = 0; i < p; ++i) modes.row(i) = grid.multi_index_of(i).transpose();

  CharMatrix out{grid, CMat(p, p)};
  IVec delta(d);
  for (std::int64_t j = 0; j < p; ++j) {
    for (std::int64_t k = 0; k < p; ++k) {
      delta = (modes.row(k) - modes.row(j)).transpose();
      out.entries(j, k) = table[diff.index_of(delta)];
    }
  }
  return out;
}

McEstimate mc_char_fn(const Domain& dom, const FrequencyGrid& grid, const IVec& k,
                      std::int64_t samples, std::uint64_t seed) {
  check_grid(dom, grid);
  if (samples < 1) throw ConfigError("mc_char_fn: needs at least one sample");
  const int d = grid.dim();
  const RVec& B = grid.half_widths();

  Rng rng(seed);
  RVec x(d);
  Complex sum(0.0, 0.0);
  double sum_re2 = 0.0, sum_im2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(-B[j], B[j]);
    Complex w(0.0, 0.0);
    if (contains_node(dom.root(), x.data())) {
      double phase = 0.0;
      for (int j = 0; j < d; ++j) phase += k[j] * x[j] / B[j];
      w = std::polar(1.0, kPi * phase);
    }
    sum += w;
    sum_re2 += w.real() * w.real();
    sum_im2 += w.imag() * w.imag();
  }
  const double n = static_cast<double>(samples);
  const Complex mean = sum / n;
  double var = 0.0;
  if (samples > 1) {
    const double vr = (sum_re2 - n * mean.real() * mean.real()) / (n - 1.0);
    const double vi = (sum_im2 - n * mean.imag() * mean.imag()) / (n - 1.0);
    var = std::max(0.0, vr) + std::max(0.0, vi);
  }
  return {mean, std::sqrt(var / n)};
}

// JSON -----------------------------------------------------------------------

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("domain: unknown field '" + it.key() + "'");
  }
}

RVec as_rvec(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string("domain: ") + what + " must be a non-empty array");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string("domain: ") + what + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Domain parse_node(const json& j);

std::vector<Domain> parse_children(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("domain: children must be a non-empty array");
  std::vector<Domain> out;
  for (const auto& c : j) out.push_back(parse_node(c));
  return out;
}

Domain parse_node(const json& j) {
  if (!j.is_object()) throw ConfigError("domain: expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("domain: missing string field 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "cube") {
    check_keys(j, {"type", "half_widths"});
    if (!j.contains("half_widths")) throw ConfigError("domain: cube needs 'half_widths'");
    return Domain::cube(as_rvec(j["half_widths"], "half_widths"));
  }
  if (type == "ball") {
    check_keys(j, {"type", "radius"});
    if (!j.contains("radius") || !j["radius"].is_number()) {
      throw ConfigError("domain: ball needs numeric 'radius'");
    }
    return Domain::ball2d(j["radius"].get<double>());
  }
  if (type == "scale") {
    check_keys(j, {"type", "factor", "child"});
    if (!j.contains("factor") || !j["factor"].is_number() || !j.contains("child")) {
      throw ConfigError("domain: scale needs numeric 'factor' and 'child'");
    }
    return Domain::scale(j["factor"].get<double>(), parse_node(j["child"]));
  }
  if (type == "translate") {
    check_keys(j, {"type", "shift", "child"});
    if (!j.contains("shift") || !j.contains("child")) {
      throw ConfigError("domain: translate needs 'shift' and 'child'");
    }
    return Domain::translate(as_rvec(j["shift"], "shift"), parse_node(j["child"]));
  }
  if (type == "union") {
    check_keys(j, {"type", "children"});
    if (!j.contains("children")) throw ConfigError("domain: union needs 'children'");
    return Domain::disjoint_union(parse_children(j["children"]));
  }
  if (type == "product") {
    check_keys(j, {"type", "children"});
    if (!j.contains("children")) throw ConfigError("domain: product needs 'children'");
    return Domain::product(parse_children(j["children"]));
  }
  if (type == "numeric") {
    check_keys(j, {"type", "child", "samples", "seed"});
    if (!j.contains("child") || !j.contains("samples")) {
      throw ConfigError("domain: numeric needs 'child' and 'samples'");
    }
    if (!j["samples"].is_number_integer()) throw ConfigError("domain: 'samples' must be an integer");
    const std::uint64_t seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
    return Domain::numeric(parse_node(j["child"]), j["samples"].get<std::int64_t>(), seed);
  }
  throw ConfigError("domain: unknown type '" + type + "'");
}

json to_json_node(const Node& nd) {
  json j;
  switch (nd.kind) {
    case Domain::Kind::Cube: {
      j["type"] = "cube";
      j["half_widths"] = std::vector<double>(nd.half_widths.data(),
                                             nd.half_widths.data() + nd.half_widths.size());
      return j;
    }
    case Domain::Kind::Ball2D:
      j["type"] = "ball";
      j["radius"] = nd.radius;
      return j;
    case Domain::Kind::Scale:
      j["type"] = "scale";
      j["factor"] = nd.factor;
      j["child"] = to_json_node(*nd.children[0]);
      return j;
    case Domain::Kind::Translate:
      j["type"] = "translate";
      j["shift"] = std::vector<double>(nd.shift.data(), nd.shift.data() + nd.shift.size());
      j["child"] = to_json_node(*nd.children[0]);
      return j;
    case Domain::Kind::Union:
    case Domain::Kind::Product: {
      j["type"] = nd.kind == Domain::Kind::Union ? "union" : "product";
      j["children"] = json::array();
      for (const auto& c : nd.children) j["children"].push_back(to_json_node(*c));
      return j;
    }
    case Domain::Kind::Numeric:
      if (!nd.has_child_tree) {
        throw ConfigError("domain: numeric domain built from a membership callback "
                          "cannot be serialized");
      }
      j["type"] = "numeric";
      j["child"] = to_json_node(*nd.children[0]);
      j["samples"] = nd.samples;
      j["seed"] = nd.seed;
      return j;
  }
  throw std::logic_error("unreachable domain kind");
}

}  // namespace

Domain Domain::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("domain: invalid JSON: ") + e.what());
  }
  return parse_node(j);
}

std::string Domain::to_json() const { return to_json_node(*node_).dump(); }

}  // namespace pikl
