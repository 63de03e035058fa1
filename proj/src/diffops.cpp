#include "pikl/diffops.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace pikl {
namespace {

std::vector<int> key_of(const IVec& orders) {
  return {orders.data(), orders.data() + orders.size()};
}

struct Lexer {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[nodiscard]] bool done() {
    skip_ws();
    return i >= s.size();
  }
  [[nodiscard]] char peek() {
    skip_ws();
    return s[i];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("operator expression: " + msg + " at position " + std::to_string(i) +
                      " in \"" + s + "\"");
  }
};

int axis_index(const std::string& name, int dim, Lexer& lx) {
  if (name.size() >= 2 && std::isdigit(static_cast<unsigned char>(name[1]))) {
    const int n = std::atoi(name.c_str() + 1);
    if (n < 1 || n > dim) lx.fail("unknown axis '" + name + "' for dimension " + std::to_string(dim));
    return n - 1;
  }
  static const std::string named = "txyz";
  const std::size_t pos = named.find(name[1]);
  if (name.size() != 2 || pos == std::string::npos) lx.fail("unknown axis '" + name + "'");
  if (dim == 1) {
    if (name[1] == 't' || name[1] == 'x') return 0;
    lx.fail("unknown axis '" + name + "' for dimension 1");
  }
  if (static_cast<int>(pos) >= dim) {
    lx.fail("unknown axis '" + name + "' for dimension " + std::to_string(dim));
  }
  return static_cast<int>(pos);
}

}  // namespace

LinearOperator::LinearOperator(int dim, std::vector<Term> terms) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("LinearOperator: dimension must be positive");
  std::map<std::vector<int>, double> combined;
  for (const Term& t : terms) {
    if (t.orders.size() != dim) {
      throw std::invalid_argument("LinearOperator: term dimension mismatch");
    }
    for (int j = 0; j < dim; ++j) {
      if (t.orders[j] < 0) throw std::invalid_argument("LinearOperator: negative derivative order");
    }
    combined[key_of(t.orders)] += t.coeff;
  }
  for (const auto& [orders, coeff] : combined) {
    if (coeff == 0.0) continue;
    Term t;
    t.coeff = coeff;
    t.orders = Eigen::Map<const IVec>(orders.data(), static_cast<Eigen::Index>(orders.size()));
    terms_.push_back(std::move(t));
  }
}

LinearOperator LinearOperator::zero(int dim) { return LinearOperator(dim, {}); }

int LinearOperator::order() const {
  int s = 0;
  for (const Term& t : terms_) s = std::max(s, t.orders.sum());
  return s;
}

LinearOperator LinearOperator::parse(const std::string& text, int dim) {
  Lexer lx{text};
  if (lx.done()) throw ConfigError("operator expression: empty");

  std::vector<Term> terms;
  while (!lx.done()) {
    double sign = 1.0;
    while (!lx.done() && (lx.peek() == '+' || lx.peek() == '-')) {
      if (lx.peek() == '-') sign = -sign;
      ++lx.i;
    }
    if (lx.done()) lx.fail("dangling sign");

    double coeff = sign;
    IVec orders = IVec::Zero(dim);
    bool saw_factor = false;
    while (!lx.done()) {
      const char c = lx.peek();
      if (c == '+' || c == '-') break;
      if (c == '*') {
        if (!saw_factor) lx.fail("unexpected '*'");
        ++lx.i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const char* start = lx.s.c_str() + lx.i;
        char* end = nullptr;
        coeff *= std::strtod(start, &end);
        if (end == start) lx.fail("bad number");
        lx.i += static_cast<std::size_t>(end - start);
        saw_factor = true;
        continue;
      }
      if (c == 'd') {
        std::size_t start = lx.i;
        ++lx.i;
        while (lx.i < lx.s.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])))) {
          ++lx.i;
        }
        const std::string name = lx.s.substr(start, lx.i - start);
        if (name.size() < 2) lx.fail("unknown axis '" + name + "'");
        const int axis = axis_index(name, dim, lx);
        int power = 1;
        if (!lx.done() && lx.peek() == '^') {
          ++lx.i;
          if (lx.done() || !std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            lx.fail("exponent must be a positive integer");
          }
          char* end = nullptr;
          const char* estart = lx.s.c_str() + lx.i;
          const long p = std::strtol(estart, &end, 10);
          if (*end == '.') lx.fail("exponent must be a positive integer");
          power = static_cast<int>(p);
          lx.i += static_cast<std::size_t>(end - estart);
        }
        orders[axis] += power;
        saw_factor = true;
        continue;
      }
      lx.fail(std::string("unexpected character '") + c + "'");
    }
    if (!saw_factor) lx.fail("empty term");
    terms.push_back(Term{coeff, orders});
  }
  return LinearOperator(dim, std::move(terms));
}

Complex LinearOperator::symbol(const IVec& k, const RVec& half_widths) const {
  if (k.size() != dim_ || half_widths.size() != dim_) {
    throw std::invalid_argument("LinearOperator: dimension mismatch");
  }
  Complex total(0.0, 0.0);
  for (const Term& t : terms_) {
    Complex factor(t.coeff, 0.0);
    for (int j = 0; j < dim_; ++j) {
      const Complex base(0.0, kPi * k[j] / half_widths[j]);
      for (int p = 0; p < t.orders[j]; ++p) factor *= base;
    }
    total += factor;
  }
  return total;
}

CVec LinearOperator::symbols(const FrequencyGrid& grid) const {
  if (grid.dim() != dim_) throw std::invalid_argument("LinearOperator: grid dimension mismatch");
  CVec out(grid.size());
  for (std::int64_t i = 0; i < grid.size(); ++i) {
    out[i] = symbol(grid.multi_index_of(i), grid.half_widths());
  }
  return out;
}

std::string LinearOperator::print() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const Term& t : terms_) {
    double c = t.coeff;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    }
    first = false;
    bool printed = false;
    if (c != 1.0 || t.orders.sum() == 0) {
      out << c;
      printed = true;
    }
    for (int j = 0; j < dim_; ++j) {
      if (t.orders[j] == 0) continue;
      if (printed) out << "*";
      out << "d" << (j + 1);
      if (t.orders[j] > 1) out << "^" << t.orders[j];
      printed = true;
    }
  }
  return out.str();
}

}  // namespace pikl
