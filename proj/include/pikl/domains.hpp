#pragma once
// Physical domains Omega inside the torus, their normalized characteristic
// functions F(k) = (1/vol) * integral over Omega of exp(i pi sum_j k_j x_j / B_j),
// and the projection matrix C with entries C_{j,k} = F(k - j).

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pikl/freqgrid.hpp"
#include "pikl/types.hpp"

namespace pikl {

struct McEstimate {
  Complex value;
  double std_error;  // sqrt((Var Re + Var Im) / N) of the sample mean
};

// Immutable algebraic tree: leaves Cube / Ball2D / Numeric, nodes Scale /
// Translate / DisjointUnion / Product. Cheap to copy (shared nodes).
class Domain {
 public:
  enum class Kind { Cube, Ball2D, Scale, Translate, Union, Product, Numeric };

  static Domain cube(RVec half_widths);
  static Domain ball2d(double radius);
  // factor in [-1,1] \ {0} so the image stays inside the torus
  static Domain scale(double factor, Domain child);
  static Domain translate(RVec shift, Domain child);
  // children must be pairwise disjoint (checked by sampling at evaluation time)
  static Domain disjoint_union(std::vector<Domain> children);
  // concatenates dimension groups
  static Domain product(std::vector<Domain> children);
  // Monte Carlo membership domain; `samples` points drawn uniformly on the
  // torus from `seed` at evaluation time
  static Domain numeric(int dim, std::function<bool(const RVec&)> membership,
                        std::int64_t samples, std::uint64_t seed);
  // same, with membership taken from a geometric child tree (serializable)
  static Domain numeric(Domain child, std::int64_t samples, std::uint64_t seed);

  int dim() const;
  Kind kind() const;
  bool contains(const RVec& x) const;
  // Lebesgue measure; half_widths only consulted by Numeric leaves
  double measure(const RVec& half_widths) const;

  // JSON tree with "type" tags: cube, ball, scale, translate, union, product,
  // numeric. Field names are documented in the CLI reference.
  static Domain from_json(const std::string& text);
  std::string to_json() const;

  struct Node;
  const Node& root() const { return *node_; }

 private:
  explicit Domain(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct CharMatrix {
  FrequencyGrid grid;
  CMat entries;  // (2m+1)^d square, entries(j,k) = F(k - j)
};

// F at an integer offset; k need not lie in the grid's mode box.
Complex char_fn(const Domain& dom, const FrequencyGrid& grid, const IVec& k);

// F at a real offset (what Scale composes through internally).
Complex char_fn_real(const Domain& dom, const FrequencyGrid& grid, const RVec& t);

// Assembles C from the (4m+1)^d difference lattice, one F evaluation per
// distinct offset.
CharMatrix char_matrix(const Domain& dom, const FrequencyGrid& grid);

// Plain Monte Carlo estimate of F(k) over the torus with its standard error;
// deterministic in (samples, seed), independent of any Numeric leaf settings.
McEstimate mc_char_fn(const Domain& dom, const FrequencyGrid& grid, const IVec& k,
                      std::int64_t samples, std::uint64_t seed);

}  // namespace pikl
