#ifndef PIKL_WEAKL_HPP
#define PIKL_WEAKL_HPP

#include <cstdint>
#include <vector>

#include "pikl/types.hpp"

namespace pikl {

// One additive effect. Fourier and Categorical blocks consume a single input
// column; Linear consumes input_dim columns. Fourier inputs must live in
// [-pi, pi] (see Rescaler); Categorical inputs are integer codes 0..card-1.
struct FeatureBlock {
  enum class Kind { Linear, Fourier, Categorical };

  Kind kind = Kind::Linear;
  int input_dim = 1;
  int modes = 0;       // Fourier: m; Categorical: floor(card/2)
  double s = 1.0;      // Fourier smoothness exponent
  int cardinality = 0;

  static FeatureBlock linear(int input_dim);
  static FeatureBlock fourier(int m, double s);
  static FeatureBlock categorical(int cardinality);

  int dim() const;                  // D_l
  RVec regularizer_diag() const;    // diagonal of M_l
  // x points at input_dim consecutive scalars
  CVec features(const double* x) const;
};

// Affine map of each column onto [-pi, pi], fitted on training data.
// Out-of-range values are clamped; clamps are counted and warned once.
struct Rescaler {
  RVec lo, hi;

  static Rescaler fit(const RMat& x);
  RMat apply(const RMat& x) const;
  double apply_one(int col, double v) const;
  mutable std::int64_t clamped = 0;
};

struct TargetModel {
  std::vector<FeatureBlock> blocks;

  int dim() const;
  int input_dim() const;
};

// Inputs are laid out as the concatenation of every target's block inputs,
// in declaration order. Trust weights and per-block penalties are diagonal.
struct WeaKLProblem {
  std::vector<TargetModel> targets;
  RVec trust;               // size d2; empty -> all ones; entries > 0
  RVec block_lambda;        // one entry per block across targets; empty -> ones
  CMat penalty_square;      // optional M*M override (dim x dim); empty -> diagonal
  CMat soft_constraint;     // optional C for an extra weight*||C theta||^2 term
  double soft_weight = 0.0;
};

class WeaKLModel {
 public:
  WeaKLModel() = default;
  WeaKLModel(std::vector<TargetModel> targets, CVec theta, double residual);

  int num_targets() const { return static_cast<int>(targets_.size()); }
  int input_dim() const;
  int theta_dim() const { return static_cast<int>(theta_.size()); }
  const CVec& theta() const { return theta_; }
  CVec theta_block(int target, int block) const;
  double solve_residual() const { return residual_; }

  RVec predict_row(const RVec& x) const;
  RMat predict(const RMat& x) const;
  // effect of one block evaluated on that block's own inputs
  double effect(int target, int block, const double* x) const;
  // largest Fourier-block deviation from conjugate symmetry
  double conj_symmetry_residual() const;

  const std::vector<TargetModel>& targets() const { return targets_; }

 private:
  std::vector<TargetModel> targets_;
  std::vector<int> target_offset_;  // theta offset per target
  CVec theta_;
  double residual_ = 0.0;
};

WeaKLModel weakl_solve(const WeaKLProblem& problem, const RMat& x, const RMat& y);
// Restricts theta to Im(P): solves over theta' with theta = P theta'.
WeaKLModel weakl_solve_reduced(const WeaKLProblem& problem, const RMat& x,
                               const RMat& y, const CMat& p);

struct AdditiveFit {
  WeaKLModel model;

  double effect(int feature, double x) const;
  double predict_row(const RVec& x) const;
  RVec predict(const RMat& x) const;
};

AdditiveFit additive_fit(const std::vector<FeatureBlock>& blocks, const RMat& x,
                         const RVec& y, const RVec& lambdas);

// Multiplicative correction of frozen base effects: the caller supplies the
// base-effect values g_values(t, l) on the adaptation window and rescaled
// times in [-pi, pi]. Model: h0(t) + sum_l (1 + h_l(t)) g_l.
struct OnlineFit {
  int m = 0;
  double s = 1.0;
  CMat theta;  // (2m+1) x (d+1); column 0 is h0
  double solve_residual = 0.0;

  double correction(int l, double t) const;  // real <phi(t), theta_l>
  double predict(double t, const RVec& g_values) const;
};

OnlineFit online_fit(const RMat& g_values, const RVec& t, const RVec& y,
                     const RVec& lambdas, int m, double s);

// Time-varying expert weights p^{-1} + h_l(t) fitted on W = Y - mean(experts).
struct CombineFit {
  int m = 0;
  double s = 1.0;
  int experts = 0;
  CMat theta;  // (2m+1) x p
  double solve_residual = 0.0;

  double weight(int expert, double t) const;
  double predict(double t, const RVec& expert_values) const;
};

CombineFit combine_forecasts(const RMat& expert_preds, const RVec& t, const RVec& y,
                             const RVec& lambdas, int m, double s);

// C = I - P (P*P)^{-1} P*, the orthogonal projector onto Im(P)^perp.
CMat constraint_projector(const CMat& p);

struct SummationMatrix {
  RMat s;  // l1 x l2, entries 0/1, top l2 x l2 block identity

  static SummationMatrix from_matrix(RMat s);
  int l1() const { return static_cast<int>(s.rows()); }
  int l2() const { return static_cast<int>(s.cols()); }
};

struct HierFit {
  std::vector<TargetModel> nodes;  // bottom nodes (BU/T) or all nodes (G)
  SummationMatrix s;
  CVec theta;
  double solve_residual = 0.0;
  bool global = false;

  int input_dim() const;
  // predictions for all l1 nodes
  RVec predict_row(const RVec& x) const;
  RMat predict(const RMat& x) const;
  CVec node_block(int node) const;  // full theta slice of one node

  std::vector<int> node_offset;
};

// trust is the l1-long diagonal of Lambda (entries >= 0, not all zero);
// y has one column per node (all l1 of them, bottom-first).
HierFit hier_bu(const SummationMatrix& s, const std::vector<TargetModel>& bottom,
                const RVec& trust, const RVec& block_lambda, const RMat& x,
                const RMat& y);

// gamma is the l1-long diagonal of the coherence weight.
HierFit hier_global(const SummationMatrix& s, const std::vector<TargetModel>& all_nodes,
                    const RVec& gamma, const RVec& block_lambda, const RMat& x,
                    const RMat& y);

// Shrinks the blocks listed in j (bottom-node indices, equal dims) towards the
// line spanned by the stacked alpha_j identities, with weight lambda.
HierFit hier_transfer(const SummationMatrix& s, const std::vector<TargetModel>& bottom,
                      const RVec& trust, const std::vector<int>& j, const RVec& alpha,
                      double lambda, const RVec& block_lambda, const RMat& x,
                      const RMat& y);

double reconciliation_residual(const HierFit& fit, const RMat& x);

}  // namespace pikl

#endif
