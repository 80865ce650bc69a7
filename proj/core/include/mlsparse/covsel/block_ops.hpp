#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mlsparse/covsel/problem.hpp"
#include "mlsparse/dense.hpp"
#include "mlsparse/lasso/quadratic_model.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::covsel {

struct CgCounters {
  std::size_t solves = 0;
  std::size_t matvecs = 0;
};

/// Columns `cols` of A^{-1}, known at rows `rows`.
struct WColumns {
  IndexSet rows;
  IndexSet cols;
  DenseMatrix values;  // rows.size() x cols.size()

  bool has_row(std::size_t i) const { return rows.contains(i); }
  bool has_col(std::size_t k) const { return cols.contains(k); }
  /// Throws InvalidArgument when the row or column is not available.
  double at(std::size_t row, std::size_t col) const;
};

/// Columns of A^{-1} by Jacobi-preconditioned CG, one solve per column.
/// Throws NumericalError (with per-column iteration counts) when a solve
/// breaks down or misses the tolerance.
WColumns w_columns(const SparseSymMatrix& a, const IndexSet& cols, double rel_tol,
                   std::size_t max_iter = 5000, CgCounters* counters = nullptr);

/// Symmetric pattern used to restrict a relaxation to a coarse level.
class PairRestriction {
 public:
  PairRestriction() = default;
  PairRestriction(std::size_t n, const std::vector<Pair>& upper);

  std::size_t dim() const { return adj_.size(); }
  bool contains(std::size_t i, std::size_t k) const;
  /// Sorted indices k with (i,k) in the restriction.
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_[i]; }
  std::vector<Pair> upper() const;
  std::size_t upper_size() const { return upper_size_; }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t upper_size_ = 0;
};

/// Free pairs of one block: pairs (i,k) touching the block with A_ik != 0 or
/// |S_ik - W_ik| > lambda.
struct FreeSetView {
  std::vector<Pair> pairs;   // row <= col, sorted
  std::vector<double> grad;  // (S - W) at each pair
  IndexSet neighborhood;     // rows outside the block touched by the free set
  /// Sum over entries (i,k), k in the block, of the min-norm subgradient
  /// magnitude. Covers every row without a restriction, C entries otherwise.
  double subgradient_l1 = 0.0;
};

/// Requires W at every row (unrestricted) or at block ∪ C-neighborhood; a
/// missing row raises InvalidArgument listing the rows.
FreeSetView free_set_block(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                           const IndexSet& block, const WColumns& w_block,
                           const PairRestriction* restriction = nullptr);

/// Rows outside the block paired with the block in C.
IndexSet c_neighborhood(const PairRestriction& c, const IndexSet& block);

/// W restricted to the block columns and rows block ∪ N^C, obtained from the
/// N^C columns of A^{-1} without further solves: W11 = A11^{-1}(I - A12 W21).
/// Requires supp(A) ⊆ C.
WColumns restricted_w_rows(const SparseSymMatrix& a, const IndexSet& block, const PairRestriction& c,
                           const WColumns& w_nc);

struct BlockDelta {
  std::vector<Pair> pairs;  // row <= col
  std::vector<double> values;

  bool is_zero() const;
  std::vector<Triplet> triplets() const;
};

/// Dense W on block ∪ neighborhood, symmetric by construction.
struct LocalW {
  IndexSet rows;
  DenseMatrix w;
};
LocalW local_w(const IndexSet& block, const IndexSet& neighborhood, const WColumns& w_block,
               const WColumns& w_nbr);

/// Block quadratic model over the free pairs (in the order of free.pairs).
/// Off-diagonal pairs carry weight 2 in the gradient, Hessian and l1 term.
lasso::QuadraticModel block_quadratic_model(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                                            const IndexSet& block, const FreeSetView& free, const LocalW& w);

struct NewtonResult {
  BlockDelta delta;
  std::size_t sweeps = 0;
  std::size_t hessian_applies = 0;
  bool converged = false;
};

NewtonResult newton_block_direction(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                                    const IndexSet& block, const FreeSetView& free, const WColumns& w_block,
                                    const WColumns& w_nbr, double rel_tol = 1e-4, std::size_t max_sweeps = 500);

struct LinesearchMats {
  DenseMatrix b0, b1, b2;
};

/// logdet(A + alpha Delta) = logdet(A22) + logdet(B0 + alpha B1 + alpha^2 B2),
/// with every B_i formed from W blocks. Throws NumericalError when W11 is
/// not positive definite.
LinesearchMats linesearch_matrices(const IndexSet& block, const BlockDelta& delta, const WColumns& w_block,
                                   const WColumns& w_nbr);

struct BlockStep {
  bool accepted = false;
  double alpha = 0.0;
  double d_smooth = 0.0;  // change of -logdet(A) + tr(SA)
  double d_l1 = 0.0;      // change of ||A||_1 (both triangles)
  double objective_delta = 0.0;
  std::size_t trials = 0;
};

/// Sampled line search over alpha = 1, 1/2, ... with B(alpha) positive
/// definiteness as the feasibility guard. `objective` is the value the
/// caller tracks (smooth + lambda * l1); a step is accepted only when the
/// tracked value strictly decreases.
BlockStep block_linesearch(const CovarianceOracle& s, const SparseSymMatrix& a, const BlockDelta& delta,
                           const LinesearchMats& mats, double lambda, double smooth, double l1,
                           double beta = 0.5, std::size_t max_trials = 40);

/// F(A + alpha Delta) - F(A) from the line-search matrices (one alpha).
/// Returns nullopt when B(alpha) is not positive definite.
std::optional<BlockStep> block_objective_delta(const CovarianceOracle& s, const SparseSymMatrix& a,
                                               const BlockDelta& delta, const LinesearchMats& mats,
                                               double lambda, double alpha);

}  // namespace mlsparse::covsel
