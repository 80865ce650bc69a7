#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "mlsparse/covsel/block_ops.hpp"
#include "mlsparse/covsel/problem.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::covsel {

struct BcdOptions {
  std::size_t block_size = 256;
  double block_cg_tol = 1e-5;      // W columns of the block
  double neighbor_cg_tol = 1e-4;   // W columns of the neighborhood
  std::size_t cg_max_iter = 5000;
  double newton_tol = 1e-4;
  std::size_t newton_max_sweeps = 500;
  double stop_tol = 5e-3;          // relative to ||A||_1
  double verify_cg_tol = 1e-6;
  std::size_t max_iterations = 200;
  /// Recompute the objective by dense Cholesky at the end of a solve (n <= 2000).
  bool reanchor = true;

  void validate() const;
};

struct CovselCounters {
  CgCounters cg;      // solves made by the sweeps themselves
  CgCounters verify;  // solves made to certify convergence
  std::size_t sweeps = 0;
  std::size_t block_updates = 0;
  std::size_t rejected_blocks = 0;
  std::size_t newton_sweeps = 0;
};

/// Iterate of the covariance selection solver. The objective is tracked as
/// smooth + lambda * l1 with smooth = -logdet(A) + tr(SA) and l1 = ||A||_1,
/// both updated from line-search deltas.
class CovselState {
 public:
  /// Starts from A0 (identity when empty). Diagonal A0 gives the exact
  /// objective, free set and subgradient analytically; otherwise the
  /// objective comes from a dense Cholesky. Throws InvalidArgument if A0 is
  /// not positive definite.
  CovselState(const CovselProblem& problem, SparseSymMatrix a0);
  /// Trusted constructor: the caller supplies the tracked quantities.
  CovselState(const CovselProblem& problem, SparseSymMatrix a, double smooth, double l1);

  const CovselProblem& problem() const { return problem_; }
  const CovarianceOracle& cov() const { return problem_.cov(); }
  std::size_t dim() const { return a_.dim(); }
  double lambda() const { return problem_.lambda(); }
  /// Switches lambda; the free set is kept as a candidate list, the
  /// subgradient estimate is dropped.
  void set_lambda(double lambda);

  const SparseSymMatrix& a() const { return a_; }
  double smooth() const { return smooth_; }
  double l1() const { return l1_; }
  double objective() const { return smooth_ + problem_.lambda() * l1_; }

  /// Upper-triangle nonzeros including the diagonal.
  std::size_t support_size() const;
  std::size_t max_support() const { return max_support_; }

  /// Free set (upper pairs, sorted) and |S - W| on it from the last full sweep.
  const std::vector<Pair>& free_pairs() const { return free_pairs_; }
  const std::vector<double>& free_magnitudes() const { return free_mags_; }
  void set_free_set(std::vector<Pair> pairs, std::vector<double> magnitudes);

  /// l1 norm of the min-norm subgradient from the last full sweep; +inf when unknown.
  double subgradient_estimate() const { return subgrad_; }
  bool subgradient_exact() const { return subgrad_exact_; }
  void set_subgradient(double value, bool exact);

  /// Applies A += alpha * delta with the accepted line-search deltas.
  void apply(const BlockDelta& delta, const BlockStep& step);
  /// Replaces smooth and l1 by a dense recomputation.
  void reanchor();

  CovselCounters& counters() { return counters_; }
  const CovselCounters& counters() const { return counters_; }

 private:
  void note_support();

  CovselProblem problem_;
  SparseSymMatrix a_;
  double smooth_ = 0.0;
  double l1_ = 0.0;
  std::size_t max_support_ = 0;
  std::vector<Pair> free_pairs_;
  std::vector<double> free_mags_;
  double subgrad_ = std::numeric_limits<double>::infinity();
  bool subgrad_exact_ = false;
  CovselCounters counters_;
};

/// Free set of A from S alone when A is diagonal (W = A^{-1} is diagonal).
/// Returns pairs, |S - W| on them, and the exact subgradient l1 norm.
struct DiagonalFreeSet {
  std::vector<Pair> pairs;
  std::vector<double> magnitudes;
  double subgradient_l1 = 0.0;
};
DiagonalFreeSet diagonal_free_set(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda);

/// Exact l1 norm of the min-norm subgradient using fresh W columns.
double exact_subgradient_l1(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda, double cg_tol,
                            std::size_t cg_max_iter, CgCounters* counters);

}  // namespace mlsparse::covsel
