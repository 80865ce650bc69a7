#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "mlsparse/dense.hpp"
#include "mlsparse/samples.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::covsel {

/// Empirical covariance S = (1/m) Y Y^T evaluated on demand from the
/// samples. Whole columns are cached in a bounded LRU. Not thread-safe.
class CovarianceOracle {
 public:
  /// Uses every variable of y.
  explicit CovarianceOracle(std::shared_ptr<const SampleMatrix> y, std::size_t cache_columns = 0);
  /// Uses only the listed variables, renumbered 0..ids.size()-1.
  CovarianceOracle(std::shared_ptr<const SampleMatrix> y, std::vector<std::size_t> ids,
                   std::size_t cache_columns = 0);

  std::size_t dim() const { return ids_.size(); }
  std::size_t samples() const { return y_->samples(); }

  double entry(std::size_t i, std::size_t k) const;
  /// Full column k of S, valid until the next call that may evict it.
  const std::vector<double>& column(std::size_t k) const;
  DenseMatrix block(const IndexSet& rows, const IndexSet& cols) const;
  DenseMatrix dense() const;

  /// Oracle over a subset of this oracle's variables.
  std::shared_ptr<CovarianceOracle> subset(const IndexSet& local_ids) const;
  const std::vector<std::size_t>& global_ids() const { return ids_; }
  std::size_t cache_capacity() const { return capacity_; }

 private:
  std::shared_ptr<const SampleMatrix> y_;
  std::vector<std::size_t> ids_;
  std::size_t capacity_ = 0;
  mutable std::list<std::size_t> lru_;
  mutable std::unordered_map<std::size_t, std::pair<std::vector<double>, std::list<std::size_t>::iterator>> cache_;
};

/// Normalized samples plus the regularization weight.
class CovselProblem {
 public:
  /// Throws InvalidArgument unless the samples are normalized and lambda > 0.
  CovselProblem(std::shared_ptr<const SampleMatrix> y, double lambda);
  CovselProblem(std::shared_ptr<CovarianceOracle> s, double lambda);

  std::size_t dim() const { return s_->dim(); }
  double lambda() const { return lambda_; }
  const CovarianceOracle& cov() const { return *s_; }
  std::shared_ptr<CovarianceOracle> cov_ptr() const { return s_; }
  CovselProblem with_lambda(double lambda) const { return CovselProblem(s_, lambda); }

 private:
  std::shared_ptr<CovarianceOracle> s_;
  double lambda_;
};

/// -logdet(A) + tr(SA) + lambda * ||A||_1 by dense Cholesky; +inf if A is not PD.
double dense_objective(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda);
/// tr(SA) over the stored entries of A.
double trace_sa(const CovarianceOracle& s, const SparseSymMatrix& a);

}  // namespace mlsparse::covsel
