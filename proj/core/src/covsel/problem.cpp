#include "mlsparse/covsel/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlsparse/error.hpp"

namespace mlsparse::covsel {

namespace {

std::size_t default_capacity(std::size_t n, std::size_t requested) {
  if (requested > 0) return std::min(requested, std::max<std::size_t>(n, 1));
  const std::size_t budget = (64u << 20) / (8 * std::max<std::size_t>(n, 1));
  return std::clamp<std::size_t>(budget, std::min<std::size_t>(64, n), std::max<std::size_t>(n, 1));
}

std::vector<std::size_t> iota_ids(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

CovarianceOracle::CovarianceOracle(std::shared_ptr<const SampleMatrix> y, std::size_t cache_columns)
    : CovarianceOracle(y, iota_ids(y ? y->variables() : 0), cache_columns) {}

CovarianceOracle::CovarianceOracle(std::shared_ptr<const SampleMatrix> y, std::vector<std::size_t> ids,
                                   std::size_t cache_columns)
    : y_(std::move(y)), ids_(std::move(ids)) {
  if (!y_) throw InvalidArgument("CovarianceOracle: null sample matrix");
  if (y_->samples() == 0) throw InvalidArgument("CovarianceOracle: no samples");
  for (std::size_t g : ids_)
    if (g >= y_->variables()) throw InvalidArgument("CovarianceOracle: variable id out of range");
  capacity_ = default_capacity(ids_.size(), cache_columns);
}

double CovarianceOracle::entry(std::size_t i, std::size_t k) const {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second.first[i];
  it = cache_.find(i);
  if (it != cache_.end()) return it->second.first[k];
  return dot(y_->row(ids_[i]), y_->row(ids_[k])) / static_cast<double>(y_->samples());
}

const std::vector<double>& CovarianceOracle::column(std::size_t k) const {
  auto it = cache_.find(k);
  if (it != cache_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second.second);
    return it->second.first;
  }
  if (cache_.size() >= capacity_) {
    cache_.erase(lru_.back());
    lru_.pop_back();
  }
  std::vector<double> col(ids_.size());
  const auto yk = y_->row(ids_[k]);
  const double inv_m = 1.0 / static_cast<double>(y_->samples());
  for (std::size_t i = 0; i < ids_.size(); ++i) col[i] = dot(y_->row(ids_[i]), yk) * inv_m;
  lru_.push_front(k);
  auto [pos, _] = cache_.emplace(k, std::make_pair(std::move(col), lru_.begin()));
  return pos->second.first;
}

DenseMatrix CovarianceOracle::block(const IndexSet& rows, const IndexSet& cols) const {
  DenseMatrix b(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) b(r, c) = entry(rows[r], cols[c]);
  return b;
}

DenseMatrix CovarianceOracle::dense() const {
  const IndexSet all = IndexSet::range(dim());
  return block(all, all);
}

std::shared_ptr<CovarianceOracle> CovarianceOracle::subset(const IndexSet& local_ids) const {
  std::vector<std::size_t> g;
  g.reserve(local_ids.size());
  for (std::size_t i : local_ids) {
    if (i >= ids_.size()) throw InvalidArgument("CovarianceOracle::subset: id out of range");
    g.push_back(ids_[i]);
  }
  return std::make_shared<CovarianceOracle>(y_, std::move(g));
}

CovselProblem::CovselProblem(std::shared_ptr<const SampleMatrix> y, double lambda)
    : CovselProblem(std::make_shared<CovarianceOracle>(y), lambda) {
  if (!y->normalized() && !y->check_normalized())
    throw InvalidArgument("CovselProblem: samples must have zero mean and unit variance per variable");
}

CovselProblem::CovselProblem(std::shared_ptr<CovarianceOracle> s, double lambda)
    : s_(std::move(s)), lambda_(lambda) {
  if (!s_) throw InvalidArgument("CovselProblem: null covariance oracle");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw InvalidArgument("CovselProblem: lambda must be positive");
}

double trace_sa(const CovarianceOracle& s, const SparseSymMatrix& a) {
  double t = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) t += s.entry(rows[k], j) * vals[k];
  }
  return t;
}

double dense_objective(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda) {
  const LogDet ld = dense_chol_logdet(a.to_dense());
  if (!ld.pd) return std::numeric_limits<double>::infinity();
  return -ld.logdet + trace_sa(s, a) + lambda * a.l1_norm();
}

}  // namespace mlsparse::covsel
