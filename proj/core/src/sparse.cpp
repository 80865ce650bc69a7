#include "mlsparse/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mlsparse/error.hpp"

namespace mlsparse {

IndexSet::IndexSet(std::vector<std::size_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

IndexSet::IndexSet(std::initializer_list<std::size_t> ids)
    : IndexSet(std::vector<std::size_t>(ids)) {}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  IndexSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(ids_.begin(), ids_.end(), i);
}

std::size_t IndexSet::position(std::size_t i) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), i);
  if (it == ids_.end() || *it != i) return ids_.size();
  return static_cast<std::size_t>(it - ids_.begin());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

PairSet::PairSet(std::vector<Pair> pairs) {
  const std::size_t k = pairs.size();
  pairs.reserve(2 * k);
  for (std::size_t t = 0; t < k; ++t)
    if (pairs[t].row != pairs[t].col) pairs.push_back({pairs[t].col, pairs[t].row});
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs_ = std::move(pairs);
}

PairSet PairSet::from_upper(std::vector<Pair> upper) { return PairSet(std::move(upper)); }

bool PairSet::contains(std::size_t i, std::size_t j) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j});
}

std::vector<Pair> PairSet::upper() const {
  std::vector<Pair> out;
  out.reserve(pairs_.size() / 2 + 1);
  for (const auto& p : pairs_)
    if (p.row <= p.col) out.push_back(p);
  return out;
}

std::size_t PairSet::upper_size() const {
  std::size_t c = 0;
  for (const auto& p : pairs_)
    if (p.row <= p.col) ++c;
  return c;
}

PairSet set_union(const PairSet& a, const PairSet& b) {
  std::vector<Pair> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PairSet(std::move(out));
}

PairSet set_intersection(const PairSet& a, const PairSet& b) {
  std::vector<Pair> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PairSet(std::move(out));
}

SparseSymMatrix SparseSymMatrix::assemble(std::size_t n, std::vector<Triplet> full,
                                          bool drop_offdiag_zeros) {
  std::sort(full.begin(), full.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseSymMatrix m;
  m.n_ = n;
  m.ptr_.assign(n + 1, 0);
  m.rows_.reserve(full.size());
  m.values_.reserve(full.size());
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    while (k < full.size() && full[k].col == j) {
      const std::size_t i = full[k].row;
      double v = 0.0;
      while (k < full.size() && full[k].col == j && full[k].row == i) v += full[k++].value;
      if (drop_offdiag_zeros && i != j && v == 0.0) continue;
      m.rows_.push_back(i);
      m.values_.push_back(v);
    }
    m.ptr_[j + 1] = m.rows_.size();
  }
  return m;
}

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t n, std::span<const Triplet> entries) {
  std::vector<Triplet> full;
  full.reserve(2 * entries.size());
  for (const auto& t : entries) {
    if (t.row >= n || t.col >= n) throw InvalidArgument("from_triplets: index out of range");
    if (!std::isfinite(t.value)) throw InvalidArgument("from_triplets: non-finite value");
    full.push_back(t);
    if (t.row != t.col) full.push_back({t.col, t.row, t.value});
  }
  return assemble(n, std::move(full), false);
}

SparseSymMatrix SparseSymMatrix::identity(std::size_t n) {
  std::vector<double> d(n, 1.0);
  return diagonal(d);
}

SparseSymMatrix SparseSymMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), t);
}

SparseSymMatrix SparseSymMatrix::from_dense(const DenseMatrix& m, double drop_tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("from_dense: matrix is not square");
  std::vector<Triplet> full;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      if (i == j || std::abs(v) > drop_tol) full.push_back({i, j, v});
    }
  return assemble(m.rows(), std::move(full), false);
}

double SparseSymMatrix::at(std::size_t i, std::size_t j) const {
  auto rows = col_rows(j);
  auto it = std::lower_bound(rows.begin(), rows.end(), i);
  if (it == rows.end() || *it != i) return 0.0;
  return values_[ptr_[j] + static_cast<std::size_t>(it - rows.begin())];
}

DenseVector SparseSymMatrix::diagonal_values() const {
  DenseVector d(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) d[j] = at(j, j);
  return d;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0.0;
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) s += values_[k] * x[rows_[k]];
    y[j] = s;
  }
}

DenseVector SparseSymMatrix::multiply(std::span<const double> x) const {
  DenseVector y(n_, 0.0);
  multiply(x, y);
  return y;
}

double SparseSymMatrix::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s;
}

PairSet SparseSymMatrix::pattern() const {
  std::vector<Pair> p;
  p.reserve(rows_.size());
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) p.push_back({rows_[k], j});
  return PairSet(std::move(p));
}

std::vector<Triplet> SparseSymMatrix::upper_triplets() const {
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k)
      if (rows_[k] <= j) t.push_back({rows_[k], j, values_[k]});
  return t;
}

DenseMatrix SparseSymMatrix::to_dense() const {
  DenseMatrix d(n_, n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) d(rows_[k], j) = values_[k];
  return d;
}

DenseMatrix SparseSymMatrix::principal_submatrix(const IndexSet& ids) const {
  return block(ids, ids);
}

DenseMatrix SparseSymMatrix::block(const IndexSet& rows, const IndexSet& cols) const {
  DenseMatrix d(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::size_t j = cols[c];
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) {
      const std::size_t r = rows.position(rows_[k]);
      if (r < rows.size()) d(r, c) = values_[k];
    }
  }
  return d;
}

SparseSymMatrix SparseSymMatrix::plus_scaled(std::span<const Triplet> delta_upper,
                                             double alpha) const {
  std::vector<Triplet> full;
  full.reserve(rows_.size() + 2 * delta_upper.size());
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) full.push_back({rows_[k], j, values_[k]});
  for (const auto& t : delta_upper) {
    if (t.row >= n_ || t.col >= n_) throw InvalidArgument("plus_scaled: index out of range");
    if (t.value == 0.0) continue;
    const double v = alpha * t.value;
    full.push_back({t.row, t.col, v});
    if (t.row != t.col) full.push_back({t.col, t.row, v});
  }
  return assemble(n_, std::move(full), true);
}

bool SparseSymMatrix::structurally_symmetric() const {
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = ptr_[j]; k < ptr_[j + 1]; ++k) {
      if (k > ptr_[j] && rows_[k] <= rows_[k - 1]) return false;
      if (at(j, rows_[k]) != values_[k]) return false;
    }
  return true;
}

}  // namespace mlsparse
