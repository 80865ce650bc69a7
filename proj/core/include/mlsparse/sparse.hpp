#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "mlsparse/dense.hpp"

namespace mlsparse {

/// Sorted, duplicate-free list of indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> ids);
  IndexSet(std::initializer_list<std::size_t> ids);

  static IndexSet range(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t operator[](std::size_t k) const { return ids_[k]; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<std::size_t>& ids() const { return ids_; }

  bool contains(std::size_t i) const;
  /// Position of i in the set, or size() when absent.
  std::size_t position(std::size_t i) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> ids_;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);

struct Pair {
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Set of index pairs closed under transposition. Stored sorted
/// lexicographically with both (i,j) and (j,i).
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::vector<Pair> pairs);

  static PairSet from_upper(std::vector<Pair> upper);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }
  const std::vector<Pair>& pairs() const { return pairs_; }

  bool contains(std::size_t i, std::size_t j) const;
  /// Pairs with row <= col, sorted.
  std::vector<Pair> upper() const;
  std::size_t upper_size() const;

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::vector<Pair> pairs_;
};

PairSet set_union(const PairSet& a, const PairSet& b);
PairSet set_intersection(const PairSet& a, const PairSet& b);

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Symmetric sparse matrix in compressed-column form. Both triangles are
/// stored, so columns double as rows.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  /// Each triplet sets (row,col) and its mirror; duplicates are summed.
  /// A triplet given in both orientations counts once per orientation.
  static SparseSymMatrix from_triplets(std::size_t n, std::span<const Triplet> upper_or_lower);
  static SparseSymMatrix identity(std::size_t n);
  static SparseSymMatrix diagonal(std::span<const double> d);
  /// Entries of a dense symmetric matrix with |value| > drop_tol.
  static SparseSymMatrix from_dense(const DenseMatrix& m, double drop_tol = 0.0);

  std::size_t dim() const { return n_; }
  std::size_t nnz() const { return rows_.size(); }

  std::span<const std::size_t> col_rows(std::size_t j) const {
    return {rows_.data() + ptr_[j], ptr_[j + 1] - ptr_[j]};
  }
  std::span<const double> col_values(std::size_t j) const {
    return {values_.data() + ptr_[j], ptr_[j + 1] - ptr_[j]};
  }

  double at(std::size_t i, std::size_t j) const;
  DenseVector diagonal_values() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  DenseVector multiply(std::span<const double> x) const;

  /// Sum of |a_ij| over all entries, diagonal included.
  double l1_norm() const;
  PairSet pattern() const;
  std::vector<Triplet> upper_triplets() const;
  DenseMatrix to_dense() const;
  DenseMatrix principal_submatrix(const IndexSet& ids) const;
  /// Dense block A(rows, cols).
  DenseMatrix block(const IndexSet& rows, const IndexSet& cols) const;

  /// this + alpha * delta, where delta lists upper-triangle entries. Off-
  /// diagonal entries that end exactly at zero are dropped.
  SparseSymMatrix plus_scaled(std::span<const Triplet> delta_upper, double alpha) const;

  bool structurally_symmetric() const;

 private:
  // full: both triangles, any order, duplicates summed.
  static SparseSymMatrix assemble(std::size_t n, std::vector<Triplet> full, bool drop_offdiag_zeros);

  std::size_t n_ = 0;
  std::vector<std::size_t> ptr_{0};
  std::vector<std::size_t> rows_;
  std::vector<double> values_;
};

}  // namespace mlsparse
