#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mlsparse {

using DenseVector = std::vector<double>;

/// Column-major dense matrix. Used for the small per-block matrices
/// (inverse columns, line-search blocks) and as a test/IO container.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  DenseMatrix transposed() const;
  /// (M + M^T) / 2; requires a square matrix.
  DenseMatrix symmetrized() const;
  double max_abs() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
DenseVector operator*(const DenseMatrix& a, std::span<const double> x);

bool is_symmetric(const DenseMatrix& m, double rel_tol);

struct LogDet {
  double logdet = 0.0;  // meaningful only when pd
  bool pd = false;
};

/// log det of a symmetric matrix through its Cholesky factor. pd=false when
/// the factorization hits a non-positive pivot. Throws InvalidArgument for a
/// non-square input or asymmetry beyond 1e-12 relative.
LogDet dense_chol_logdet(const DenseMatrix& m);

/// Lower Cholesky factor, or nullopt when m is not positive definite.
/// Only the lower triangle of m is read.
std::optional<DenseMatrix> cholesky_lower(const DenseMatrix& m);

/// Solves L L^T X = B in place given the lower factor.
void cholesky_solve_in_place(const DenseMatrix& lower, DenseMatrix& rhs);

/// Inverse of a symmetric positive definite matrix. Throws NumericalError
/// when the Cholesky factorization fails.
DenseMatrix spd_inverse(const DenseMatrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm1(std::span<const double> a);
double norm_inf(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace mlsparse
