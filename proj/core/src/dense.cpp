#include "mlsparse/dense.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/error.hpp"

namespace mlsparse {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::symmetrized() const {
  if (rows_ != cols_) throw InvalidArgument("symmetrized: matrix is not square");
  DenseMatrix s(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i)
      s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidArgument("DenseMatrix +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("DenseMatrix *: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto cj = c.col(j);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      auto ak = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
  a += b;
  return a;
}

DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("DenseMatrix -: shape mismatch");
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) ad[k] -= bd[k];
  return a;
}

DenseMatrix operator*(double s, DenseMatrix a) {
  a *= s;
  return a;
}

DenseVector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InvalidArgument("DenseMatrix * vector: shape mismatch");
  DenseVector y(a.rows(), 0.0);
  for (std::size_t k = 0; k < a.cols(); ++k) axpy(x[k], a.col(k), y);
  return y;
}

bool is_symmetric(const DenseMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.max_abs(), 1e-300);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = j + 1; i < m.rows(); ++i)
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) return false;
  return true;
}

std::optional<DenseMatrix> cholesky_lower(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("cholesky: matrix is not square");
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

void cholesky_solve_in_place(const DenseMatrix& lower, DenseMatrix& rhs) {
  const std::size_t n = lower.rows();
  if (rhs.rows() != n) throw InvalidArgument("cholesky_solve: shape mismatch");
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    auto x = rhs.col(c);
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * x[k];
      x[i] = s / lower(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= lower(k, ii) * x[k];
      x[ii] = s / lower(ii, ii);
    }
  }
}

LogDet dense_chol_logdet(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("dense_chol_logdet: matrix is not square");
  if (!is_symmetric(m, 1e-12)) throw InvalidArgument("dense_chol_logdet: matrix is not symmetric");
  auto l = cholesky_lower(m);
  if (!l) return {0.0, false};
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::log((*l)(i, i));
  return {2.0 * s, true};
}

DenseMatrix spd_inverse(const DenseMatrix& m) {
  auto l = cholesky_lower(m);
  if (!l) throw NumericalError("spd_inverse: matrix is not positive definite");
  DenseMatrix inv = DenseMatrix::identity(m.rows());
  cholesky_solve_in_place(*l, inv);
  return inv.symmetrized();
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double norm_inf(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace mlsparse
