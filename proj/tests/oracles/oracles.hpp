#pragma once
// Dense reference implementations built on Eigen. They share no code with
// the library beyond its container types, so they serve as test oracles.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlsparse/dense.hpp"
#include "mlsparse/logreg/dataset.hpp"
#include "mlsparse/rng.hpp"
#include "mlsparse/samples.hpp"
#include "mlsparse/sparse.hpp"

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat to_eigen(const mlsparse::DenseMatrix& m);
Mat to_eigen(const mlsparse::SparseSymMatrix& m);
Vec to_eigen(const std::vector<double>& v);
mlsparse::DenseMatrix from_eigen(const Mat& m);

// ---- LASSO: 0.5 x'Hx + c'x + lam ||x||_1 ----

double lasso_objective(const Mat& h, const Vec& c, double lam, const Vec& x);
/// Min-norm subgradient, componentwise.
Vec lasso_subgradient(const Mat& h, const Vec& c, double lam, const Vec& x);

struct LassoSolution {
  Vec x;
  double objective = 0.0;
  std::size_t iterations = 0;
};
/// FISTA with adaptive restart, then an exact solve on the detected support
/// (kept only if it satisfies the optimality conditions better).
LassoSolution lasso_minimize(const Mat& h, const Vec& c, double lam, double tol = 1e-13);

/// Random SPD matrix with eigenvalues in [lo, hi].
Mat random_spd(std::size_t n, mlsparse::Rng& rng, double lo, double hi);

// ---- covariance selection ----

/// (1/m) Y Y^T computed densely from the samples.
Mat sample_covariance(const mlsparse::SampleMatrix& y);
/// -logdet(A) + tr(SA); +inf when A is not positive definite.
double covsel_smooth(const Mat& s, const Mat& a);
double covsel_objective(const Mat& s, const Mat& a, double lam);
/// Sum over all entries of |min-norm subgradient| of the objective at A.
double covsel_subgradient_l1(const Mat& s, const Mat& a, double lam);

/// B0, B1, B2 with Schur(A + t Delta) = B0 + t B1 + t^2 B2 over `block`,
/// computed from the complement A_JJ^{-1} directly. Delta must vanish on JJ.
struct SchurBlocks {
  Mat b0, b1, b2;
};
SchurBlocks schur_blocks(const Mat& a, const Mat& delta, const std::vector<std::size_t>& block);

/// Sparse SPD matrix: a random symmetric pattern with the given edge
/// probability, made diagonally dominant.
mlsparse::SparseSymMatrix random_sparse_spd(std::size_t n, double edge_prob, mlsparse::Rng& rng);
/// Normalized Gaussian samples (n variables, m samples).
mlsparse::SampleMatrix random_samples(std::size_t n, std::size_t m, mlsparse::Rng& rng);

// ---- logistic regression: C sum log(1 + exp(-y x'w)) + ||w_reg||_1 ----

struct DenseLogreg {
  Mat x;  // samples by weights (bias column last when present)
  Vec y;
  bool bias = false;
};
DenseLogreg dense_logreg(const mlsparse::logreg::LabeledDataset& d);
double logreg_loss(const DenseLogreg& p, double C, const Vec& w);
Vec logreg_gradient(const DenseLogreg& p, double C, const Vec& w);
double logreg_objective(const DenseLogreg& p, double C, const Vec& w);
/// l1 norm of the min-norm subgradient (the bias has no l1 term).
double logreg_subgradient_l1(const DenseLogreg& p, double C, const Vec& w);

}  // namespace oracle
