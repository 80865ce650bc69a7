#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "mlsparse/dense.hpp"
#include "mlsparse/logreg/dataset.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::logreg {

/// Weights (bias last when the dataset carries one) and the loss weight C.
struct LogRegModel {
  DenseVector w;
  double C = 1.0;
};

/// log(1 + exp(-s)) without overflow.
double log1p_exp_neg(double s);
/// 1 / (1 + exp(-s)).
double sigmoid(double s);

/// Per-sample margins y_i <x_i, w>, stamped with the weight version they match.
struct MarginCache {
  DenseVector margins;
  std::size_t version = 0;

  void rebuild(const DenseVector& w, const LabeledDataset& d, std::size_t stamp);
};

DenseVector compute_margins(const DenseVector& w, const LabeledDataset& d);

struct LossGrad {
  double loss = 0.0;
  DenseVector grad;
};

/// loss = C * sum log(1 + exp(-y_i x_i'w)), grad = C * sum (tau_i - 1) y_i x_i.
LossGrad loss_grad(const LogRegModel& model, const LabeledDataset& d);
LossGrad loss_grad_from_margins(std::span<const double> margins, double C, const LabeledDataset& d);

/// loss + ||w||_1 (bias excluded from the l1 term).
double objective(const LogRegModel& model, const LabeledDataset& d);
double l1_penalty(const DenseVector& w, const LabeledDataset& d);

struct HessianQuantities {
  DenseVector diag;  // over `subset`, in its order
  /// out = C X_S D X_S' v with v, out indexed like `subset`.
  std::function<void(std::span<const double>, std::span<double>)> apply;
};

/// D_ii = tau_i (1 - tau_i) at the current margins.
HessianQuantities hessian_quantities(const LogRegModel& model, const LabeledDataset& d, const IndexSet& subset);

/// Min-norm subgradient of loss + ||w||_1 (plain gradient on the bias).
DenseVector min_norm_subgradient(const DenseVector& w, const DenseVector& grad, const LabeledDataset& d);
double subgradient_l1(const DenseVector& w, const DenseVector& grad, const LabeledDataset& d);

struct Prediction {
  int label = 1;
  double probability = 0.5;
};

/// probability = tau(<x, w>) (bias added when the model has one more weight
/// than the largest feature index allows); label +1 when probability >= 1/2.
Prediction predict(const LogRegModel& model, std::span<const LabeledDataset::Entry> sample, bool bias = false);

/// Sparse model text: "C <value>", "n <dim>", then "index value" lines
/// (1-based) for the nonzero weights.
void write_model(std::ostream& out, const LogRegModel& model);
void write_model(const std::string& path, const LogRegModel& model);
LogRegModel read_model(std::istream& in);

}  // namespace mlsparse::logreg
