#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "mlsparse/dense.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::lasso {

/// Local model  m(z) = g'z + 0.5 z'Hz + sum_i lam_i |x_i + z_i|  around base x.
struct QuadraticModel {
  /// out = H v. v vanishes outside the active restriction; only entries of
  /// out on the restriction are read.
  std::function<void(std::span<const double> v, std::span<double> out)> hessian_apply;
  DenseVector hessian_diag;
  DenseVector grad;
  DenseVector base;
  double lambda = 0.0;
  /// Per-variable multipliers of lambda; empty means all ones.
  DenseVector lambda_weights;

  std::size_t size() const { return grad.size(); }
  double lam(std::size_t i) const { return lambda_weights.empty() ? lambda : lambda * lambda_weights[i]; }

  /// m(z) given z and Hz.
  double value(std::span<const double> z, std::span<const double> hz) const;
  double value(std::span<const double> z) const;
  void validate() const;
};

enum class StepKind { ssf, pcd, pcd_cg };

/// Largest eigenvalue estimate of H restricted to `restriction` (20 power
/// iterations from a fixed seed).
double spectral_radius_estimate(const QuadraticModel& model, const IndexSet& restriction,
                                std::size_t iterations = 20);

/// z = Sh_{lam/D}(x - g/D) - x on the restriction, zero elsewhere, with
/// D = diag(H) for pcd and D = 1.05 * rho(H) for ssf (pcd_cg uses the pcd
/// direction). Throws InvalidArgument naming a non-positive diagonal entry.
DenseVector shrinkage_direction(const QuadraticModel& model, StepKind kind, const IndexSet& restriction);

struct PcdCgResult {
  DenseVector z;
  double model_value = 0.0;  // m(z); m(0) is the reference
  std::size_t sweeps = 0;
  std::size_t hessian_applies = 0;
  bool converged = false;
};

/// PCD accelerated by nonlinear CG (Polak-Ribiere, restart every 10 sweeps
/// or on loss of descent) with exact line minimization of the piecewise
/// quadratic model. Stops when ||d||_D <= rel_tol * ||d_0||_D, where d is
/// the PCD direction. Each accepted sweep strictly lowers m.
PcdCgResult pcd_cg_solve(const QuadraticModel& model, const IndexSet& restriction, double rel_tol,
                         std::size_t max_sweeps);

}  // namespace mlsparse::lasso
