#pragma once

#include <cstddef>
#include <span>

#include "mlsparse/dense.hpp"
#include "mlsparse/lasso/quadratic_model.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::lasso {

/// F(x) = 0.5 x'Hx + c'x + lam ||x||_1 with a dense symmetric PD H.
class LassoProblem {
 public:
  LassoProblem(DenseMatrix h, DenseVector c, double lambda);

  std::size_t size() const { return c_.size(); }
  const DenseMatrix& hessian() const { return h_; }
  const DenseVector& linear() const { return c_; }
  double lambda() const { return lambda_; }

  double smooth(std::span<const double> x) const;
  double objective(std::span<const double> x) const;
  DenseVector gradient(std::span<const double> x) const;
  DenseVector subgradient(std::span<const double> x) const;
  /// F(x + alpha z) - F(x) given g = grad f(x) and hz = Hz. Coordinates
  /// that keep their sign contribute alpha z_i (g_i + lam sign x_i), so the
  /// change stays accurate when it is far below the rounding of F itself.
  double objective_change(std::span<const double> x, std::span<const double> g, std::span<const double> z,
                          std::span<const double> hz, double alpha) const;
  /// The second-order model at x, which is exact for this problem.
  QuadraticModel model_at(std::span<const double> x) const;

 private:
  DenseMatrix h_;
  DenseVector c_;
  double lambda_;
};

struct LassoRelaxOptions {
  StepKind kind = StepKind::pcd;
  double inner_tol = 1e-4;  // pcd_cg relative tolerance
  std::size_t inner_sweeps = 500;
};

/// Relaxation of a LASSO problem for the multilevel engine. Each relax is one
/// direction (of the configured kind) followed by the sampled line search.
class LassoRelaxation {
 public:
  using Restriction = IndexSet;

  LassoRelaxation(const LassoProblem& problem, DenseVector x0, LassoRelaxOptions opts = {});

  double objective() const { return objective_; }
  std::size_t support_size() const;
  std::size_t max_support_seen() const { return max_support_; }
  double work_units() const { return work_; }
  const DenseVector& x() const { return x_; }
  std::size_t relax_count() const { return relax_count_; }

  ml::CoarseningInput coarsening_input();
  IndexSet restriction_for(const IndexSet& ids) const { return ids; }
  void relax(const ml::LevelContext<IndexSet>& ctx);
  bool coarse_converged(const IndexSet& restriction) const;

  void set_coarse_tol(double tol) { coarse_tol_ = tol; }
  /// l1 norm of the min-norm subgradient at the current x.
  double subgradient_l1() const;
  double reference_subgradient_l1() const { return ref_sub_; }

 private:
  const LassoProblem& p_;
  DenseVector x_;
  DenseVector fine_grad_;  // gradient from the last unrestricted relaxation
  LassoRelaxOptions opts_;
  double objective_ = 0.0;
  double ref_sub_ = 1.0;
  double coarse_tol_ = 1e-6;
  std::size_t max_support_ = 0;
  std::size_t relax_count_ = 0;
  double work_ = 0.0;
};

}  // namespace mlsparse::lasso
