#include "mlsparse/lasso/lasso_problem.hpp"

#include <cmath>
#include <optional>

#include "mlsparse/error.hpp"
#include "mlsparse/lasso/linesearch.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::lasso {

LassoProblem::LassoProblem(DenseMatrix h, DenseVector c, double lambda)
    : h_(std::move(h)), c_(std::move(c)), lambda_(lambda) {
  if (h_.rows() != h_.cols() || h_.rows() != c_.size())
    throw InvalidArgument("LassoProblem: Hessian and linear term sizes differ");
  if (!is_symmetric(h_, 1e-12)) throw InvalidArgument("LassoProblem: Hessian is not symmetric");
  if (!(lambda_ >= 0.0)) throw InvalidArgument("LassoProblem: lambda must be non-negative");
}

double LassoProblem::smooth(std::span<const double> x) const {
  const DenseVector hx = h_ * x;
  return 0.5 * dot(x, hx) + dot(c_, x);
}

double LassoProblem::objective(std::span<const double> x) const { return smooth(x) + lambda_ * norm1(x); }

DenseVector LassoProblem::gradient(std::span<const double> x) const {
  DenseVector g = h_ * x;
  axpy(1.0, c_, g);
  return g;
}

DenseVector LassoProblem::subgradient(std::span<const double> x) const {
  return min_norm_subgradient(gradient(x), x, lambda_);
}

double LassoProblem::objective_change(std::span<const double> x, std::span<const double> g,
                                      std::span<const double> z, std::span<const double> hz, double alpha) const {
  double lin = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (z[i] == 0.0) continue;
    quad += z[i] * hz[i];
    const double y = x[i] + alpha * z[i];
    if (x[i] != 0.0 && (y > 0.0) == (x[i] > 0.0) && y != 0.0) {
      lin += alpha * z[i] * (g[i] + (x[i] > 0.0 ? lambda_ : -lambda_));
    } else {
      lin += alpha * g[i] * z[i] + lambda_ * (std::abs(y) - std::abs(x[i]));
    }
  }
  return lin + 0.5 * alpha * alpha * quad;
}

QuadraticModel LassoProblem::model_at(std::span<const double> x) const {
  QuadraticModel m;
  m.hessian_apply = [this](std::span<const double> v, std::span<double> out) {
    const DenseVector hv = h_ * v;
    std::copy(hv.begin(), hv.end(), out.begin());
  };
  m.hessian_diag.resize(size());
  for (std::size_t i = 0; i < size(); ++i) m.hessian_diag[i] = h_(i, i);
  m.grad = gradient(x);
  m.base.assign(x.begin(), x.end());
  m.lambda = lambda_;
  return m;
}

LassoRelaxation::LassoRelaxation(const LassoProblem& problem, DenseVector x0, LassoRelaxOptions opts)
    : p_(problem), x_(std::move(x0)), opts_(opts) {
  if (x_.size() != p_.size()) throw InvalidArgument("LassoRelaxation: starting point has wrong length");
  objective_ = p_.objective(x_);
  fine_grad_ = p_.gradient(x_);
  ref_sub_ = norm1(min_norm_subgradient(fine_grad_, x_, p_.lambda()));
  if (ref_sub_ == 0.0) ref_sub_ = 1.0;
  max_support_ = support_size();
}

std::size_t LassoRelaxation::support_size() const {
  std::size_t s = 0;
  for (double v : x_)
    if (v != 0.0) ++s;
  return s;
}

ml::CoarseningInput LassoRelaxation::coarsening_input() {
  ml::CoarseningInput in;
  in.magnitudes.resize(x_.size());
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    in.magnitudes[i] = std::abs(fine_grad_[i]);
    if (x_[i] != 0.0) supp.push_back(i);
  }
  in.support = IndexSet(std::move(supp));
  return in;
}

void LassoRelaxation::relax(const ml::LevelContext<IndexSet>& ctx) {
  ++relax_count_;
  const IndexSet all = ctx.restriction ? IndexSet() : IndexSet::range(x_.size());
  const IndexSet& r = ctx.restriction ? *ctx.restriction : all;
  const QuadraticModel m = p_.model_at(x_);
  DenseVector z;
  if (opts_.kind == StepKind::pcd_cg) {
    const auto res = pcd_cg_solve(m, r, opts_.inner_tol, opts_.inner_sweeps);
    z = res.z;
    work_ += static_cast<double>(r.size() * (res.hessian_applies + 1));
  } else {
    z = shrinkage_direction(m, opts_.kind, r);
    work_ += static_cast<double>(r.size());
  }
  if (norm_inf(z) > 0.0) {
    try {
      const DenseVector hz = p_.hessian() * z;
      const auto ls = sampled_linesearch(
          [&](double a) -> std::optional<double> { return p_.objective_change(x_, m.grad, z, hz, a); }, 0.0);
      for (std::size_t i : r) x_[i] += ls.alpha * z[i];
      objective_ += ls.value;
    } catch (const StagnationError&) {
      // No decreasing step: the iterate is optimal up to rounding.
    }
  }
  if (ctx.level == 0) fine_grad_ = p_.gradient(x_);
  max_support_ = std::max(max_support_, support_size());
}

bool LassoRelaxation::coarse_converged(const IndexSet& r) const {
  const DenseVector g = p_.gradient(x_);
  double s = 0.0;
  for (std::size_t i : r) s += std::abs(min_norm_subgradient(g[i], x_[i], p_.lambda()));
  return s <= coarse_tol_ * ref_sub_;
}

double LassoRelaxation::subgradient_l1() const { return norm1(p_.subgradient(x_)); }

}  // namespace mlsparse::lasso
