#include "mlsparse/lasso/quadratic_model.hpp"

#include <cmath>
#include <string>

#include "mlsparse/error.hpp"
#include "mlsparse/prox.hpp"
#include "mlsparse/rng.hpp"

namespace mlsparse::lasso {

double QuadraticModel::value(std::span<const double> z, std::span<const double> hz) const {
  double v = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    v += grad[i] * z[i] + 0.5 * z[i] * hz[i];
    const double l = lam(i);
    if (l != 0.0) v += l * (std::abs(base[i] + z[i]) - std::abs(base[i]));
  }
  return v;
}

double QuadraticModel::value(std::span<const double> z) const {
  DenseVector hz(z.size(), 0.0);
  hessian_apply(z, hz);
  return value(z, hz);
}

void QuadraticModel::validate() const {
  const std::size_t n = grad.size();
  if (base.size() != n || hessian_diag.size() != n || (!lambda_weights.empty() && lambda_weights.size() != n))
    throw InvalidArgument("QuadraticModel: inconsistent vector lengths");
  if (!(lambda >= 0.0)) throw InvalidArgument("QuadraticModel: lambda must be non-negative");
  if (!hessian_apply) throw InvalidArgument("QuadraticModel: missing Hessian operator");
}

namespace {

void check_diag(const QuadraticModel& m, const IndexSet& r) {
  for (std::size_t i : r) {
    if (i >= m.size()) throw InvalidArgument("restriction index " + std::to_string(i) + " out of range");
    if (!(m.hessian_diag[i] > 0.0))
      throw InvalidArgument("non-positive Hessian diagonal at index " + std::to_string(i));
  }
}

}  // namespace

double spectral_radius_estimate(const QuadraticModel& model, const IndexSet& r, std::size_t iterations) {
  const std::size_t n = model.size();
  if (r.empty()) return 0.0;
  Rng rng(0x5eed5eedULL);
  DenseVector v(n, 0.0), hv(n, 0.0);
  for (std::size_t i : r) v[i] = rng.uniform(0.5, 1.5);
  double est = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const double vn = norm2(v);
    if (vn == 0.0) return 0.0;
    for (double& x : v) x /= vn;
    std::fill(hv.begin(), hv.end(), 0.0);
    model.hessian_apply(v, hv);
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i : r) v[i] = hv[i];
    est = norm2(v);
  }
  return est;
}

DenseVector shrinkage_direction(const QuadraticModel& model, StepKind kind, const IndexSet& r) {
  check_diag(model, r);
  DenseVector z(model.size(), 0.0);
  double c = 0.0;
  if (kind == StepKind::ssf) {
    c = 1.05 * spectral_radius_estimate(model, r);
    if (!(c > 0.0)) throw InvalidArgument("SSF step: Hessian vanishes on the restriction");
  }
  for (std::size_t i : r) {
    const double d = kind == StepKind::ssf ? c : model.hessian_diag[i];
    const double x = model.base[i];
    z[i] = soft_shrinkage(x - model.grad[i] / d, model.lam(i) / d) - x;
  }
  return z;
}

}  // namespace mlsparse::lasso
