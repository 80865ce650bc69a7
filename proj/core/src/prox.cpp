#include "mlsparse/prox.hpp"

#include <cmath>

#include "mlsparse/error.hpp"

namespace mlsparse {

double soft_shrinkage(double t, double lam) {
  const double m = std::abs(t) - lam;
  if (m <= 0.0) return 0.0;
  return t > 0.0 ? m : -m;
}

double scalar_prox(double a, double b, double lam) {
  if (!(a > 0.0)) throw InvalidArgument("scalar_prox: curvature a must be positive");
  return -soft_shrinkage(b, lam) / a;
}

double min_norm_subgradient(double grad, double x, double lam) {
  if (x > 0.0) return grad + lam;
  if (x < 0.0) return grad - lam;
  return soft_shrinkage(grad, lam);
}

DenseVector min_norm_subgradient(std::span<const double> grad, std::span<const double> x,
                                 double lam) {
  if (grad.size() != x.size()) throw InvalidArgument("min_norm_subgradient: length mismatch");
  DenseVector out(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) out[i] = min_norm_subgradient(grad[i], x[i], lam);
  return out;
}

}  // namespace mlsparse
