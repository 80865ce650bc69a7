#pragma once

#include <span>

#include "mlsparse/dense.hpp"

namespace mlsparse {

/// sign(t) * max(0, |t| - lam)
double soft_shrinkage(double t, double lam);

/// Minimizer of 0.5*a*z^2 + b*z + lam*|z| over z; requires a > 0.
double scalar_prox(double a, double b, double lam);

/// Min-norm element of grad + lam * d|x|, componentwise.
DenseVector min_norm_subgradient(std::span<const double> grad, std::span<const double> x,
                                 double lam);

/// Scalar version of the above.
double min_norm_subgradient(double grad, double x, double lam);

}  // namespace mlsparse
