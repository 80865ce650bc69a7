#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace mlsparse::lasso {

struct LineSearchResult {
  double alpha = 0.0;
  double value = 0.0;
  std::size_t trials = 0;
};

/// Samples alpha = alpha0 * beta^i and returns the last alpha before the
/// sampled values start rising, provided its value is below f0. eval returns
/// nullopt for infeasible points. Throws StagnationError when no sample in
/// max_trials decreases the objective.
LineSearchResult sampled_linesearch(const std::function<std::optional<double>(double)>& eval,
                                    double f0, double beta = 0.5, double alpha0 = 1.0,
                                    std::size_t max_trials = 40);

/// Line search of F along x + alpha z using the sampling rule above.
/// pd_guard, when given, rejects infeasible trial points.
LineSearchResult armijo_linesearch(const std::function<double(std::span<const double>)>& f,
                                   std::span<const double> x, std::span<const double> z,
                                   double beta = 0.5, double alpha0 = 1.0,
                                   const std::function<bool(std::span<const double>)>& pd_guard = {},
                                   std::size_t max_trials = 40);

}  // namespace mlsparse::lasso
