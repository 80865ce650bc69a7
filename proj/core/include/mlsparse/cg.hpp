#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlsparse/dense.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse {

enum class CgStatus { converged, max_iterations, breakdown };

struct CgResult {
  DenseVector x;
  CgStatus status = CgStatus::converged;
  std::size_t iterations = 0;
  std::size_t matvecs = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive
/// definite A. On a converged return ||Ax - b|| <= rel_tol ||b|| holds for the
/// explicitly recomputed residual. Non-positive curvature is reported as
/// breakdown. A zero right-hand side returns zero with no iterations.
CgResult cg_solve(const SparseSymMatrix& a, std::span<const double> rhs, double rel_tol,
                  std::size_t max_iter);

/// Independent solves for several right-hand sides, run concurrently up to
/// thread_cap().
std::vector<CgResult> cg_solve_many(const SparseSymMatrix& a,
                                    const std::vector<DenseVector>& rhs, double rel_tol,
                                    std::size_t max_iter);

}  // namespace mlsparse
