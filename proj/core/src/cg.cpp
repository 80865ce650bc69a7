#include "mlsparse/cg.hpp"

#include <cmath>

#include "mlsparse/error.hpp"
#include "mlsparse/parallel.hpp"

namespace mlsparse {

CgResult cg_solve(const SparseSymMatrix& a, std::span<const double> b, double rel_tol,
                  std::size_t max_iter) {
  const std::size_t n = a.dim();
  if (b.size() != n) throw InvalidArgument("cg_solve: right-hand side has wrong length");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidArgument("cg_solve: rel_tol must lie in (0,1)");

  CgResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  if (bnorm <= 1e-300) return res;

  DenseVector dinv = a.diagonal_values();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(dinv[i] > 0.0)) {
      res.status = CgStatus::breakdown;
      return res;
    }
    dinv[i] = 1.0 / dinv[i];
  }

  DenseVector r(b.begin(), b.end());
  DenseVector z(n), p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
  p = z;
  double rz = dot(r, z);
  const double target = rel_tol * bnorm;

  auto true_residual = [&] {
    a.multiply(res.x, q);
    ++res.matvecs;
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    return norm2(r);
  };

  res.status = CgStatus::max_iterations;
  while (res.iterations < max_iter) {
    a.multiply(p, q);
    ++res.matvecs;
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      res.status = CgStatus::breakdown;
      break;
    }
    const double step = rz / pq;
    axpy(step, p, res.x);
    axpy(-step, q, r);
    ++res.iterations;
    if (norm2(r) <= target) {
      // The recursive residual drifts; confirm before declaring success.
      const double rn = true_residual();
      if (rn <= target) {
        res.status = CgStatus::converged;
        res.relative_residual = rn / bnorm;
        return res;
      }
      for (std::size_t i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
      p = z;
      rz = dot(r, z);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  res.relative_residual = true_residual() / bnorm;
  if (res.status != CgStatus::breakdown && res.relative_residual <= rel_tol)
    res.status = CgStatus::converged;
  return res;
}

std::vector<CgResult> cg_solve_many(const SparseSymMatrix& a,
                                    const std::vector<DenseVector>& rhs, double rel_tol,
                                    std::size_t max_iter) {
  std::vector<CgResult> out(rhs.size());
  parallel_for(rhs.size(), [&](std::size_t k) { out[k] = cg_solve(a, rhs[k], rel_tol, max_iter); });
  return out;
}

}  // namespace mlsparse
