#include "mlsparse/ml/cycle.hpp"

namespace mlsparse::ml {

void MLConfig::validate() const {
  if (nu < 1) throw InvalidArgument("MLConfig: nu must be at least 1");
  if (nu_coarse < 1) throw InvalidArgument("MLConfig: nu_coarse must be at least 1");
  if (!(coarsening_ratio > 0.0 && coarsening_ratio < 1.0))
    throw InvalidArgument("MLConfig: coarsening_ratio must lie in (0,1)");
  if (!(coarse_stop_tol >= 0.0)) throw InvalidArgument("MLConfig: coarse_stop_tol must be non-negative");
}

std::atomic<std::size_t>& monotonicity_violations() {
  static std::atomic<std::size_t> count{0};
  return count;
}

}  // namespace mlsparse::ml
