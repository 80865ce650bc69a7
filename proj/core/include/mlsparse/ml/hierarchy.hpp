#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlsparse/sparse.hpp"

namespace mlsparse::ml {

/// Nested candidate sets C_0 ⊃ C_1 ⊃ ... ⊃ C_L over variable ids 0..N-1.
struct SupportHierarchy {
  std::vector<IndexSet> levels;
  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  std::vector<std::size_t> sizes() const;
};

/// C_0 is the whole universe; each next level keeps supp plus the variables of
/// the previous level with the largest |gradient|, sized
/// max(ceil(|C_l| * ratio), |supp|). Ties go to the lower index. Coarsening
/// stops once a level equals supp or would not shrink.
SupportHierarchy build_hierarchy(std::span<const double> grad_magnitudes, const IndexSet& supp,
                                 double ratio = 0.5);

}  // namespace mlsparse::ml
