#pragma once

#include <cstdint>

namespace mlsparse {

/// Counter-based SplitMix64 generator. Output depends only on (seed, draw
/// index), so fixtures reproduce bit-for-bit across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stable mixing of a seed with a stream id, for independent substreams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mlsparse
