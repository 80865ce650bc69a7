#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mlsparse {

/// n variables by m samples, stored row-major so each variable is contiguous.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t n, std::size_t m) : n_(n), m_(m), data_(n * m, 0.0) {}

  std::size_t variables() const { return n_; }
  std::size_t samples() const { return m_; }
  bool normalized() const { return normalized_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * m_, m_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * m_, m_}; }
  double& operator()(std::size_t i, std::size_t s) { return data_[i * m_ + s]; }
  double operator()(std::size_t i, std::size_t s) const { return data_[i * m_ + s]; }

  /// Recomputes the flag from the data: mean within 1e-10, variance within 1e-8.
  bool check_normalized() const;
  void mark_normalized(bool v) { normalized_ = v; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> data_;
  bool normalized_ = false;
};

/// Centers each variable and scales it to unit population variance.
/// Throws InvalidArgument for m < 2 or a zero-variance row (named in the message).
SampleMatrix normalize_rows(SampleMatrix samples);

}  // namespace mlsparse
