#include "mlsparse/samples.hpp"

#include <cmath>
#include <string>

#include "mlsparse/error.hpp"

namespace mlsparse {

namespace {

struct Moments {
  double mean;
  double var;
};

Moments moments(std::span<const double> r) {
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  return {mean, var / static_cast<double>(r.size())};
}

}  // namespace

bool SampleMatrix::check_normalized() const {
  if (m_ == 0) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto mo = moments(row(i));
    if (std::abs(mo.mean) > 1e-10 || std::abs(mo.var - 1.0) > 1e-8) return false;
  }
  return true;
}

SampleMatrix normalize_rows(SampleMatrix s) {
  if (s.samples() < 2) throw InvalidArgument("normalize_rows: need at least 2 samples");
  for (std::size_t i = 0; i < s.variables(); ++i) {
    auto r = s.row(i);
    const auto mo = moments(r);
    if (!(mo.var > 0.0))
      throw InvalidArgument("normalize_rows: variable " + std::to_string(i) + " has zero variance");
    const double inv_sd = 1.0 / std::sqrt(mo.var);
    for (double& v : r) v = (v - mo.mean) * inv_sd;
  }
  s.mark_normalized(true);
  return s;
}

}  // namespace mlsparse
