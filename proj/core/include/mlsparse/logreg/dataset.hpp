#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mlsparse::logreg {

/// Sparse features stored twice: compressed by sample and by feature.
/// With a bias, feature index `features()` is a constant 1 in every sample.
class LabeledDataset {
 public:
  struct Entry {
    std::size_t index;
    double value;
  };

  LabeledDataset() = default;
  /// samples[i] lists (feature, value) pairs of sample i; labels must be ±1.
  /// Throws InvalidArgument on a bad label or a feature index >= n.
  LabeledDataset(std::size_t n, std::vector<std::vector<Entry>> samples, std::vector<int> labels,
                 bool bias = false);

  /// Regularized features (the bias slot excluded).
  std::size_t features() const { return n_; }
  /// Length of the weight vector.
  std::size_t dim() const { return n_ + (bias_ ? 1 : 0); }
  std::size_t samples() const { return labels_.size(); }
  bool has_bias() const { return bias_; }
  std::size_t positives() const { return pos_; }
  std::size_t negatives() const { return labels_.size() - pos_; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  /// Entries of sample i, sorted by feature, bias included.
  std::span<const Entry> sample(std::size_t i) const;
  /// Entries of feature j over samples, sorted by sample.
  std::span<const Entry> feature(std::size_t j) const;
  std::size_t nnz() const { return by_sample_.size(); }

  LabeledDataset with_bias(bool bias) const;

 private:
  std::size_t n_ = 0;
  bool bias_ = false;
  std::vector<int> labels_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> sample_ptr_{0};
  std::vector<Entry> by_sample_;
  std::vector<std::size_t> feature_ptr_{0};
  std::vector<Entry> by_feature_;
};

/// libsvm text: "label idx:val idx:val ..." with 1-based indices. Labels
/// other than ±1 are mapped by sign (0 counts as -1). When `features` is 0
/// the largest index seen is used. ParseError carries the line number.
LabeledDataset read_libsvm(std::istream& in, std::size_t features = 0, bool bias = false);
LabeledDataset read_libsvm(const std::string& path, std::size_t features = 0, bool bias = false);
void write_libsvm(std::ostream& out, const LabeledDataset& d);
void write_libsvm(const std::string& path, const LabeledDataset& d);

}  // namespace mlsparse::logreg
