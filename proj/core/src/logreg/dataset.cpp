#include "mlsparse/logreg/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mlsparse/error.hpp"

namespace mlsparse::logreg {

namespace {

// from_chars rejects a leading '+', which libsvm files use for labels.
bool parse_double(const char* b, const char* e, double& out) {
  if (b != e && *b == '+') ++b;
  const auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

}  // namespace

LabeledDataset::LabeledDataset(std::size_t n, std::vector<std::vector<Entry>> samples, std::vector<int> labels,
                               bool bias)
    : n_(n), bias_(bias), labels_(std::move(labels)) {
  if (samples.size() != labels_.size()) throw InvalidArgument("dataset: sample and label counts differ");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1)
      throw InvalidArgument("dataset: label of sample " + std::to_string(i) + " is not +1 or -1");
    if (labels_[i] == 1) ++pos_;
  }
  std::vector<std::size_t> count(dim(), 0);
  for (auto& s : samples) {
    std::sort(s.begin(), s.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t].index >= n_) throw InvalidArgument("dataset: feature index " + std::to_string(s[t].index) + " >= n");
      if (t > 0 && s[t].index == s[t - 1].index)
        throw InvalidArgument("dataset: duplicate feature " + std::to_string(s[t].index));
    }
    for (const auto& e : s) {
      if (e.value == 0.0) continue;
      by_sample_.push_back(e);
      ++count[e.index];
    }
    if (bias_) {
      by_sample_.push_back({n_, 1.0});
      ++count[n_];
    }
    sample_ptr_.push_back(by_sample_.size());
  }
  feature_ptr_.assign(dim() + 1, 0);
  for (std::size_t j = 0; j < dim(); ++j) feature_ptr_[j + 1] = feature_ptr_[j] + count[j];
  by_feature_.resize(by_sample_.size());
  std::vector<std::size_t> fill(feature_ptr_.begin(), feature_ptr_.end() - 1);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t t = sample_ptr_[i]; t < sample_ptr_[i + 1]; ++t)
      by_feature_[fill[by_sample_[t].index]++] = {i, by_sample_[t].value};
}

std::span<const LabeledDataset::Entry> LabeledDataset::sample(std::size_t i) const {
  return {by_sample_.data() + sample_ptr_[i], sample_ptr_[i + 1] - sample_ptr_[i]};
}

std::span<const LabeledDataset::Entry> LabeledDataset::feature(std::size_t j) const {
  return {by_feature_.data() + feature_ptr_[j], feature_ptr_[j + 1] - feature_ptr_[j]};
}

LabeledDataset LabeledDataset::with_bias(bool bias) const {
  std::vector<std::vector<Entry>> s(samples());
  for (std::size_t i = 0; i < samples(); ++i)
    for (const auto& e : sample(i))
      if (e.index < n_) s[i].push_back(e);
  return LabeledDataset(n_, std::move(s), labels_, bias);
}

LabeledDataset read_libsvm(std::istream& in, std::size_t features, bool bias) {
  std::vector<std::vector<LabeledDataset::Entry>> samples;
  std::vector<int> labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("libsvm line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    double label = 0.0;
    if (!parse_double(tok.data(), tok.data() + tok.size(), label)) fail("bad label '" + tok + "'");
    labels.push_back(label > 0.0 ? 1 : -1);
    std::vector<LabeledDataset::Entry> entries;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) fail("expected index:value, got '" + tok + "'");
      std::size_t idx = 0;
      double val = 0.0;
      const char* b = tok.data();
      const auto r1 = std::from_chars(b, b + colon, idx);
      if (r1.ec != std::errc() || r1.ptr != b + colon || !parse_double(b + colon + 1, b + tok.size(), val))
        fail("malformed pair '" + tok + "'");
      if (idx == 0) fail("feature indices are 1-based");
      if (!entries.empty() && idx - 1 <= entries.back().index) fail("feature indices must increase");
      entries.push_back({idx - 1, val});
      max_index = std::max(max_index, idx);
    }
    samples.push_back(std::move(entries));
  }
  if (samples.empty()) throw ParseError("libsvm: no samples");
  if (features == 0) features = max_index;
  if (max_index > features) throw ParseError("libsvm: feature index " + std::to_string(max_index) + " exceeds n");
  return LabeledDataset(features, std::move(samples), std::move(labels), bias);
}

LabeledDataset read_libsvm(const std::string& path, std::size_t features, bool bias) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_libsvm(in, features, bias);
}

void write_libsvm(std::ostream& out, const LabeledDataset& d) {
  out.precision(17);
  for (std::size_t i = 0; i < d.samples(); ++i) {
    out << (d.label(i) > 0 ? "+1" : "-1");
    for (const auto& e : d.sample(i))
      if (e.index < d.features()) out << ' ' << e.index + 1 << ':' << e.value;
    out << '\n';
  }
}

void write_libsvm(const std::string& path, const LabeledDataset& d) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_libsvm(out, d);
  if (!out) throw ParseError("write failed for " + path);
}

}  // namespace mlsparse::logreg
