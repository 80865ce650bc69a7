#include "mlsparse/logreg/objective.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "mlsparse/error.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::logreg {

double log1p_exp_neg(double s) { return std::max(-s, 0.0) + std::log1p(std::exp(-std::abs(s))); }

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

DenseVector compute_margins(const DenseVector& w, const LabeledDataset& d) {
  if (w.size() != d.dim()) throw InvalidArgument("weight vector length does not match the dataset");
  DenseVector s(d.samples());
  for (std::size_t i = 0; i < d.samples(); ++i) {
    double acc = 0.0;
    for (const auto& e : d.sample(i)) acc += e.value * w[e.index];
    s[i] = d.label(i) * acc;
  }
  return s;
}

void MarginCache::rebuild(const DenseVector& w, const LabeledDataset& d, std::size_t stamp) {
  margins = compute_margins(w, d);
  version = stamp;
}

LossGrad loss_grad_from_margins(std::span<const double> s, double C, const LabeledDataset& d) {
  LossGrad out;
  out.grad.assign(d.dim(), 0.0);
  DenseVector coef(d.samples());
  for (std::size_t i = 0; i < d.samples(); ++i) {
    out.loss += log1p_exp_neg(s[i]);
    coef[i] = (sigmoid(s[i]) - 1.0) * d.label(i);
  }
  out.loss *= C;
  for (std::size_t j = 0; j < d.dim(); ++j) {
    double acc = 0.0;
    for (const auto& e : d.feature(j)) acc += coef[e.index] * e.value;
    out.grad[j] = C * acc;
  }
  return out;
}

LossGrad loss_grad(const LogRegModel& model, const LabeledDataset& d) {
  const DenseVector s = compute_margins(model.w, d);
  return loss_grad_from_margins(s, model.C, d);
}

double l1_penalty(const DenseVector& w, const LabeledDataset& d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < d.features(); ++j) acc += std::abs(w[j]);
  return acc;
}

double objective(const LogRegModel& model, const LabeledDataset& d) {
  const DenseVector s = compute_margins(model.w, d);
  double loss = 0.0;
  for (double v : s) loss += log1p_exp_neg(v);
  return model.C * loss + l1_penalty(model.w, d);
}

HessianQuantities hessian_quantities(const LogRegModel& model, const LabeledDataset& d, const IndexSet& subset) {
  const DenseVector s = compute_margins(model.w, d);
  auto dd = std::make_shared<DenseVector>(d.samples());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = sigmoid(s[i]);
    (*dd)[i] = t * (1.0 - t);
  }
  HessianQuantities h;
  h.diag.resize(subset.size());
  for (std::size_t q = 0; q < subset.size(); ++q) {
    double acc = 0.0;
    for (const auto& e : d.feature(subset[q])) acc += (*dd)[e.index] * e.value * e.value;
    h.diag[q] = model.C * acc;
  }
  const double C = model.C;
  h.apply = [dd, C, &d, subset](std::span<const double> v, std::span<double> out) {
    DenseVector xv(d.samples(), 0.0);
    for (std::size_t q = 0; q < subset.size(); ++q)
      if (v[q] != 0.0)
        for (const auto& e : d.feature(subset[q])) xv[e.index] += e.value * v[q];
    for (std::size_t i = 0; i < xv.size(); ++i) xv[i] *= (*dd)[i];
    for (std::size_t q = 0; q < subset.size(); ++q) {
      double acc = 0.0;
      for (const auto& e : d.feature(subset[q])) acc += e.value * xv[e.index];
      out[q] = C * acc;
    }
  };
  return h;
}

DenseVector min_norm_subgradient(const DenseVector& w, const DenseVector& g, const LabeledDataset& d) {
  DenseVector out(d.dim());
  for (std::size_t j = 0; j < d.dim(); ++j)
    out[j] = j < d.features() ? mlsparse::min_norm_subgradient(g[j], w[j], 1.0) : g[j];
  return out;
}

double subgradient_l1(const DenseVector& w, const DenseVector& g, const LabeledDataset& d) {
  return norm1(min_norm_subgradient(w, g, d));
}

Prediction predict(const LogRegModel& model, std::span<const LabeledDataset::Entry> sample, bool bias) {
  double acc = 0.0;
  const std::size_t nreg = model.w.size() - (bias ? 1 : 0);
  for (const auto& e : sample)
    if (e.index < nreg) acc += e.value * model.w[e.index];
  if (bias && !model.w.empty()) acc += model.w.back();
  Prediction p;
  p.probability = sigmoid(acc);
  p.label = p.probability >= 0.5 ? 1 : -1;
  return p;
}

void write_model(std::ostream& out, const LogRegModel& model) {
  out.precision(17);
  out << "C " << model.C << "\nn " << model.w.size() << '\n';
  for (std::size_t j = 0; j < model.w.size(); ++j)
    if (model.w[j] != 0.0) out << j + 1 << ' ' << model.w[j] << '\n';
}

void write_model(const std::string& path, const LogRegModel& model) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_model(out, model);
}

LogRegModel read_model(std::istream& in) {
  LogRegModel m;
  std::string key;
  std::size_t n = 0;
  if (!(in >> key >> m.C) || key != "C") throw ParseError("model: expected 'C <value>' on line 1");
  if (!(in >> key >> n) || key != "n") throw ParseError("model: expected 'n <dim>' on line 2");
  m.w.assign(n, 0.0);
  std::size_t idx;
  double v;
  std::size_t line = 2;
  while (in >> idx >> v) {
    ++line;
    if (idx == 0 || idx > n) throw ParseError("model line " + std::to_string(line) + ": index out of range");
    m.w[idx - 1] = v;
  }
  if (!in.eof()) throw ParseError("model line " + std::to_string(line + 1) + ": malformed entry");
  return m;
}

}  // namespace mlsparse::logreg
