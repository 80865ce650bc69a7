#include "mlsparse/logreg/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "mlsparse/error.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::logreg {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::cdn: return "cdn";
    case Algorithm::ml_cdn: return "ml-cdn";
    case Algorithm::glmnet: return "glmnet";
    case Algorithm::ml_glmnet: return "ml-glmnet";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "cdn") return Algorithm::cdn;
  if (name == "ml-cdn") return Algorithm::ml_cdn;
  if (name == "glmnet") return Algorithm::glmnet;
  if (name == "ml-glmnet") return Algorithm::ml_glmnet;
  throw InvalidArgument("unknown logreg algorithm '" + name + "' (expected cdn, ml-cdn, glmnet or ml-glmnet)");
}

void TrainConfig::validate() const {
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (!(sigma > 0.0 && sigma < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw InvalidArgument("line-search constants must lie in (0,1)");
  if (!(ridge >= 0.0)) throw InvalidArgument("ridge must be non-negative");
  if (glmnet_inner_sweeps == 0 || ml_inner_fine == 0 || ml_inner_mid == 0 || ml_inner_coarse == 0)
    throw InvalidArgument("inner sweep counts must be positive");
  if (ml_nu == 0 || ml_cdn_nu_coarse == 0 || ml_glmnet_nu_coarse == 0)
    throw InvalidArgument("relaxation counts must be positive");
}

LogRegState::LogRegState(const LabeledDataset& data, double C, DenseVector w0) : data_(&data), C_(C) {
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  if (w0.empty()) w0.assign(data.dim(), 0.0);
  if (w0.size() != data.dim()) throw InvalidArgument("initial weights have the wrong length");
  w_ = std::move(w0);
  reanchor();
}

void LogRegState::reanchor() {
  margins_.rebuild(w_, *data_, ++version_);
  loss_ = 0.0;
  for (double s : margins_.margins) loss_ += log1p_exp_neg(s);
  loss_ *= C_;
  l1_ = l1_penalty(w_, *data_);
  nnz_ = 0;
  for (std::size_t j = 0; j < data_->features(); ++j)
    if (w_[j] != 0.0) ++nnz_;
  note_support();
}

std::size_t LogRegState::support_size() const { return nnz_ + (data_->has_bias() ? 1 : 0); }

void LogRegState::note_support() { max_support_ = std::max(max_support_, support_size()); }

const DenseVector& LogRegState::gradient() {
  if (grad_version_ != version_) {
    grad_ = loss_grad_from_margins(margins_.margins, C_, *data_).grad;
    grad_version_ = version_;
    work_ += static_cast<double>(data_->nnz());
  }
  return grad_;
}

double LogRegState::subgradient_l1() { return logreg::subgradient_l1(w_, gradient(), *data_); }

void LogRegState::move_coordinate(std::size_t j, double step, double d_loss) {
  const double old = w_[j];
  w_[j] += step;
  for (const auto& e : data_->feature(j))
    margins_.margins[e.index] += step * data_->label(e.index) * e.value;
  loss_ += d_loss;
  if (j < data_->features()) {
    l1_ += std::abs(w_[j]) - std::abs(old);
    if (old == 0.0 && w_[j] != 0.0) ++nnz_;
    if (old != 0.0 && w_[j] == 0.0) --nnz_;
  }
  margins_.version = ++version_;
  note_support();
}

void LogRegState::move(const DenseVector& step, const DenseVector& new_margins, double new_loss) {
  for (std::size_t j = 0; j < w_.size(); ++j) w_[j] += step[j];
  margins_.margins = new_margins;
  margins_.version = ++version_;
  loss_ = new_loss;
  l1_ = l1_penalty(w_, *data_);
  nnz_ = 0;
  for (std::size_t j = 0; j < data_->features(); ++j)
    if (w_[j] != 0.0) ++nnz_;
  note_support();
}

std::size_t cdn_epoch(LogRegState& st, const TrainConfig& cfg, const IndexSet* restriction) {
  const LabeledDataset& d = st.data();
  const std::size_t count = restriction ? restriction->size() : d.dim();
  std::size_t moved = 0;
  for (std::size_t q = 0; q < count; ++q) {
    const std::size_t j = restriction ? (*restriction)[q] : q;
    const auto col = d.feature(j);
    const DenseVector& s = st.margins();
    double g = 0.0, h = 0.0;
    for (const auto& e : col) {
      const double t = sigmoid(s[e.index]);
      g += (t - 1.0) * d.label(e.index) * e.value;
      h += t * (1.0 - t) * e.value * e.value;
    }
    g *= st.C();
    h = st.C() * h + cfg.ridge;
    if (!(h > 0.0)) h = 1e-12;
    const double w = st.w()[j];
    const bool reg = j < d.features();
    const double step = reg ? scalar_prox(h, g - h * w, 1.0) - w : -g / h;
    st.add_work(static_cast<double>(col.size()));
    if (step == 0.0) continue;
    const double model = g * step + (reg ? std::abs(w + step) - std::abs(w) : 0.0);
    double alpha = 1.0;
    for (std::size_t t = 0; t < cfg.max_backtracks; ++t, alpha *= cfg.beta) {
      double dloss = 0.0;
      for (const auto& e : col) {
        const double si = s[e.index];
        dloss += log1p_exp_neg(si + alpha * step * d.label(e.index) * e.value) - log1p_exp_neg(si);
      }
      dloss *= st.C();
      st.add_work(static_cast<double>(col.size()));
      const double dl1 = reg ? std::abs(w + alpha * step) - std::abs(w) : 0.0;
      const double next = (st.loss() + dloss) + (st.l1() + dl1);
      if (dloss + dl1 <= cfg.sigma * alpha * model && next < st.objective()) {
        st.move_coordinate(j, alpha * step, dloss);
        ++moved;
        break;
      }
    }
  }
  return moved;
}

lasso::QuadraticModel glmnet_model(LogRegState& st, const IndexSet& vars, double ridge) {
  const LabeledDataset& d = st.data();
  const HessianQuantities hq = hessian_quantities(st.model(), d, vars);
  const DenseVector& g = st.gradient();
  lasso::QuadraticModel m;
  m.hessian_diag = hq.diag;
  for (double& v : m.hessian_diag) v += ridge;
  auto apply = hq.apply;
  m.hessian_apply = [apply, ridge](std::span<const double> v, std::span<double> out) {
    apply(v, out);
    for (std::size_t q = 0; q < v.size(); ++q) out[q] += ridge * v[q];
  };
  m.lambda = 1.0;
  for (std::size_t j : vars) {
    m.grad.push_back(g[j]);
    m.base.push_back(st.w()[j]);
    m.lambda_weights.push_back(j < d.features() ? 1.0 : 0.0);
  }
  return m;
}

GlmnetStep glmnet_newton_iteration(LogRegState& st, const TrainConfig& cfg, std::size_t inner_sweeps,
                                   const IndexSet* restriction) {
  const LabeledDataset& d = st.data();
  const DenseVector g = st.gradient();
  const DenseVector& w = st.w();
  GlmnetStep out;

  std::vector<std::size_t> free;
  const std::size_t count = restriction ? restriction->size() : d.dim();
  for (std::size_t q = 0; q < count; ++q) {
    const std::size_t j = restriction ? (*restriction)[q] : q;
    if (j >= d.features() || w[j] != 0.0 || std::abs(g[j]) > 1.0) free.push_back(j);
  }
  out.free_size = free.size();
  if (free.empty()) return out;

  const DenseVector& s = st.margins();
  DenseVector dd(d.samples());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = sigmoid(s[i]);
    dd[i] = t * (1.0 - t);
  }
  DenseVector h(free.size());
  double free_nnz = 0.0;
  for (std::size_t q = 0; q < free.size(); ++q) {
    double acc = 0.0;
    for (const auto& e : d.feature(free[q])) acc += dd[e.index] * e.value * e.value;
    h[q] = st.C() * acc + cfg.ridge;
    if (!(h[q] > 0.0)) h[q] = 1e-12;
    free_nnz += static_cast<double>(d.feature(free[q]).size());
  }

  // Coordinate descent on the model; xd[i] = <x_i, step>.
  DenseVector step(d.dim(), 0.0), xd(d.samples(), 0.0);
  for (std::size_t sweep = 0; sweep < inner_sweeps; ++sweep) {
    for (std::size_t q = 0; q < free.size(); ++q) {
      const std::size_t j = free[q];
      const auto col = d.feature(j);
      double hv = 0.0;
      for (const auto& e : col) hv += dd[e.index] * e.value * xd[e.index];
      const double grad = g[j] + st.C() * hv + cfg.ridge * step[j];
      const double z = w[j] + step[j];
      const double nz = j < d.features() ? scalar_prox(h[q], grad - h[q] * z, 1.0) : z - grad / h[q];
      const double delta = nz - z;
      if (delta == 0.0) continue;
      step[j] += delta;
      for (const auto& e : col) xd[e.index] += delta * e.value;
    }
  }
  st.add_work(free_nnz * static_cast<double>(1 + 2 * inner_sweeps));
  if (std::all_of(step.begin(), step.end(), [](double v) { return v == 0.0; })) return out;

  double model = 0.0;
  for (std::size_t j : free) {
    model += g[j] * step[j];
    if (j < d.features()) model += std::abs(w[j] + step[j]) - std::abs(w[j]);
  }
  if (!(model < 0.0)) {
    out.stagnated = true;
    return out;
  }
  DenseVector trial(d.samples());
  double alpha = 1.0;
  for (std::size_t t = 0; t < 40; ++t, alpha *= cfg.beta) {
    double loss = 0.0;
    for (std::size_t i = 0; i < trial.size(); ++i) {
      trial[i] = s[i] + alpha * d.label(i) * xd[i];
      loss += log1p_exp_neg(trial[i]);
    }
    loss *= st.C();
    double l1 = 0.0;
    for (std::size_t j = 0; j < d.features(); ++j) l1 += std::abs(w[j] + alpha * step[j]);
    st.add_work(static_cast<double>(d.samples()));
    const double next = loss + l1;
    if (next - st.objective() <= cfg.sigma * alpha * model && next < st.objective()) {
      DenseVector scaled(step);
      for (double& v : scaled) v *= alpha;
      st.move(scaled, trial, loss);
      out.moved = true;
      out.alpha = alpha;
      return out;
    }
  }
  out.stagnated = true;
  return out;
}

bool logreg_converged(double subgrad_l1, double reference, double eps, const LabeledDataset& d) {
  if (reference == 0.0) return true;
  const double factor =
      static_cast<double>(std::min(d.positives(), d.negatives())) / static_cast<double>(d.samples());
  return subgrad_l1 < eps * factor * reference;
}

LogRegRelaxation::LogRegRelaxation(LogRegState& st, const TrainConfig& cfg, Algorithm algo, double reference)
    : st_(&st), cfg_(cfg), algo_(algo), reference_(reference) {
  cfg_.validate();
}

ml::CoarseningInput LogRegRelaxation::coarsening_input() {
  const LabeledDataset& d = st_->data();
  const DenseVector& g = st_->gradient();
  const DenseVector& w = st_->w();
  candidates_.clear();
  ml::CoarseningInput in;
  std::vector<std::size_t> supp;
  for (std::size_t j = 0; j < d.dim(); ++j) {
    const bool in_supp = j >= d.features() || w[j] != 0.0;
    if (!in_supp && !(std::abs(g[j]) > 1.0)) continue;
    if (in_supp) supp.push_back(candidates_.size());
    candidates_.push_back(j);
    in.magnitudes.push_back(std::abs(g[j]));
  }
  in.support = IndexSet(std::move(supp));
  return in;
}

IndexSet LogRegRelaxation::restriction_for(const IndexSet& ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (std::size_t q : ids) {
    if (q >= candidates_.size()) throw InvalidArgument("restriction_for: candidate index out of range");
    out.push_back(candidates_[q]);
  }
  return IndexSet(std::move(out));
}

void LogRegRelaxation::relax(const ml::LevelContext<IndexSet>& ctx) {
  const bool ml = algo_ == Algorithm::ml_cdn || algo_ == Algorithm::ml_glmnet;
  if (algo_ == Algorithm::cdn || algo_ == Algorithm::ml_cdn) {
    cdn_epoch(*st_, cfg_, ctx.restriction);
    return;
  }
  std::size_t inner = cfg_.glmnet_inner_sweeps;
  if (ml) inner = ctx.level == 0 ? cfg_.ml_inner_fine : ctx.level == ctx.depth ? cfg_.ml_inner_coarse : cfg_.ml_inner_mid;
  const GlmnetStep step = glmnet_newton_iteration(*st_, cfg_, inner, ctx.restriction);
  if (step.stagnated) ++stagnations_;
}

bool LogRegRelaxation::coarse_converged(const IndexSet& c) {
  const DenseVector& g = st_->gradient();
  const LabeledDataset& d = st_->data();
  double acc = 0.0;
  for (std::size_t j : c)
    acc += std::abs(j < d.features() ? mlsparse::min_norm_subgradient(g[j], st_->w()[j], 1.0) : g[j]);
  return logreg_converged(acc, reference_, cfg_.eps, d);
}

TrainResult train(const LabeledDataset& data, Algorithm algo, const TrainConfig& cfg, DenseVector w0) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  LogRegState st(data, cfg.C, std::move(w0));
  const double reference = st.subgradient_l1();
  LogRegRelaxation relax(st, cfg, algo, reference);
  auto stop = [&] { return logreg_converged(st.subgradient_l1(), reference, cfg.eps, data); };

  ml::OuterResult out;
  if (algo == Algorithm::cdn || algo == Algorithm::glmnet) {
    out = ml::solve_plain(relax, cfg.max_iterations, stop);
  } else {
    ml::MLConfig mc;
    mc.nu = cfg.ml_nu;
    mc.nu_coarse = algo == Algorithm::ml_cdn ? cfg.ml_cdn_nu_coarse : cfg.ml_glmnet_nu_coarse;
    mc.max_cycles = cfg.max_iterations;
    out = ml::solve_outer(relax, mc, stop);
  }
  const double sub = st.subgradient_l1();
  st.reanchor();

  TrainResult r;
  r.model = st.model();
  r.report.algorithm = algo;
  r.report.converged = out.converged;
  r.report.iterations = out.cycles;
  r.report.objective = st.objective();
  r.report.support = st.support_size();
  r.report.max_support = st.max_support();
  r.report.subgradient_l1 = sub;
  r.report.reference = reference;
  r.report.stagnations = relax.stagnations();
  r.report.trace = std::move(out.trace);
  r.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace mlsparse::logreg
