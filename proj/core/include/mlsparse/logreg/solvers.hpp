#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mlsparse/lasso/quadratic_model.hpp"
#include "mlsparse/logreg/dataset.hpp"
#include "mlsparse/logreg/objective.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "mlsparse/ml/trace.hpp"

namespace mlsparse::logreg {

enum class Algorithm { cdn, ml_cdn, glmnet, ml_glmnet };

std::string to_string(Algorithm a);
/// Accepts cdn, ml-cdn, glmnet, ml-glmnet.
Algorithm parse_algorithm(const std::string& name);

struct TrainConfig {
  double C = 1.0;
  double eps = 1e-3;
  std::size_t max_iterations = 1000;
  // CDN line search
  double sigma = 0.01;
  double beta = 0.5;
  std::size_t max_backtracks = 30;
  // GLMNET
  double ridge = 1e-12;
  std::size_t glmnet_inner_sweeps = 10;
  std::size_t ml_inner_fine = 1;
  std::size_t ml_inner_mid = 2;
  std::size_t ml_inner_coarse = 5;
  // ML cycles
  std::size_t ml_nu = 1;
  std::size_t ml_cdn_nu_coarse = 5;
  std::size_t ml_glmnet_nu_coarse = 1;

  void validate() const;
};

/// Weights plus margins and the tracked objective pieces.
class LogRegState {
 public:
  /// w0 empty means zero weights.
  LogRegState(const LabeledDataset& data, double C, DenseVector w0 = {});

  const LabeledDataset& data() const { return *data_; }
  const DenseVector& w() const { return w_; }
  double C() const { return C_; }
  const DenseVector& margins() const { return margins_.margins; }
  std::size_t version() const { return version_; }
  double loss() const { return loss_; }
  double l1() const { return l1_; }
  double objective() const { return loss_ + l1_; }
  LogRegModel model() const { return {w_, C_}; }

  /// Nonzero regularized weights plus the bias slot when present.
  std::size_t support_size() const;
  std::size_t max_support() const { return max_support_; }
  double work() const { return work_; }

  /// Full gradient at the current weights (cached per version).
  const DenseVector& gradient();
  double subgradient_l1();

  // Mutators used by the relaxations.
  void move_coordinate(std::size_t j, double step, double d_loss);
  void move(const DenseVector& step, const DenseVector& new_margins, double new_loss);
  void add_work(double w) { work_ += w; }
  void reanchor();

 private:
  void note_support();

  const LabeledDataset* data_;
  double C_;
  DenseVector w_;
  MarginCache margins_;
  std::size_t version_ = 0;
  double loss_ = 0.0;
  double l1_ = 0.0;
  std::size_t max_support_ = 0;
  double work_ = 0.0;
  std::size_t nnz_ = 0;
  DenseVector grad_;
  std::size_t grad_version_ = static_cast<std::size_t>(-1);
};

/// One CDN pass over `restriction` (all coordinates when null) in ascending
/// order. Returns the number of coordinates that moved.
std::size_t cdn_epoch(LogRegState& st, const TrainConfig& cfg, const IndexSet* restriction = nullptr);

/// The quadratic model of the loss + l1 around w over `vars`, with a ridge.
lasso::QuadraticModel glmnet_model(LogRegState& st, const IndexSet& vars, double ridge);

struct GlmnetStep {
  bool moved = false;
  bool stagnated = false;
  std::size_t free_size = 0;
  double alpha = 0.0;
};

/// One proximal Newton iteration restricted to the free set (intersected
/// with `restriction`), `inner_sweeps` coordinate descent sweeps on the
/// model, Armijo backtracking on the true objective.
GlmnetStep glmnet_newton_iteration(LogRegState& st, const TrainConfig& cfg, std::size_t inner_sweeps,
                                   const IndexSet* restriction = nullptr);

/// ||g_S(w)||_1 < eps * min(#pos,#neg)/m * ||g_S(w1)||_1; a zero reference counts as converged.
bool logreg_converged(double subgrad_l1, double reference, double eps, const LabeledDataset& d);

/// CDN epochs or GLMNET iterations as a multilevel relaxation over feature sets.
class LogRegRelaxation {
 public:
  using Restriction = IndexSet;

  LogRegRelaxation(LogRegState& st, const TrainConfig& cfg, Algorithm algo, double reference);

  double objective() const { return st_->objective(); }
  std::size_t support_size() const { return st_->support_size(); }
  std::size_t max_support_seen() const { return st_->max_support(); }
  double work_units() const { return st_->work(); }

  ml::CoarseningInput coarsening_input();
  IndexSet restriction_for(const IndexSet& ids) const;
  void relax(const ml::LevelContext<IndexSet>& ctx);
  bool coarse_converged(const IndexSet& c);

  std::size_t stagnations() const { return stagnations_; }

 private:
  LogRegState* st_;
  TrainConfig cfg_;
  Algorithm algo_;
  double reference_;
  std::vector<std::size_t> candidates_;
  std::size_t stagnations_ = 0;
};

static_assert(ml::Relaxation<LogRegRelaxation>);

struct TrainReport {
  Algorithm algorithm = Algorithm::cdn;
  bool converged = false;
  std::size_t iterations = 0;  // epochs, Newton iterations or ML-cycles
  double objective = 0.0;
  std::size_t support = 0;
  std::size_t max_support = 0;
  double subgradient_l1 = 0.0;
  double reference = 0.0;
  std::size_t stagnations = 0;
  ml::Trace trace;
  double seconds = 0.0;
};

struct TrainResult {
  LogRegModel model;
  TrainReport report;
};

TrainResult train(const LabeledDataset& data, Algorithm algo, const TrainConfig& cfg, DenseVector w0 = {});

}  // namespace mlsparse::logreg
