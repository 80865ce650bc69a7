#pragma once

#include <cstddef>
#include <vector>

#include "mlsparse/covsel/block_ops.hpp"
#include "mlsparse/covsel/partition.hpp"
#include "mlsparse/covsel/state.hpp"
#include "mlsparse/ml/cycle.hpp"

namespace mlsparse::covsel {

struct SweepStats {
  std::size_t blocks = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool full = false;
  double subgradient_l1 = 0.0;  // summed per block during the sweep
};

/// One BCD-IC sweep over a fresh partition. Without a restriction every
/// block recomputes its W columns by CG, and the sweep refreshes the state's
/// free set and subgradient estimate. With a restriction C (supp(A) ⊆ C),
/// only C-neighborhood columns are solved for and moves stay inside C.
SweepStats bcd_sweep(CovselState& state, const BcdOptions& opt, const PairRestriction* restriction = nullptr);

/// Strict stopping test: subgradient l1 norm < stop_tol * ||A||_1.
bool stop_rule(double subgradient_l1, double a_l1, double stop_tol);

/// Applies the stopping test to the last sweep's estimate and, when it
/// passes, re-checks it with freshly computed W columns.
bool converged(CovselState& state, const BcdOptions& opt);

/// BCD-IC sweeps as a multilevel relaxation over pair restrictions.
class BcdRelaxation {
 public:
  using Restriction = PairRestriction;

  BcdRelaxation(CovselState& state, const BcdOptions& opt) : state_(&state), opt_(opt) {}

  double objective() const { return state_->objective(); }
  std::size_t support_size() const { return state_->support_size(); }
  std::size_t max_support_seen() const { return state_->max_support(); }
  double work_units() const { return static_cast<double>(state_->counters().cg.matvecs); }

  /// Candidates are the last free set joined with supp(A).
  ml::CoarseningInput coarsening_input();
  PairRestriction restriction_for(const IndexSet& ids) const;
  void relax(const ml::LevelContext<PairRestriction>& ctx);
  bool coarse_converged(const PairRestriction& c) const;

  const SweepStats& last_sweep() const { return last_; }

 private:
  CovselState* state_;
  BcdOptions opt_;
  std::vector<Pair> candidates_;
  SweepStats last_;
};

static_assert(ml::Relaxation<BcdRelaxation>);

}  // namespace mlsparse::covsel
