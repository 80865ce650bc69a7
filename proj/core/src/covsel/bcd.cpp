#include "mlsparse/covsel/bcd.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/error.hpp"

namespace mlsparse::covsel {

namespace {

std::vector<Pair> support_pairs(const SparseSymMatrix& a) {
  std::vector<Pair> out;
  for (const auto& t : a.upper_triplets())
    if (t.value != 0.0) out.push_back({t.row, t.col});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pair> merge_pairs(const std::vector<Pair>& x, const std::vector<Pair>& y) {
  std::vector<Pair> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SweepStats bcd_sweep(CovselState& st, const BcdOptions& opt, const PairRestriction* c) {
  opt.validate();
  const std::size_t n = st.dim();
  const double lambda = st.lambda();
  const CovarianceOracle& s = st.cov();
  CovselCounters& cnt = st.counters();

  const Adjacency graph =
      adjacency_from_pairs(n, c ? c->upper() : merge_pairs(support_pairs(st.a()), st.free_pairs()));
  const BlockPlan plan = partition_columns(graph, opt.block_size);

  SweepStats stats;
  stats.full = c == nullptr;
  std::vector<std::pair<Pair, double>> free_seen;

  for (const IndexSet& block : plan.blocks) {
    ++stats.blocks;
    WColumns w_block, w_nbr;
    FreeSetView free;
    if (c) {
      const IndexSet nc = c_neighborhood(*c, block);
      w_nbr = w_columns(st.a(), nc, opt.block_cg_tol, opt.cg_max_iter, &cnt.cg);
      w_block = restricted_w_rows(st.a(), block, *c, w_nbr);
      free = free_set_block(s, st.a(), lambda, block, w_block, c);
    } else {
      w_block = w_columns(st.a(), block, opt.block_cg_tol, opt.cg_max_iter, &cnt.cg);
      free = free_set_block(s, st.a(), lambda, block, w_block);
      for (std::size_t q = 0; q < free.pairs.size(); ++q) free_seen.push_back({free.pairs[q], std::abs(free.grad[q])});
      // Large neighborhoods are handled the same way: the extra columns are solved for.
      w_nbr = w_columns(st.a(), free.neighborhood, opt.neighbor_cg_tol, opt.cg_max_iter, &cnt.cg);
    }
    stats.subgradient_l1 += free.subgradient_l1;

    const NewtonResult dir = newton_block_direction(s, st.a(), lambda, block, free, w_block, w_nbr,
                                                    opt.newton_tol, opt.newton_max_sweeps);
    cnt.newton_sweeps += dir.sweeps;
    if (dir.delta.is_zero()) continue;
    const LinesearchMats mats = linesearch_matrices(block, dir.delta, w_block, w_nbr);
    const BlockStep step = block_linesearch(s, st.a(), dir.delta, mats, lambda, st.smooth(), st.l1());
    if (step.accepted) {
      st.apply(dir.delta, step);
      ++stats.accepted;
      ++cnt.block_updates;
    } else {
      ++stats.rejected;
      ++cnt.rejected_blocks;
    }
  }
  ++cnt.sweeps;

  if (stats.full) {
    // A pair crossing two blocks was seen twice; keep the later value.
    std::stable_sort(free_seen.begin(), free_seen.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Pair> pairs;
    std::vector<double> mags;
    for (std::size_t q = 0; q < free_seen.size(); ++q) {
      if (q + 1 < free_seen.size() && free_seen[q + 1].first == free_seen[q].first) continue;
      pairs.push_back(free_seen[q].first);
      mags.push_back(free_seen[q].second);
    }
    st.set_free_set(std::move(pairs), std::move(mags));
    st.set_subgradient(stats.subgradient_l1, false);
  }
  return stats;
}

bool stop_rule(double subgradient_l1, double a_l1, double stop_tol) { return subgradient_l1 < stop_tol * a_l1; }

bool converged(CovselState& st, const BcdOptions& opt) {
  const double a_l1 = st.a().l1_norm();
  if (!stop_rule(st.subgradient_estimate(), a_l1, opt.stop_tol)) return false;
  if (st.subgradient_exact()) return true;
  const double exact =
      exact_subgradient_l1(st.cov(), st.a(), st.lambda(), opt.verify_cg_tol, opt.cg_max_iter, &st.counters().verify);
  st.set_subgradient(exact, true);
  return stop_rule(exact, a_l1, opt.stop_tol);
}

ml::CoarseningInput BcdRelaxation::coarsening_input() {
  // The diagonal is part of every level; the hierarchy is built over the
  // off-diagonal candidates only.
  std::vector<Pair> supp = support_pairs(state_->a());
  std::erase_if(supp, [](const Pair& p) { return p.row == p.col; });
  candidates_ = merge_pairs(state_->free_pairs(), supp);
  std::erase_if(candidates_, [](const Pair& p) { return p.row == p.col; });
  const auto& fp = state_->free_pairs();
  const auto& fm = state_->free_magnitudes();
  ml::CoarseningInput in;
  in.magnitudes.assign(candidates_.size(), 0.0);
  std::vector<std::size_t> supp_pos;
  supp_pos.reserve(supp.size());
  std::size_t f = 0, sp = 0;
  for (std::size_t q = 0; q < candidates_.size(); ++q) {
    const Pair p = candidates_[q];
    while (f < fp.size() && fp[f] < p) ++f;
    if (f < fp.size() && fp[f] == p) in.magnitudes[q] = fm[f];
    while (sp < supp.size() && supp[sp] < p) ++sp;
    if (sp < supp.size() && supp[sp] == p) supp_pos.push_back(q);
  }
  in.support = IndexSet(std::move(supp_pos));
  return in;
}

PairRestriction BcdRelaxation::restriction_for(const IndexSet& ids) const {
  std::vector<Pair> pairs;
  pairs.reserve(ids.size());
  for (std::size_t q : ids) {
    if (q >= candidates_.size()) throw InvalidArgument("restriction_for: candidate index out of range");
    pairs.push_back(candidates_[q]);
  }
  for (std::size_t i = 0; i < state_->dim(); ++i) pairs.push_back({i, i});
  return PairRestriction(state_->dim(), pairs);
}

void BcdRelaxation::relax(const ml::LevelContext<PairRestriction>& ctx) {
  last_ = bcd_sweep(*state_, opt_, ctx.restriction);
}

bool BcdRelaxation::coarse_converged(const PairRestriction&) const {
  return !last_.full && stop_rule(last_.subgradient_l1, state_->a().l1_norm(), opt_.stop_tol);
}

}  // namespace mlsparse::covsel
