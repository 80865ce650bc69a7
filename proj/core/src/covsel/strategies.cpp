#include "mlsparse/covsel/strategies.hpp"

#include <chrono>
#include <functional>
#include <optional>

#include "mlsparse/error.hpp"

namespace mlsparse::covsel {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::bcd: return "bcd";
    case Strategy::ml_bcd: return "ml-bcd";
    case Strategy::continuation: return "continuation";
    case Strategy::dc: return "dc";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "bcd") return Strategy::bcd;
  if (name == "ml-bcd") return Strategy::ml_bcd;
  if (name == "continuation") return Strategy::continuation;
  if (name == "dc") return Strategy::dc;
  throw InvalidArgument("unknown covsel solver '" + name + "' (expected bcd, ml-bcd, continuation or dc)");
}

std::vector<double> continuation_schedule(double lambda) {
  const double top = 0.5 * (1.0 + lambda);
  return {top, top - (top - lambda) / 3.0, top - 2.0 * (top - lambda) / 3.0, lambda};
}

namespace {

using Clock = std::chrono::steady_clock;
using Ctx = ml::LevelContext<PairRestriction>;

SolveResult finish(CovselState&& st, const SolveConfig& cfg, Strategy strategy, const ml::OuterResult& outer,
                   std::size_t extra_iterations, Clock::time_point t0) {
  if (cfg.bcd.reanchor && st.dim() <= 2000) st.reanchor();
  SolveReport r;
  r.strategy = strategy;
  r.converged = outer.converged;
  r.iterations = outer.cycles + extra_iterations;
  r.objective = st.objective();
  r.support = st.support_size();
  r.max_support = st.max_support();
  r.subgradient_l1 = st.subgradient_estimate();
  r.a_l1 = st.a().l1_norm();
  r.counters = st.counters();
  r.trace = outer.trace;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return SolveResult{std::move(st), std::move(r)};
}

// Full sweeps until converged; trace cycle numbers continue from `offset`.
ml::OuterResult sweep_to_convergence(CovselState& st, BcdRelaxation& relax, const BcdOptions& opt,
                                     std::size_t offset, ml::Trace trace) {
  ml::OuterResult out;
  out.trace = std::move(trace);
  ml::CycleStats stats;
  while (!(out.converged = converged(st, opt))) {
    if (out.cycles >= opt.max_iterations) break;
    ml::detail::checked_relax(relax, Ctx{0, 0, nullptr}, stats);
    ++out.cycles;
    out.trace.add(ml::trace_row(relax, offset + out.cycles, 1));
  }
  return out;
}

}  // namespace

SolveResult solve_bcd(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  CovselState st(problem, std::move(a0));
  BcdRelaxation relax(st, cfg.bcd);
  ml::Trace trace;
  trace.add(ml::trace_row(relax, 0, 0));
  const ml::OuterResult out = sweep_to_convergence(st, relax, cfg.bcd, 0, std::move(trace));
  return finish(std::move(st), cfg, Strategy::bcd, out, 0, t0);
}

SolveResult ml_bcd_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  CovselState st(problem, std::move(a0));
  BcdRelaxation relax(st, cfg.bcd);
  ml::MLConfig ml;
  ml.nu = 1;
  ml.nu_coarse = 1;
  ml.max_cycles = cfg.bcd.max_iterations;
  const ml::OuterResult out = ml::solve_outer(relax, ml, [&] { return converged(st, cfg.bcd); });
  return finish(std::move(st), cfg, Strategy::ml_bcd, out, 0, t0);
}

SolveResult continuation_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  const std::vector<double> lambdas = continuation_schedule(problem.lambda());
  CovselState st(problem.with_lambda(lambdas.front()), std::move(a0));
  BcdRelaxation relax(st, cfg.bcd);
  ml::Trace trace;
  ml::CycleStats stats;
  std::size_t step = 0;
  for (double lam : lambdas) {
    st.set_lambda(lam);
    if (step == 0) trace.add(ml::trace_row(relax, 0, 0));
    ml::detail::checked_relax(relax, Ctx{0, 0, nullptr}, stats);
    trace.add(ml::trace_row(relax, ++step, 1));
  }
  const ml::OuterResult out = sweep_to_convergence(st, relax, cfg.bcd, step, std::move(trace));
  return finish(std::move(st), cfg, Strategy::continuation, out, 1, t0);
}

namespace {

void add_counters(CovselCounters& into, const CovselCounters& c) {
  into.cg.solves += c.cg.solves;
  into.cg.matvecs += c.cg.matvecs;
  into.verify.solves += c.verify.solves;
  into.verify.matvecs += c.verify.matvecs;
  into.sweeps += c.sweeps;
  into.block_updates += c.block_updates;
  into.rejected_blocks += c.rejected_blocks;
  into.newton_sweeps += c.newton_sweeps;
}

// Block-diagonal union of child states, renumbered into the parent's ids.
CovselState merge_states(const CovselProblem& parent, const IndexSet& ids,
                         const std::vector<std::pair<const CovselState*, const IndexSet*>>& children) {
  std::vector<Triplet> t;
  std::vector<std::pair<Pair, double>> free;
  double smooth = 0.0, l1 = 0.0;
  for (const auto& [child, cids] : children) {
    std::vector<std::size_t> map(cids->size());
    for (std::size_t q = 0; q < cids->size(); ++q) map[q] = ids.position((*cids)[q]);
    for (const auto& e : child->a().upper_triplets()) t.push_back({map[e.row], map[e.col], e.value});
    for (std::size_t q = 0; q < child->free_pairs().size(); ++q) {
      const Pair p = child->free_pairs()[q];
      const std::size_t a = map[p.row], b = map[p.col];
      free.push_back({Pair{std::min(a, b), std::max(a, b)}, child->free_magnitudes()[q]});
    }
    smooth += child->smooth();
    l1 += child->l1();
  }
  std::sort(free.begin(), free.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Pair> pairs;
  std::vector<double> mags;
  for (const auto& [p, m] : free) {
    pairs.push_back(p);
    mags.push_back(m);
  }
  CovselState st(parent, SparseSymMatrix::from_triplets(ids.size(), t), smooth, l1);
  st.set_free_set(std::move(pairs), std::move(mags));
  for (const auto& [child, cids] : children) add_counters(st.counters(), child->counters());
  return st;
}

}  // namespace

SolveResult dc_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  CovselState start(problem, std::move(a0));
  if (start.a().nnz() != start.dim()) throw InvalidArgument("dc_solve: the initial matrix must be diagonal");
  const std::size_t n = start.dim();
  const std::vector<BisectionNode> tree =
      bisection_tree(adjacency_from_pairs(n, start.free_pairs()), std::max<std::size_t>(cfg.dc_floor, 1));

  ml::Trace trace;
  {
    BcdRelaxation r0(start, cfg.bcd);
    trace.add(ml::trace_row(r0, 0, 0));
  }
  if (tree.size() == 1) {
    BcdRelaxation relax(start, cfg.bcd);
    const ml::OuterResult out = sweep_to_convergence(start, relax, cfg.bcd, 0, std::move(trace));
    return finish(std::move(start), cfg, Strategy::dc, out, 0, t0);
  }

  const double initial = start.objective();
  const DenseVector d0 = start.a().diagonal_values();
  std::vector<std::optional<CovselState>> states(tree.size());
  ml::CycleStats stats;
  for (std::size_t t = tree.size(); t-- > 0;) {
    const BisectionNode& node = tree[t];
    const bool root = t == 0;
    const CovselProblem sub = root ? problem : CovselProblem(problem.cov().subset(node.vertices), problem.lambda());
    if (node.left < 0) {
      std::vector<double> d;
      for (std::size_t v : node.vertices) d.push_back(d0[v]);
      states[t].emplace(sub, SparseSymMatrix::diagonal(d));
    } else {
      const auto l = static_cast<std::size_t>(node.left), r = static_cast<std::size_t>(node.right);
      states[t].emplace(merge_states(sub, node.vertices,
                                     {{&*states[l], &tree[l].vertices}, {&*states[r], &tree[r].vertices}}));
      states[l].reset();
      states[r].reset();
    }
    BcdRelaxation relax(*states[t], cfg.bcd);
    ml::detail::checked_relax(relax, Ctx{0, 0, nullptr}, stats);
  }
  CovselState st = std::move(*states[0]);
  if (st.objective() > initial) {
    ml::monotonicity_violations().fetch_add(1);
    throw ContractViolation("dc_solve: warm start increased the objective");
  }
  BcdRelaxation relax(st, cfg.bcd);
  trace.add(ml::trace_row(relax, 1, 1));
  const ml::OuterResult out = sweep_to_convergence(st, relax, cfg.bcd, 1, std::move(trace));
  return finish(std::move(st), cfg, Strategy::dc, out, 1, t0);
}

SolveResult solve(Strategy s, const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg) {
  switch (s) {
    case Strategy::bcd: return solve_bcd(problem, std::move(a0), cfg);
    case Strategy::ml_bcd: return ml_bcd_solve(problem, std::move(a0), cfg);
    case Strategy::continuation: return continuation_solve(problem, std::move(a0), cfg);
    case Strategy::dc: return dc_solve(problem, std::move(a0), cfg);
  }
  throw InvalidArgument("unknown strategy");
}

}  // namespace mlsparse::covsel
