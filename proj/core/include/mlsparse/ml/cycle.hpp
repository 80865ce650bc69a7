#pragma once

#include <atomic>
#include <concepts>
#include <cstddef>
#include <functional>
#include <sstream>
#include <vector>

#include "mlsparse/error.hpp"
#include "mlsparse/ml/hierarchy.hpp"
#include "mlsparse/ml/trace.hpp"

namespace mlsparse::ml {

struct MLConfig {
  std::size_t nu = 1;         // relaxations per level on the way up
  std::size_t nu_coarse = 1;  // cap on coarsest-level relaxations
  double coarsening_ratio = 0.5;
  double coarse_stop_tol = 1e-6;  // relative, used by coarse_converged
  std::size_t max_cycles = 1000;

  void validate() const;
};

/// Gradient magnitudes over a candidate list and the positions (within that
/// list) of the current support.
struct CoarseningInput {
  std::vector<double> magnitudes;
  IndexSet support;
};

template <class Restriction>
struct LevelContext {
  std::size_t level = 0;  // 0 is the finest
  std::size_t depth = 0;  // L of the current hierarchy
  const Restriction* restriction = nullptr;  // nullptr means unrestricted
};

// clang-format off
template <class R>
concept Relaxation = requires(R r, const R cr, const IndexSet& ids,
                              const LevelContext<typename R::Restriction>& ctx,
                              const typename R::Restriction& res) {
  typename R::Restriction;
  { cr.objective() } -> std::convertible_to<double>;
  { cr.support_size() } -> std::convertible_to<std::size_t>;
  { cr.max_support_seen() } -> std::convertible_to<std::size_t>;
  { cr.work_units() } -> std::convertible_to<double>;
  { r.coarsening_input() } -> std::same_as<CoarseningInput>;
  { r.restriction_for(ids) } -> std::same_as<typename R::Restriction>;
  { r.relax(ctx) };
  { r.coarse_converged(res) } -> std::convertible_to<bool>;
};
// clang-format on

/// Process-wide count of relaxations that increased the objective.
std::atomic<std::size_t>& monotonicity_violations();

struct CycleStats {
  std::size_t levels = 0;  // L + 1
  std::size_t relaxations = 0;
  std::vector<std::size_t> level_sizes;
};

namespace detail {

template <Relaxation R>
void checked_relax(R& r, const LevelContext<typename R::Restriction>& ctx, CycleStats& stats) {
  const double before = r.objective();
  r.relax(ctx);
  ++stats.relaxations;
  const double after = r.objective();
  if (after > before) {
    monotonicity_violations().fetch_add(1);
    std::ostringstream msg;
    msg.precision(17);
    msg << "relaxation at level " << ctx.level << " increased the objective from " << before
        << " to " << after;
    throw ContractViolation(msg.str());
  }
}

}  // namespace detail

/// One multilevel cycle: build the hierarchy from the stored gradient, relax
/// the coarsest level until its criterion or nu_coarse times, then relax each
/// finer level nu times. Level 0 is unrestricted.
template <Relaxation R>
CycleStats ml_cycle(R& r, const MLConfig& cfg) {
  using Res = typename R::Restriction;
  CycleStats stats;
  const CoarseningInput in = r.coarsening_input();
  const SupportHierarchy h = build_hierarchy(in.magnitudes, in.support, cfg.coarsening_ratio);
  const std::size_t depth = h.depth();
  stats.levels = depth + 1;
  stats.level_sizes = h.sizes();

  if (depth == 0) {
    for (std::size_t k = 0; k < cfg.nu; ++k) detail::checked_relax(r, LevelContext<Res>{0, 0, nullptr}, stats);
    return stats;
  }

  std::vector<Res> restrictions;
  restrictions.reserve(depth);
  for (std::size_t l = 1; l <= depth; ++l) restrictions.push_back(r.restriction_for(h.levels[l]));

  const Res& coarsest = restrictions.back();
  for (std::size_t k = 0; k < cfg.nu_coarse; ++k) {
    detail::checked_relax(r, LevelContext<Res>{depth, depth, &coarsest}, stats);
    if (r.coarse_converged(coarsest)) break;
  }
  for (std::size_t l = depth; l-- > 0;) {
    const Res* res = l == 0 ? nullptr : &restrictions[l - 1];
    for (std::size_t k = 0; k < cfg.nu; ++k) detail::checked_relax(r, LevelContext<Res>{l, depth, res}, stats);
  }
  return stats;
}

struct OuterResult {
  bool converged = false;
  std::size_t cycles = 0;
  Trace trace;
};

template <Relaxation R>
TraceRow trace_row(const R& r, std::size_t cycle, std::size_t levels) {
  return TraceRow{cycle, levels, r.objective(), r.support_size(), r.max_support_seen(), r.work_units()};
}

/// Repeats ML-cycles until stop() holds or the cycle budget runs out. The stop
/// test runs before the first cycle, so an optimal start costs nothing.
template <Relaxation R>
OuterResult solve_outer(R& r, const MLConfig& cfg, const std::function<bool()>& stop) {
  cfg.validate();
  OuterResult out;
  out.trace.add(trace_row(r, 0, 0));
  while (!(out.converged = stop())) {
    if (out.cycles >= cfg.max_cycles) break;
    const CycleStats s = ml_cycle(r, cfg);
    ++out.cycles;
    out.trace.add(trace_row(r, out.cycles, s.levels));
  }
  return out;
}

/// The single-level baseline: full relaxations only.
template <Relaxation R>
OuterResult solve_plain(R& r, std::size_t max_iterations, const std::function<bool()>& stop) {
  using Res = typename R::Restriction;
  OuterResult out;
  out.trace.add(trace_row(r, 0, 0));
  CycleStats stats;
  while (!(out.converged = stop())) {
    if (out.cycles >= max_iterations) break;
    detail::checked_relax(r, LevelContext<Res>{0, 0, nullptr}, stats);
    ++out.cycles;
    out.trace.add(trace_row(r, out.cycles, 1));
  }
  return out;
}

}  // namespace mlsparse::ml
