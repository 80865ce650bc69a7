#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mlsparse/covsel/bcd.hpp"
#include "mlsparse/covsel/state.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "mlsparse/ml/trace.hpp"

namespace mlsparse::covsel {

enum class Strategy { bcd, ml_bcd, continuation, dc };

std::string to_string(Strategy s);
/// Accepts bcd, ml-bcd, continuation, dc.
Strategy parse_strategy(const std::string& name);

struct SolveConfig {
  BcdOptions bcd;
  std::size_t dc_floor = 64;
};

struct SolveReport {
  Strategy strategy = Strategy::bcd;
  bool converged = false;
  std::size_t iterations = 0;  // sweeps, cycles or phases counted at the target lambda
  double objective = 0.0;
  std::size_t support = 0;
  std::size_t max_support = 0;
  double subgradient_l1 = 0.0;
  double a_l1 = 0.0;
  CovselCounters counters;
  ml::Trace trace;
  double seconds = 0.0;
};

struct SolveResult {
  CovselState state;
  SolveReport report;
};

/// Plain BCD-IC: full sweeps until the stopping rule holds.
SolveResult solve_bcd(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg);
/// Multilevel BCD-IC with nu = nu_c = 1 over free-set hierarchies.
SolveResult ml_bcd_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg);
/// One sweep at each of four decreasing lambdas ending at the target, then full sweeps.
SolveResult continuation_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg);
/// Divide and conquer warm start from a diagonal A0, then full sweeps.
SolveResult dc_solve(const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg);

SolveResult solve(Strategy s, const CovselProblem& problem, SparseSymMatrix a0, const SolveConfig& cfg);

/// (lambda4, lambda3, lambda2, lambda) with lambda4 = (1 + lambda) / 2, linearly spaced.
std::vector<double> continuation_schedule(double lambda);

}  // namespace mlsparse::covsel
