#include "mlsparse/covsel/state.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/error.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::covsel {

void BcdOptions::validate() const {
  if (block_size == 0) throw InvalidArgument("block size must be positive");
  for (double t : {block_cg_tol, neighbor_cg_tol, newton_tol, verify_cg_tol})
    if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("tolerances must lie in (0,1)");
  if (!(stop_tol > 0.0)) throw InvalidArgument("stop tolerance must be positive");
}

namespace {

bool is_diagonal(const SparseSymMatrix& a) { return a.nnz() == a.dim(); }

}  // namespace

DiagonalFreeSet diagonal_free_set(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda) {
  if (!is_diagonal(a)) throw InvalidArgument("diagonal_free_set: A is not diagonal");
  const std::size_t n = a.dim();
  const DenseVector d = a.diagonal_values();
  DiagonalFreeSet out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<double>& col = s.column(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = i == k ? 1.0 / d[k] : 0.0;
      const double g = col[i] - w;
      const double x = i == k ? d[k] : 0.0;
      out.subgradient_l1 += std::abs(min_norm_subgradient(g, x, lambda));
      if (i <= k && (x != 0.0 || std::abs(g) > lambda)) {
        out.pairs.push_back({i, k});
        out.magnitudes.push_back(std::abs(g));
      }
    }
  }
  // Column-major scan yields (row, col) ordered by column; sort by (row, col).
  std::vector<std::size_t> order(out.pairs.size());
  for (std::size_t q = 0; q < order.size(); ++q) order[q] = q;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out.pairs[x] < out.pairs[y]; });
  DiagonalFreeSet sorted;
  sorted.subgradient_l1 = out.subgradient_l1;
  for (std::size_t q : order) {
    sorted.pairs.push_back(out.pairs[q]);
    sorted.magnitudes.push_back(out.magnitudes[q]);
  }
  return sorted;
}

double exact_subgradient_l1(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda, double cg_tol,
                            std::size_t cg_max_iter, CgCounters* counters) {
  const std::size_t n = a.dim();
  constexpr std::size_t chunk = 128;
  double total = 0.0;
  std::vector<double> a_col(n, 0.0);
  for (std::size_t start = 0; start < n; start += chunk) {
    std::vector<std::size_t> ids;
    for (std::size_t k = start; k < std::min(n, start + chunk); ++k) ids.push_back(k);
    const WColumns w = w_columns(a, IndexSet(ids), cg_tol, cg_max_iter, counters);
    for (std::size_t c = 0; c < ids.size(); ++c) {
      const std::size_t k = ids[c];
      auto rows = a.col_rows(k);
      auto vals = a.col_values(k);
      for (std::size_t t = 0; t < rows.size(); ++t) a_col[rows[t]] = vals[t];
      const std::vector<double>& scol = s.column(k);
      for (std::size_t i = 0; i < n; ++i)
        total += std::abs(min_norm_subgradient(scol[i] - w.values(i, c), a_col[i], lambda));
      for (std::size_t t = 0; t < rows.size(); ++t) a_col[rows[t]] = 0.0;
    }
  }
  return total;
}

CovselState::CovselState(const CovselProblem& problem, SparseSymMatrix a0) : problem_(problem) {
  const std::size_t n = problem.dim();
  if (a0.dim() == 0) a0 = SparseSymMatrix::identity(n);
  if (a0.dim() != n) throw InvalidArgument("initial matrix has the wrong dimension");
  a_ = std::move(a0);
  l1_ = a_.l1_norm();
  if (is_diagonal(a_)) {
    const DenseVector d = a_.diagonal_values();
    double logdet = 0.0;
    for (double v : d) {
      if (!(v > 0.0)) throw InvalidArgument("initial matrix is not positive definite");
      logdet += std::log(v);
    }
    smooth_ = -logdet + trace_sa(cov(), a_);
    DiagonalFreeSet fs = diagonal_free_set(cov(), a_, lambda());
    free_pairs_ = std::move(fs.pairs);
    free_mags_ = std::move(fs.magnitudes);
    subgrad_ = fs.subgradient_l1;
    subgrad_exact_ = true;
  } else {
    const LogDet ld = dense_chol_logdet(a_.to_dense());
    if (!ld.pd) throw InvalidArgument("initial matrix is not positive definite");
    smooth_ = -ld.logdet + trace_sa(cov(), a_);
    // Without W the free set falls back to {|S_ij| > lambda} ∪ supp(A0).
    for (std::size_t k = 0; k < n; ++k) {
      const std::vector<double>& col = cov().column(k);
      for (std::size_t i = 0; i <= k; ++i)
        if (std::abs(col[i]) > lambda() || a_.at(i, k) != 0.0) {
          free_pairs_.push_back({i, k});
          free_mags_.push_back(std::abs(col[i]));
        }
    }
    std::vector<std::size_t> order(free_pairs_.size());
    for (std::size_t q = 0; q < order.size(); ++q) order[q] = q;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return free_pairs_[x] < free_pairs_[y]; });
    std::vector<Pair> p;
    std::vector<double> m;
    for (std::size_t q : order) {
      p.push_back(free_pairs_[q]);
      m.push_back(free_mags_[q]);
    }
    free_pairs_ = std::move(p);
    free_mags_ = std::move(m);
  }
  note_support();
}

CovselState::CovselState(const CovselProblem& problem, SparseSymMatrix a, double smooth, double l1)
    : problem_(problem), a_(std::move(a)), smooth_(smooth), l1_(l1) {
  if (a_.dim() != problem.dim()) throw InvalidArgument("state matrix has the wrong dimension");
  note_support();
}

void CovselState::set_lambda(double lambda) {
  problem_ = problem_.with_lambda(lambda);
  subgrad_ = std::numeric_limits<double>::infinity();
  subgrad_exact_ = false;
}

std::size_t CovselState::support_size() const {
  std::size_t diag = 0;
  for (std::size_t k = 0; k < a_.dim(); ++k)
    if (a_.at(k, k) != 0.0) ++diag;
  return (a_.nnz() - diag) / 2 + diag;
}

void CovselState::note_support() { max_support_ = std::max(max_support_, support_size()); }

void CovselState::set_free_set(std::vector<Pair> pairs, std::vector<double> magnitudes) {
  if (pairs.size() != magnitudes.size()) throw InvalidArgument("free set sizes differ");
  free_pairs_ = std::move(pairs);
  free_mags_ = std::move(magnitudes);
}

void CovselState::set_subgradient(double value, bool exact) {
  subgrad_ = value;
  subgrad_exact_ = exact;
}

void CovselState::apply(const BlockDelta& delta, const BlockStep& step) {
  if (!step.accepted) return;
  const auto t = delta.triplets();
  a_ = a_.plus_scaled(t, step.alpha);
  smooth_ += step.d_smooth;
  l1_ += step.d_l1;
  subgrad_exact_ = false;
  note_support();
}

void CovselState::reanchor() {
  const LogDet ld = dense_chol_logdet(a_.to_dense());
  if (!ld.pd) throw NumericalError("reanchor: iterate lost positive definiteness");
  smooth_ = -ld.logdet + trace_sa(cov(), a_);
  l1_ = a_.l1_norm();
}

}  // namespace mlsparse::covsel
