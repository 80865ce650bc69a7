#include "mlsparse/covsel/block_ops.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "mlsparse/cg.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/lasso/linesearch.hpp"
#include "mlsparse/prox.hpp"

namespace mlsparse::covsel {

double WColumns::at(std::size_t row, std::size_t col) const {
  const std::size_t r = rows.position(row);
  const std::size_t c = cols.position(col);
  if (r == rows.size() || c == cols.size()) {
    std::ostringstream msg;
    msg << "W entry (" << row << ',' << col << ") is not available";
    throw InvalidArgument(msg.str());
  }
  return values(r, c);
}

WColumns w_columns(const SparseSymMatrix& a, const IndexSet& cols, double rel_tol, std::size_t max_iter,
                   CgCounters* counters) {
  const std::size_t n = a.dim();
  std::vector<DenseVector> rhs(cols.size(), DenseVector(n, 0.0));
  for (std::size_t c = 0; c < cols.size(); ++c) rhs[c][cols[c]] = 1.0;
  const auto sols = cg_solve_many(a, rhs, rel_tol, max_iter);

  WColumns w;
  w.rows = IndexSet::range(n);
  w.cols = cols;
  w.values = DenseMatrix(n, cols.size());
  std::ostringstream failures;
  bool failed = false;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& s = sols[c];
    if (counters) {
      ++counters->solves;
      counters->matvecs += s.matvecs;
    }
    if (s.status != CgStatus::converged) {
      failed = true;
      failures << " column " << cols[c] << ": " << s.iterations << " iterations ("
               << (s.status == CgStatus::breakdown ? "breakdown" : "not converged") << ", residual "
               << s.relative_residual << ')';
      continue;
    }
    std::copy(s.x.begin(), s.x.end(), w.values.col(c).begin());
  }
  if (failed) throw NumericalError("CG failed for inverse columns:" + failures.str());
  return w;
}

PairRestriction::PairRestriction(std::size_t n, const std::vector<Pair>& upper) : adj_(n) {
  for (const auto& p : upper) {
    if (p.row >= n || p.col >= n) throw InvalidArgument("PairRestriction: index out of range");
    adj_[p.row].push_back(p.col);
    if (p.row != p.col) adj_[p.col].push_back(p.row);
  }
  for (auto& v : adj_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k : adj_[i])
      if (i <= k) ++upper_size_;
}

bool PairRestriction::contains(std::size_t i, std::size_t k) const {
  return i < adj_.size() && std::binary_search(adj_[i].begin(), adj_[i].end(), k);
}

std::vector<Pair> PairRestriction::upper() const {
  std::vector<Pair> out;
  out.reserve(upper_size_);
  for (std::size_t i = 0; i < adj_.size(); ++i)
    for (std::size_t k : adj_[i])
      if (i <= k) out.push_back({i, k});
  return out;
}

IndexSet c_neighborhood(const PairRestriction& c, const IndexSet& block) {
  std::vector<std::size_t> out;
  for (std::size_t k : block)
    for (std::size_t i : c.neighbors(k))
      if (!block.contains(i)) out.push_back(i);
  return IndexSet(std::move(out));
}

FreeSetView free_set_block(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                           const IndexSet& block, const WColumns& w, const PairRestriction* c) {
  const std::size_t n = a.dim();
  // Verify that every row the definition touches is present.
  {
    std::vector<std::size_t> missing;
    if (c) {
      for (std::size_t k : block) {
        if (!w.has_row(k)) missing.push_back(k);
        for (std::size_t i : c->neighbors(k))
          if (!w.has_row(i)) missing.push_back(i);
      }
    } else if (w.rows.size() != n) {
      for (std::size_t i = 0; i < n; ++i)
        if (!w.has_row(i)) missing.push_back(i);
    }
    for (std::size_t k : block)
      if (!w.has_col(k)) throw InvalidArgument("free_set_block: W column " + std::to_string(k) + " missing");
    if (!missing.empty()) {
      const IndexSet m(std::move(missing));
      std::ostringstream msg;
      msg << "free_set_block: W rows missing:";
      for (std::size_t i : m) msg << ' ' << i;
      throw InvalidArgument(msg.str());
    }
  }

  FreeSetView out;
  std::vector<std::pair<Pair, double>> found;
  std::vector<double> a_col(n, 0.0);
  std::vector<std::size_t> all_rows;
  if (!c) all_rows = IndexSet::range(n).ids();

  for (std::size_t kc = 0; kc < block.size(); ++kc) {
    const std::size_t k = block[kc];
    auto arows = a.col_rows(k);
    auto avals = a.col_values(k);
    for (std::size_t t = 0; t < arows.size(); ++t) a_col[arows[t]] = avals[t];
    const std::vector<double>& scol = s.column(k);
    const std::vector<std::size_t>& rows = c ? c->neighbors(k) : all_rows;
    for (std::size_t i : rows) {
      const double g = scol[i] - w.at(i, k);
      const double aik = a_col[i];
      out.subgradient_l1 += std::abs(min_norm_subgradient(g, aik, lambda));
      if (aik == 0.0 && !(std::abs(g) > lambda)) continue;
      const bool i_in = block.contains(i);
      if (i_in && i > k) continue;  // counted from column i
      found.push_back({Pair{std::min(i, k), std::max(i, k)}, g});
    }
    for (std::size_t t = 0; t < arows.size(); ++t) a_col[arows[t]] = 0.0;
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::size_t> nbr;
  out.pairs.reserve(found.size());
  out.grad.reserve(found.size());
  for (const auto& [p, g] : found) {
    out.pairs.push_back(p);
    out.grad.push_back(g);
    if (!block.contains(p.row)) nbr.push_back(p.row);
    if (!block.contains(p.col)) nbr.push_back(p.col);
  }
  out.neighborhood = IndexSet(std::move(nbr));
  return out;
}

WColumns restricted_w_rows(const SparseSymMatrix& a, const IndexSet& block, const PairRestriction& c,
                           const WColumns& w_nc) {
  const IndexSet nc = c_neighborhood(c, block);
  const std::size_t p = block.size();
  DenseMatrix rhs = DenseMatrix::identity(p);  // becomes I - K
  for (std::size_t r = 0; r < p; ++r) {
    const std::size_t i = block[r];
    auto rows = a.col_rows(i);
    auto vals = a.col_values(i);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const std::size_t q = rows[t];
      if (block.contains(q)) continue;
      if (!nc.contains(q))
        throw InvalidArgument("restricted_w_rows: A has entry (" + std::to_string(i) + "," + std::to_string(q) +
                              ") outside the restriction");
      // K(r, col) += A(i, q) * W(q, block[col]); W(q, k) is column q at row k.
      for (std::size_t col = 0; col < p; ++col) rhs(r, col) -= vals[t] * w_nc.at(block[col], q);
    }
  }
  const DenseMatrix a11 = a.principal_submatrix(block);
  auto l = cholesky_lower(a11);
  if (!l) throw NumericalError("restricted_w_rows: diagonal block of A is not positive definite");
  cholesky_solve_in_place(*l, rhs);
  const DenseMatrix w11 = rhs.symmetrized();

  WColumns out;
  out.rows = set_union(block, nc);
  out.cols = block;
  out.values = DenseMatrix(out.rows.size(), p);
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    const std::size_t i = out.rows[r];
    const std::size_t bi = block.position(i);
    for (std::size_t col = 0; col < p; ++col)
      out.values(r, col) = bi < p ? w11(bi, col) : w_nc.at(block[col], i);
  }
  return out;
}

bool BlockDelta::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::vector<Triplet> BlockDelta::triplets() const {
  std::vector<Triplet> t;
  t.reserve(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q)
    if (values[q] != 0.0) t.push_back({pairs[q].row, pairs[q].col, values[q]});
  return t;
}

LocalW local_w(const IndexSet& block, const IndexSet& nbr, const WColumns& wb, const WColumns& wn) {
  LocalW lw;
  lw.rows = set_union(block, nbr);
  const std::size_t r = lw.rows.size();
  lw.w = DenseMatrix(r, r);
  std::vector<char> in_block(r);
  for (std::size_t x = 0; x < r; ++x) in_block[x] = block.contains(lw.rows[x]) ? 1 : 0;
  for (std::size_t b = 0; b < r; ++b) {
    const std::size_t jb = lw.rows[b];
    for (std::size_t a = b; a < r; ++a) {
      const std::size_t ja = lw.rows[a];
      double v;
      if (in_block[a] && in_block[b])
        v = 0.5 * (wb.at(ja, jb) + wb.at(jb, ja));
      else if (in_block[b])
        v = wb.at(ja, jb);
      else if (in_block[a])
        v = wb.at(jb, ja);
      else
        v = 0.5 * (wn.at(ja, jb) + wn.at(jb, ja));
      lw.w(a, b) = v;
      lw.w(b, a) = v;
    }
  }
  return lw;
}

namespace {

// Hessian data shared by the operator closure.
struct BlockHessian {
  DenseMatrix w;                       // local W, |R| x |R|
  DenseMatrix wit;                     // W(block, :) as |I| x |R|
  std::vector<std::size_t> other;      // local row of the non-anchor index
  std::vector<std::size_t> anchor;     // local row of the block index
  std::vector<std::size_t> anchor_bi;  // position of the anchor within the block
  std::vector<double> weight;          // 2 off the diagonal, 1 on it

  void apply(std::span<const double> u, std::span<double> out) const {
    const std::size_t r = w.rows();
    const std::size_t p = wit.rows();
    DenseMatrix mt(p, r);  // (Delta W(:, block))^T
    for (std::size_t q = 0; q < u.size(); ++q) {
      const double v = u[q];
      if (v == 0.0) continue;
      axpy(v, wit.col(anchor[q]), mt.col(other[q]));
      if (other[q] != anchor[q]) axpy(v, wit.col(other[q]), mt.col(anchor[q]));
    }
    const DenseMatrix m = mt.transposed();  // |R| x |I|
    for (std::size_t q = 0; q < u.size(); ++q) out[q] = weight[q] * dot(w.col(other[q]), m.col(anchor_bi[q]));
  }
};

}  // namespace

lasso::QuadraticModel block_quadratic_model(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                                            const IndexSet& block, const FreeSetView& free, const LocalW& lw) {
  auto h = std::make_shared<BlockHessian>();
  h->w = lw.w;
  const std::size_t r = lw.rows.size();
  const std::size_t p = block.size();
  h->wit = DenseMatrix(p, r);
  std::vector<std::size_t> block_local(p);
  for (std::size_t c = 0; c < p; ++c) {
    block_local[c] = lw.rows.position(block[c]);
    if (block_local[c] == r) throw InvalidArgument("block_quadratic_model: block row missing from local W");
  }
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t c = 0; c < p; ++c) h->wit(c, x) = lw.w(block_local[c], x);

  const std::size_t nv = free.pairs.size();
  lasso::QuadraticModel m;
  m.hessian_diag.resize(nv);
  m.grad.resize(nv);
  m.base.resize(nv);
  m.lambda_weights.resize(nv);
  m.lambda = lambda;
  h->other.resize(nv);
  h->anchor.resize(nv);
  h->anchor_bi.resize(nv);
  h->weight.resize(nv);
  for (std::size_t q = 0; q < nv; ++q) {
    const Pair pr = free.pairs[q];
    std::size_t anchor = pr.col, other = pr.row;
    if (!block.contains(anchor)) std::swap(anchor, other);
    const std::size_t la = lw.rows.position(anchor), lo = lw.rows.position(other);
    if (la == r || lo == r) throw InvalidArgument("block_quadratic_model: free pair outside local W rows");
    h->anchor[q] = la;
    h->other[q] = lo;
    h->anchor_bi[q] = block.position(anchor);
    const bool diag = pr.row == pr.col;
    const double c = diag ? 1.0 : 2.0;
    h->weight[q] = c;
    const double wao = lw.w(lo, la);
    m.hessian_diag[q] = diag ? wao * wao : 2.0 * (lw.w(la, la) * lw.w(lo, lo) + wao * wao);
    m.grad[q] = c * (s.entry(pr.row, pr.col) - wao);
    m.base[q] = a.at(pr.row, pr.col);
    m.lambda_weights[q] = c;
  }
  m.hessian_apply = [h](std::span<const double> u, std::span<double> out) { h->apply(u, out); };
  return m;
}

NewtonResult newton_block_direction(const CovarianceOracle& s, const SparseSymMatrix& a, double lambda,
                                    const IndexSet& block, const FreeSetView& free, const WColumns& w_block,
                                    const WColumns& w_nbr, double rel_tol, std::size_t max_sweeps) {
  NewtonResult res;
  res.delta.pairs = free.pairs;
  res.delta.values.assign(free.pairs.size(), 0.0);
  if (free.pairs.empty()) {
    res.converged = true;
    return res;
  }
  const LocalW lw = local_w(block, free.neighborhood, w_block, w_nbr);
  const lasso::QuadraticModel m = block_quadratic_model(s, a, lambda, block, free, lw);
  const auto sol = lasso::pcd_cg_solve(m, IndexSet::range(m.size()), rel_tol, max_sweeps);
  res.delta.values = sol.z;
  // Targets below rounding level relative to the block's entries become
  // exact zeros; otherwise a full step leaves residue with an arbitrary sign.
  double scale = 0.0;
  for (double x : m.base) scale = std::max(scale, std::abs(x));
  for (std::size_t q = 0; q < m.size(); ++q) {
    const double x = m.base[q];
    if (std::abs(x + res.delta.values[q]) <= 1e-12 * scale) res.delta.values[q] = -x;
  }
  res.sweeps = sol.sweeps;
  res.hessian_applies = sol.hessian_applies;
  res.converged = sol.converged;
  return res;
}

LinesearchMats linesearch_matrices(const IndexSet& block, const BlockDelta& delta, const WColumns& wb,
                                   const WColumns& wn) {
  const std::size_t p = block.size();
  std::vector<std::size_t> nd_ids;
  for (std::size_t q = 0; q < delta.pairs.size(); ++q) {
    if (delta.values[q] == 0.0) continue;
    if (!block.contains(delta.pairs[q].row)) nd_ids.push_back(delta.pairs[q].row);
    if (!block.contains(delta.pairs[q].col)) nd_ids.push_back(delta.pairs[q].col);
  }
  const IndexSet nd(std::move(nd_ids));
  const std::size_t k = nd.size();

  DenseMatrix w11(p, p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t r = 0; r < p; ++r) w11(r, c) = 0.5 * (wb.at(block[r], block[c]) + wb.at(block[c], block[r]));
  LinesearchMats mats;
  {
    auto l = cholesky_lower(w11);
    if (!l) throw NumericalError("linesearch_matrices: W11 is not positive definite (stale W columns?)");
    mats.b0 = DenseMatrix::identity(p);
    cholesky_solve_in_place(*l, mats.b0);
    mats.b0 = mats.b0.symmetrized();
  }

  DenseMatrix d11(p, p), d21(k, p);
  for (std::size_t q = 0; q < delta.pairs.size(); ++q) {
    const double v = delta.values[q];
    if (v == 0.0) continue;
    const Pair pr = delta.pairs[q];
    const std::size_t br = block.position(pr.row), bc = block.position(pr.col);
    if (br < p && bc < p) {
      d11(br, bc) = v;
      d11(bc, br) = v;
    } else if (bc < p) {
      d21(nd.position(pr.row), bc) = v;
    } else if (br < p) {
      d21(nd.position(pr.col), br) = v;
    } else {
      throw InvalidArgument("linesearch_matrices: delta entry does not touch the block");
    }
  }
  if (k == 0) {
    mats.b1 = d11;
    mats.b2 = DenseMatrix(p, p);
    return mats;
  }
  DenseMatrix w21(k, p), w22(k, k);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t r = 0; r < k; ++r) w21(r, c) = wb.at(nd[r], block[c]);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) w22(r, c) = 0.5 * (wn.at(nd[r], nd[c]) + wn.at(nd[c], nd[r]));

  const DenseMatrix d12 = d21.transposed();
  const DenseMatrix pm = d12 * w21;  // Delta12 W21
  const DenseMatrix t = pm * mats.b0;
  mats.b1 = (d11 + t + t.transposed()).symmetrized();
  // B2 = -Delta12 A22^{-1} Delta21 with A22^{-1} = W22 - W21 B0 W21^T.
  mats.b2 = (t * pm.transposed() - d12 * (w22 * d21)).symmetrized();
  return mats;
}

namespace {

struct DeltaTerms {
  std::vector<double> s;  // S at each pair
  std::vector<double> x;  // current A at each pair
  std::vector<double> c;  // pair weight
  double logdet_b0 = 0.0;
};

DeltaTerms delta_terms(const CovarianceOracle& s, const SparseSymMatrix& a, const BlockDelta& delta,
                       const LinesearchMats& mats) {
  DeltaTerms t;
  const std::size_t nv = delta.pairs.size();
  t.s.resize(nv);
  t.x.resize(nv);
  t.c.resize(nv);
  for (std::size_t q = 0; q < nv; ++q) {
    const Pair pr = delta.pairs[q];
    t.s[q] = s.entry(pr.row, pr.col);
    t.x[q] = a.at(pr.row, pr.col);
    t.c[q] = pr.row == pr.col ? 1.0 : 2.0;
  }
  const LogDet ld = dense_chol_logdet(mats.b0);
  if (!ld.pd) throw NumericalError("block line search: B0 is not positive definite");
  t.logdet_b0 = ld.logdet;
  return t;
}

std::optional<BlockStep> eval_delta(const DeltaTerms& t, const BlockDelta& delta, const LinesearchMats& mats,
                                    double lambda, double alpha) {
  DenseMatrix b = mats.b0;
  auto bd = b.data();
  auto b1 = mats.b1.data();
  auto b2 = mats.b2.data();
  for (std::size_t e = 0; e < bd.size(); ++e) bd[e] += alpha * b1[e] + alpha * alpha * b2[e];
  b = b.symmetrized();
  const LogDet ld = dense_chol_logdet(b);
  if (!ld.pd) return std::nullopt;
  BlockStep st;
  st.alpha = alpha;
  double tr = 0.0, l1 = 0.0;
  for (std::size_t q = 0; q < delta.pairs.size(); ++q) {
    const double u = delta.values[q];
    if (u == 0.0) continue;
    tr += t.c[q] * t.s[q] * u;
    l1 += t.c[q] * (std::abs(t.x[q] + alpha * u) - std::abs(t.x[q]));
  }
  st.d_smooth = -(ld.logdet - t.logdet_b0) + alpha * tr;
  st.d_l1 = l1;
  st.objective_delta = st.d_smooth + lambda * st.d_l1;
  return st;
}

}  // namespace

std::optional<BlockStep> block_objective_delta(const CovarianceOracle& s, const SparseSymMatrix& a,
                                               const BlockDelta& delta, const LinesearchMats& mats, double lambda,
                                               double alpha) {
  const DeltaTerms t = delta_terms(s, a, delta, mats);
  return eval_delta(t, delta, mats, lambda, alpha);
}

BlockStep block_linesearch(const CovarianceOracle& s, const SparseSymMatrix& a, const BlockDelta& delta,
                           const LinesearchMats& mats, double lambda, double smooth, double l1, double beta,
                           std::size_t max_trials) {
  BlockStep none;
  if (delta.is_zero()) {
    none.accepted = false;
    return none;
  }
  const DeltaTerms t = delta_terms(s, a, delta, mats);
  std::vector<BlockStep> seen;
  auto eval = [&](double alpha) -> std::optional<double> {
    auto st = eval_delta(t, delta, mats, lambda, alpha);
    if (!st) return std::nullopt;
    seen.push_back(*st);
    return (smooth + st->d_smooth) + lambda * (l1 + st->d_l1);
  };
  try {
    const auto ls = lasso::sampled_linesearch(eval, smooth + lambda * l1, beta, 1.0, max_trials);
    for (const auto& st : seen)
      if (st.alpha == ls.alpha) {
        BlockStep out = st;
        out.accepted = true;
        out.trials = ls.trials;
        return out;
      }
  } catch (const StagnationError&) {
  }
  none.trials = max_trials;
  return none;
}

}  // namespace mlsparse::covsel
