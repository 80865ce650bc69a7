// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// below and are not tuned per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mlsparse/covsel/block_ops.hpp"
#include "mlsparse/covsel/strategies.hpp"
#include "mlsparse/datagen/generators.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/lasso/lasso_problem.hpp"
#include "mlsparse/logreg/objective.hpp"
#include "mlsparse/logreg/solvers.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "mlsparse/ml/hierarchy.hpp"
#include "oracles/oracles.hpp"

using namespace mlsparse;

namespace {

// ---- pinned tolerances ----
constexpr double kLassoObjRel = 1e-6;        // criterion 1
constexpr double kLassoTimeSec = 10.0;       // criterion 1
constexpr double kMlExactAbs = 1e-8;         // criterion 2
constexpr double kCovObjRel = 1e-4;          // criterion 4
constexpr double kCovSupportRel = 0.02;      // criterion 4
constexpr double kCovTimeSec = 300.0;        // criterion 4
constexpr double kWorkRatio = 0.8;           // criterion 6
constexpr double kSchurRel = 1e-9;           // criterion 7
constexpr double kRestrictedAbs = 1e-6;      // criterion 8
constexpr double kGradRel = 1e-5;            // criterion 9
constexpr double kLogregObjRel = 1e-4;       // criterion 10
constexpr double kCovKktFactor = 5e-3;       // criterion 11
constexpr double kCovConvergence = 0.05;     // criterion 12

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Objective increases seen in any trace produced by this binary.
std::size_t g_trace_increases = 0;
std::size_t g_contract_errors = 0;

void audit_trace(const ml::Trace& t) {
  for (std::size_t k = 1; k < t.rows().size(); ++k)
    if (t.rows()[k].objective > t.rows()[k - 1].objective) ++g_trace_increases;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------- LASSO

struct LassoInstance {
  oracle::Mat h;
  oracle::Vec c;
  double lam = 0.0;
};

lasso::LassoProblem to_problem(const LassoInstance& in) {
  return lasso::LassoProblem(oracle::from_eigen(in.h), DenseVector(in.c.data(), in.c.data() + in.c.size()),
                             in.lam);
}

Outcome criterion1() {
  Rng rng(101);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(49);
    LassoInstance in;
    in.h = oracle::random_spd(n, rng, 0.3, 6.0);
    in.c = oracle::Vec(n);
    for (std::size_t i = 0; i < n; ++i) in.c(i) = 2.0 * rng.normal();
    in.lam = rng.uniform(0.1, 1.0);
    const auto opt = oracle::lasso_minimize(in.h, in.c, in.lam);
    const lasso::LassoProblem p = to_problem(in);
    auto rel = [&](double f) {
      const double d = std::abs(f - opt.objective);
      return opt.objective == 0.0 ? (d == 0.0 ? 0.0 : 1.0) : d / std::abs(opt.objective);
    };
    // pcd_cg on the exact model from zero.
    const auto res = lasso::pcd_cg_solve(p.model_at(DenseVector(n, 0.0)), IndexSet::range(n), 1e-12, 10000);
    const double e1 = rel(p.objective(res.z));
    // Shrinkage-step iteration (pcd and ssf steps with the line search).
    double e2 = 0.0;
    for (lasso::StepKind kind : {lasso::StepKind::pcd, lasso::StepKind::ssf}) {
      lasso::LassoRelaxOptions o;
      o.kind = kind;
      lasso::LassoRelaxation r(p, DenseVector(n, 0.0), o);
      const double stop = 1e-6 * r.reference_subgradient_l1();
      const auto out = ml::solve_plain(r, 200000, [&] { return r.subgradient_l1() <= stop; });
      audit_trace(out.trace);
      e2 = std::max(e2, rel(r.objective()));
    }
    const double e = std::max(e1, e2);
    worst = std::max(worst, e);
    if (!(e <= kLassoObjRel)) ++bad;
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kLassoTimeSec,
          "200 instances, worst rel objective gap " + fmt("%.2e", worst) + ", failures " + std::to_string(bad) +
              ", " + fmt("%.2f", secs) + " s"};
}

Outcome criterion2() {
  Rng rng(202);
  double worst = 0.0;
  std::size_t precondition_fail = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng.below(41);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, n / 3));
    LassoInstance in;
    in.h = oracle::random_spd(n, rng, 0.5, 4.0);
    in.lam = rng.uniform(0.2, 1.5);
    // Planted minimizer x* with strict complementarity off the support.
    oracle::Vec xs = oracle::Vec::Zero(n), sgn = oracle::Vec::Zero(n);
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(ids[i], ids[i + rng.below(n - i)]);
    for (std::size_t i = 0; i < k; ++i) {
      xs(ids[i]) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
      sgn(ids[i]) = xs(ids[i]) > 0 ? 1.0 : -1.0;
    }
    for (std::size_t i = k; i < n; ++i) sgn(ids[i]) = rng.uniform(-0.8, 0.8);
    in.c = -(in.h * xs) - in.lam * sgn;
    const lasso::LassoProblem p = to_problem(in);

    // Start with the right support (plus a few extra variables) but wrong values.
    DenseVector x0(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) x0[ids[i]] = rng.normal();
    for (std::size_t i = k; i < std::min(n, k + 2); ++i) x0[ids[i]] = 0.1 * rng.normal() + 0.01;
    lasso::LassoRelaxOptions o;
    o.kind = lasso::StepKind::pcd_cg;
    o.inner_tol = 1e-14;
    o.inner_sweeps = 20000;
    lasso::LassoRelaxation r(p, x0, o);
    r.set_coarse_tol(1e-14);

    const auto cin = r.coarsening_input();
    const auto h = ml::build_hierarchy(cin.magnitudes, cin.support, 0.5);
    std::vector<std::size_t> supp;
    for (std::size_t i = 0; i < k; ++i) supp.push_back(ids[i]);
    if (!is_subset(IndexSet(supp), h.levels.back()) || h.depth() == 0) ++precondition_fail;

    ml::MLConfig cfg;
    cfg.nu = 1;
    cfg.nu_coarse = 100;  // exact coarsest solve
    const auto before = r.objective();
    ml::ml_cycle(r, cfg);
    if (r.objective() > before) ++g_trace_increases;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(r.x()[i] - xs(i)));
  }
  return {precondition_fail == 0 && worst <= kMlExactAbs,
          "50 instances with C_L covering supp(x*), max |x - x*| after one cycle " + fmt("%.2e", worst) +
              (precondition_fail ? ", precondition failures " + std::to_string(precondition_fail) : "")};
}

// ---------------------------------------------------------------- covariance selection

struct CovInstance {
  std::size_t n_points = 0;
  double lambda = 0.0;
  std::shared_ptr<SampleMatrix> y;
  std::vector<covsel::SolveResult> runs;  // bcd, ml-bcd, continuation, dc
};

constexpr std::uint64_t kGraphSeed = 7;

struct CovData {
  std::vector<CovInstance> instances;
  double seconds = 0.0;
  std::vector<std::string> errors;
};

const CovData& cov_data() {
  static CovData data = [] {
    CovData d;
    const auto t0 = Clock::now();
    for (std::size_t n : {300, 800}) {
      const auto g = datagen::random_planar_laplacian({n, kGraphSeed});
      auto y = std::make_shared<SampleMatrix>(
          normalize_rows(datagen::sample_from_precision(g.precision, 200, derive_seed(kGraphSeed, 1))));
      for (double lam : {0.55, 0.60, 0.65, 0.70}) {
        CovInstance inst;
        inst.n_points = n;
        inst.lambda = lam;
        inst.y = y;
        const covsel::CovselProblem p(y, lam);
        for (auto s : {covsel::Strategy::bcd, covsel::Strategy::ml_bcd, covsel::Strategy::continuation,
                       covsel::Strategy::dc}) {
          try {
            inst.runs.push_back(covsel::solve(s, p, SparseSymMatrix{}, covsel::SolveConfig{}));
            audit_trace(inst.runs.back().report.trace);
          } catch (const ContractViolation& e) {
            ++g_contract_errors;
            d.errors.push_back(e.what());
          } catch (const Error& e) {
            d.errors.push_back(covsel::to_string(s) + ": " + e.what());
          }
        }
        d.instances.push_back(std::move(inst));
      }
    }
    d.seconds = seconds_since(t0);
    return d;
  }();
  return data;
}

std::string cov_name(const CovInstance& c) {
  std::ostringstream s;
  s << "n=" << c.n_points << " lam=" << c.lambda;
  return s.str();
}

Outcome criterion4() {
  const CovData& d = cov_data();
  bool ok = d.errors.empty();
  double worst_obj = 0.0, worst_supp = 0.0;
  std::size_t unconverged = 0;
  for (const auto& inst : d.instances) {
    if (inst.runs.size() != 4) {
      ok = false;
      continue;
    }
    for (const auto& a : inst.runs) {
      if (!a.report.converged) ++unconverged;
      for (const auto& b : inst.runs) {
        const double ro = std::abs(a.report.objective - b.report.objective) / std::abs(b.report.objective);
        const double sa = static_cast<double>(a.report.support), sb = static_cast<double>(b.report.support);
        worst_obj = std::max(worst_obj, ro);
        worst_supp = std::max(worst_supp, std::abs(sa - sb) / std::max(sa, sb));
      }
    }
  }
  ok = ok && unconverged == 0 && worst_obj <= kCovObjRel && worst_supp <= kCovSupportRel && d.seconds < kCovTimeSec;
  std::string detail = "8 instances x 4 strategies, worst rel objective " + fmt("%.2e", worst_obj) +
                       ", worst support diff " + fmt("%.2f%%", 100 * worst_supp) + ", unconverged " +
                       std::to_string(unconverged) + ", " + fmt("%.1f", d.seconds) + " s";
  for (const auto& e : d.errors) detail += "; error: " + e;
  return {ok, detail};
}

Outcome criterion5() {
  const CovData& d = cov_data();
  bool ok = d.errors.empty();
  std::size_t low = 0, strict = 0;
  std::string detail;
  for (const auto& inst : d.instances) {
    if (inst.runs.size() != 4) continue;
    const std::size_t bcd = inst.runs[0].report.max_support, mlb = inst.runs[1].report.max_support;
    detail += cov_name(inst) + ": " + std::to_string(mlb) + " vs " + std::to_string(bcd) + "; ";
    if (mlb > bcd) ok = false;
    if (inst.lambda < 0.62) {
      ++low;
      if (mlb < bcd) ++strict;
    }
  }
  ok = ok && 2 * strict >= low && low == 4;
  return {ok, "ML-BCD vs BCD max support: " + detail + "strictly smaller on " + std::to_string(strict) + "/" +
                  std::to_string(low) + " low-lambda instances"};
}

Outcome criterion6() {
  const CovData& d = cov_data();
  bool ok = d.errors.empty();
  std::string detail;
  std::size_t seen = 0;
  for (const auto& inst : d.instances) {
    if (inst.lambda != 0.55 || inst.runs.size() != 4) continue;
    ++seen;
    const double bcd = static_cast<double>(inst.runs[0].report.counters.cg.matvecs);
    const double mlb = static_cast<double>(inst.runs[1].report.counters.cg.matvecs);
    detail += cov_name(inst) + ": " + fmt("%.0f", mlb) + " / " + fmt("%.0f", bcd) + " = " + fmt("%.2f", mlb / bcd) +
              " (verification " + std::to_string(inst.runs[1].report.counters.verify.matvecs) + " / " +
              std::to_string(inst.runs[0].report.counters.verify.matvecs) + "); ";
    if (!(mlb <= kWorkRatio * bcd)) ok = false;
  }
  return {ok && seen == 2, "ML-BCD / BCD CG matvecs: " + detail};
}

Outcome criterion11_cov(std::string& detail) {
  const CovData& d = cov_data();
  bool ok = true;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& inst : d.instances) {
    const oracle::Mat s = oracle::sample_covariance(*inst.y);
    for (const auto& r : inst.runs) {
      if (!r.report.converged) continue;
      ++checked;
      const oracle::Mat a = oracle::to_eigen(r.state.a());
      const double sub = oracle::covsel_subgradient_l1(s, a, inst.lambda);
      const double bound = kCovKktFactor * a.cwiseAbs().sum();
      worst = std::max(worst, sub / bound);
      if (!(sub < bound)) ok = false;
    }
  }
  detail += "covsel " + std::to_string(checked) + " runs, worst subgrad/bound " + fmt("%.3f", worst);
  return {ok && checked > 0, ""};
}

Outcome criterion7() {
  Rng rng(707);
  double worst_b = 0.0, worst_f = 0.0;
  std::size_t feas_mismatch = 0, compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng.below(41);
    const std::size_t bsize = 1 + rng.below(8);
    const SparseSymMatrix a = oracle::random_sparse_spd(n, 3.0 / static_cast<double>(n), rng);
    const oracle::Mat ad = oracle::to_eigen(a);
    const oracle::Mat wd = ad.inverse();
    auto ysmp = std::make_shared<SampleMatrix>(oracle::random_samples(n, n + 20, rng));
    const covsel::CovarianceOracle s(ysmp);
    const oracle::Mat sd = oracle::sample_covariance(*ysmp);
    const double lam = rng.uniform(0.05, 0.5);

    std::vector<std::size_t> ids;
    while (ids.size() < bsize) {
      const std::size_t i = rng.below(n);
      if (std::find(ids.begin(), ids.end(), i) == ids.end()) ids.push_back(i);
    }
    const IndexSet block(ids);
    covsel::BlockDelta delta;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    oracle::Mat dd = oracle::Mat::Zero(n, n);
    std::vector<std::size_t> touched;
    const std::size_t entries = 1 + rng.below(3 * bsize + 2);
    for (std::size_t e = 0; e < entries; ++e) {
      const std::size_t k = block[rng.below(bsize)], i = rng.below(n);
      const Pair p{std::min(i, k), std::max(i, k)};
      if (!seen.insert({p.row, p.col}).second) continue;
      const double v = 0.3 * rng.normal();
      delta.pairs.push_back(p);
      delta.values.push_back(v);
      dd(p.row, p.col) = dd(p.col, p.row) = v;
      touched.push_back(p.row);
      touched.push_back(p.col);
    }
    std::sort(delta.pairs.begin(), delta.pairs.end());
    // Values must follow the sorted pairs.
    for (std::size_t q = 0; q < delta.pairs.size(); ++q) delta.values[q] = dd(delta.pairs[q].row, delta.pairs[q].col);
    const IndexSet nd = set_difference(IndexSet(touched), block);

    auto exact_w = [&](const IndexSet& cols) {
      covsel::WColumns w;
      w.rows = IndexSet::range(n);
      w.cols = cols;
      w.values = DenseMatrix(n, cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) w.values(r, c) = wd(r, cols[c]);
      return w;
    };
    const auto mats = covsel::linesearch_matrices(block, delta, exact_w(block), exact_w(nd));
    const auto o = oracle::schur_blocks(ad, dd, block.ids());
    auto relb = [](const DenseMatrix& m, const oracle::Mat& ref) {
      const double scale = ref.norm();
      const double diff = (oracle::to_eigen(m) - ref).norm();
      return scale == 0.0 ? diff : diff / scale;
    };
    worst_b = std::max({worst_b, relb(mats.b0, o.b0), relb(mats.b1, o.b1), relb(mats.b2, o.b2)});

    const double f0 = oracle::covsel_objective(sd, ad, lam);
    for (double alpha : {1.0, 0.5, 0.25}) {
      const auto step = covsel::block_objective_delta(s, a, delta, mats, lam, alpha);
      const double f1 = oracle::covsel_objective(sd, ad + alpha * dd, lam);
      if (std::isinf(f1) != !step.has_value()) {
        ++feas_mismatch;
        continue;
      }
      if (!step) continue;
      ++compared;
      const double want = f1 - f0;
      worst_f = std::max(worst_f, std::abs(step->objective_delta - want) / std::abs(want));
    }
  }
  return {worst_b <= kSchurRel && worst_f <= kSchurRel && feas_mismatch == 0 && compared > 150,
          "100 instances, worst rel B_i error " + fmt("%.2e", worst_b) + ", worst rel objective-delta error " +
              fmt("%.2e", worst_f) + " over " + std::to_string(compared) + " steps, feasibility mismatches " +
              std::to_string(feas_mismatch)};
}

Outcome criterion8() {
  Rng rng(808);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 30 + rng.below(171);
    const SparseSymMatrix a = oracle::random_sparse_spd(n, 4.0 / static_cast<double>(n), rng);
    std::vector<Pair> upper;
    for (const auto& t : a.upper_triplets()) upper.push_back({std::min(t.row, t.col), std::max(t.row, t.col)});
    for (std::size_t e = 0; e < n; ++e) {
      const std::size_t i = rng.below(n), k = rng.below(n);
      upper.push_back({std::min(i, k), std::max(i, k)});
    }
    std::sort(upper.begin(), upper.end());
    upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
    const covsel::PairRestriction c(n, upper);
    std::vector<std::size_t> ids;
    const std::size_t bsize = 1 + rng.below(16);
    while (ids.size() < bsize) {
      const std::size_t i = rng.below(n);
      if (std::find(ids.begin(), ids.end(), i) == ids.end()) ids.push_back(i);
    }
    const IndexSet block(ids);
    const IndexSet nc = covsel::c_neighborhood(c, block);
    const auto w = covsel::restricted_w_rows(a, block, c, covsel::w_columns(a, nc, 1e-10));
    const auto ref = covsel::w_columns(a, block, 1e-10);
    for (std::size_t r : w.rows)
      for (std::size_t k : block) worst = std::max(worst, std::abs(w.at(r, k) - ref.at(r, k)));
  }
  return {worst <= kRestrictedAbs, "50 instances, max |W_restricted - W_cg| " + fmt("%.2e", worst)};
}

Outcome criterion9() {
  Rng rng(909);
  double worst_cov = 0.0, worst_lr = 0.0;
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng.below(21);
    const SparseSymMatrix a = oracle::random_sparse_spd(n, 0.3, rng);
    auto ysmp = std::make_shared<SampleMatrix>(oracle::random_samples(n, 2 * n, rng));
    const covsel::CovarianceOracle s(ysmp);
    const oracle::Mat sd = oracle::sample_covariance(*ysmp);
    const oracle::Mat ad = oracle::to_eigen(a);
    // Library gradient S - W over every pair (lambda tiny makes every pair free).
    double max_fd = 0.0, max_diff = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const IndexSet block{k};
      const auto w = covsel::w_columns(a, block, 1e-13);
      const auto view = covsel::free_set_block(s, a, 1e-300, block, w);
      for (std::size_t q = 0; q < view.pairs.size(); ++q) {
        const Pair p = view.pairs[q];
        oracle::Mat e = oracle::Mat::Zero(n, n);
        e(p.row, p.col) = e(p.col, p.row) = 1.0;
        const double fd = (oracle::covsel_smooth(sd, ad + h * e) - oracle::covsel_smooth(sd, ad - h * e)) / (2 * h);
        const double lib = (p.row == p.col ? 1.0 : 2.0) * view.grad[q];
        max_fd = std::max(max_fd, std::abs(fd));
        max_diff = std::max(max_diff, std::abs(fd - lib));
      }
    }
    worst_cov = std::max(worst_cov, max_diff / max_fd);

    const auto syn = datagen::synth_logreg(20 + rng.below(30), 50 + rng.below(100), 0.2, rng.next_u64());
    const logreg::LabeledDataset d = syn.data.with_bias(trial % 2 == 1);
    const oracle::DenseLogreg o = oracle::dense_logreg(d);
    logreg::LogRegModel m{DenseVector(d.dim()), rng.uniform(0.1, 2.0)};
    for (auto& v : m.w) v = rng.uniform() < 0.5 ? rng.normal() : 0.0;
    const auto lg = logreg::loss_grad(m, d);
    oracle::Vec w = oracle::to_eigen(m.w);
    double lfd = 0.0, ldiff = 0.0;
    for (std::size_t j = 0; j < d.dim(); ++j) {
      oracle::Vec wp = w, wm = w;
      wp(j) += h;
      wm(j) -= h;
      const double fd = (oracle::logreg_loss(o, m.C, wp) - oracle::logreg_loss(o, m.C, wm)) / (2 * h);
      lfd = std::max(lfd, std::abs(fd));
      ldiff = std::max(ldiff, std::abs(fd - lg.grad[j]));
    }
    worst_lr = std::max(worst_lr, ldiff / lfd);
  }
  return {worst_cov <= kGradRel && worst_lr <= kGradRel,
          "20+20 instances, worst rel error covsel " + fmt("%.2e", worst_cov) + ", logreg " + fmt("%.2e", worst_lr)};
}

// ---------------------------------------------------------------- logistic regression

struct LogregData {
  datagen::SynthLogreg syn;
  logreg::TrainConfig cfg;
  std::vector<logreg::TrainResult> runs;  // cdn, ml-cdn, glmnet, ml-glmnet
  std::vector<std::string> errors;
};

const LogregData& logreg_data() {
  static LogregData data = [] {
    LogregData d;
    d.syn = datagen::synth_logreg(2000, 5000, 0.01, 7);
    d.cfg.C = 0.1;
    for (auto a : {logreg::Algorithm::cdn, logreg::Algorithm::ml_cdn, logreg::Algorithm::glmnet,
                   logreg::Algorithm::ml_glmnet}) {
      try {
        d.runs.push_back(logreg::train(d.syn.data, a, d.cfg));
        audit_trace(d.runs.back().report.trace);
      } catch (const ContractViolation& e) {
        ++g_contract_errors;
        d.errors.push_back(e.what());
      } catch (const Error& e) {
        d.errors.push_back(logreg::to_string(a) + ": " + e.what());
      }
    }
    return d;
  }();
  return data;
}

Outcome criterion10() {
  const LogregData& d = logreg_data();
  bool ok = d.errors.empty() && d.runs.size() == 4;
  double worst = 0.0;
  std::string detail;
  for (const auto& a : d.runs) {
    ok = ok && a.report.converged;
    detail += logreg::to_string(a.report.algorithm) + " " + std::to_string(a.report.iterations) + " it, ";
    for (const auto& b : d.runs)
      worst = std::max(worst, std::abs(a.report.objective - b.report.objective) / b.report.objective);
  }
  if (d.runs.size() == 4) ok = ok && d.runs[1].report.iterations < d.runs[0].report.iterations;
  ok = ok && worst <= kLogregObjRel;
  for (const auto& e : d.errors) detail += "error: " + e + ", ";
  return {ok, "n=2000 m=5000 C=0.1: " + detail + "worst rel objective " + fmt("%.2e", worst)};
}

Outcome criterion11() {
  std::string detail;
  const Outcome cov = criterion11_cov(detail);
  const LogregData& d = logreg_data();
  const oracle::DenseLogreg o = oracle::dense_logreg(d.syn.data);
  const double ref = oracle::logreg_subgradient_l1(o, d.cfg.C, oracle::Vec::Zero(d.syn.data.dim()));
  const double frac = static_cast<double>(std::min(d.syn.data.positives(), d.syn.data.negatives())) /
                      static_cast<double>(d.syn.data.samples());
  const double bound = d.cfg.eps * frac * ref;
  bool ok = cov.pass;
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& r : d.runs) {
    if (!r.report.converged) continue;
    ++checked;
    const double sub = oracle::logreg_subgradient_l1(o, d.cfg.C, oracle::to_eigen(r.model.w));
    worst = std::max(worst, sub / bound);
    if (!(sub < bound)) ok = false;
  }
  detail += "; logreg " + std::to_string(checked) + " runs, worst subgrad/bound " + fmt("%.3f", worst);
  return {ok && checked > 0, detail};
}

// ---------------------------------------------------------------- data generator

Outcome criterion12() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {300, 800, 2000}) {
    const auto g = datagen::random_planar_laplacian({n, kGraphSeed});
    const oracle::Mat p = oracle::to_eigen(g.precision);
    const bool pd = Eigen::LLT<oracle::Mat>(p).info() == Eigen::Success &&
                    Eigen::SelfAdjointEigenSolver<oracle::Mat>(p).eigenvalues().minCoeff() > 0.0;
    const double degree = p.diagonal().mean();
    ok = ok && pd && degree >= 5.5 && degree <= 7.0;
    detail += "n=" + std::to_string(n) + " kept " + std::to_string(g.kept.size()) + (pd ? " PD" : " not PD") +
              " mean degree " + fmt("%.2f", degree) + "; ";
  }
  const auto g = datagen::random_planar_laplacian({300, kGraphSeed});
  const SampleMatrix y = datagen::sample_from_precision(g.precision, 100000, derive_seed(kGraphSeed, 1));
  const oracle::Mat s = oracle::sample_covariance(y);
  const oracle::Mat truth = oracle::to_eigen(g.precision).inverse();
  const double err = (s - truth).norm() / truth.norm();
  ok = ok && err < kCovConvergence;
  detail += "covariance rel error at m=100000: " + fmt("%.4f", err);
  return {ok, detail};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> plan{
      {1, criterion1}, {2, criterion2},  {4, criterion4},   {5, criterion5},   {6, criterion6},   {7, criterion7},
      {8, criterion8}, {9, criterion9},  {10, criterion10}, {11, criterion11}, {12, criterion12},
  };
  std::vector<Outcome> results(13);
  for (auto& [id, fn] : plan) {
    try {
      results[static_cast<std::size_t>(id)] = fn();
    } catch (const ContractViolation& e) {
      ++g_contract_errors;
      results[static_cast<std::size_t>(id)] = {false, std::string("contract violation: ") + e.what()};
    } catch (const std::exception& e) {
      results[static_cast<std::size_t>(id)] = {false, std::string("exception: ") + e.what()};
    }
  }
  const std::size_t violations = ml::monotonicity_violations().load();
  results[3] = {violations == 0 && g_trace_increases == 0 && g_contract_errors == 0,
                "monotonicity counter " + std::to_string(violations) + ", trace increases " +
                    std::to_string(g_trace_increases) + ", contract errors " + std::to_string(g_contract_errors)};
  int failed = 0;
  for (int id = 1; id <= 12; ++id) {
    const Outcome& o = results[static_cast<std::size_t>(id)];
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
