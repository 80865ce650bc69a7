#include <gtest/gtest.h>

#include <cmath>

#include "mlsparse/datagen/generators.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/logreg/objective.hpp"
#include "mlsparse/logreg/solvers.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "oracles/oracles.hpp"

using namespace mlsparse;
using namespace mlsparse::logreg;

namespace {

DenseVector random_weights(Rng& rng, std::size_t n) {
  DenseVector w(n);
  for (auto& v : w) v = rng.uniform() < 0.3 ? rng.normal() : 0.0;
  return w;
}

}  // namespace

TEST(LogregObjective, StableLogistic) {
  EXPECT_NEAR(log1p_exp_neg(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(log1p_exp_neg(-800.0), 800.0, 1e-9);
  EXPECT_NEAR(log1p_exp_neg(800.0), 0.0, 1e-300);
  EXPECT_NEAR(sigmoid(0.0), 0.5, 1e-15);
}

TEST(LogregObjective, LossAndGradientMatchOracle) {
  for (bool bias : {false, true}) {
    const auto s = datagen::synth_logreg(40, 120, 0.1, 3);
    const LabeledDataset d = s.data.with_bias(bias);
    const oracle::DenseLogreg o = oracle::dense_logreg(d);
    Rng rng(1);
    const LogRegModel m{random_weights(rng, d.dim()), 0.7};
    const LossGrad lg = loss_grad(m, d);
    const oracle::Vec w = oracle::to_eigen(m.w);
    EXPECT_NEAR(lg.loss, oracle::logreg_loss(o, 0.7, w), 1e-10);
    const oracle::Vec g = oracle::logreg_gradient(o, 0.7, w);
    for (std::size_t j = 0; j < d.dim(); ++j) EXPECT_NEAR(lg.grad[j], g(j), 1e-10);
    EXPECT_NEAR(objective(m, d), oracle::logreg_objective(o, 0.7, w), 1e-10);
    EXPECT_NEAR(subgradient_l1(m.w, lg.grad, d), oracle::logreg_subgradient_l1(o, 0.7, w), 1e-9);
  }
}

TEST(LogregObjective, HessianApplyMatchesDense) {
  const auto s = datagen::synth_logreg(30, 80, 0.1, 4);
  const oracle::DenseLogreg o = oracle::dense_logreg(s.data);
  Rng rng(2);
  const LogRegModel m{random_weights(rng, 30), 1.3};
  const IndexSet sub{0, 3, 4, 10, 29};
  const HessianQuantities hq = hessian_quantities(m, s.data, sub);
  const oracle::Vec marg = o.y.cwiseProduct(o.x * oracle::to_eigen(m.w));
  oracle::Vec dd(marg.size());
  for (Eigen::Index i = 0; i < marg.size(); ++i) {
    const double t = 1.0 / (1.0 + std::exp(-marg(i)));
    dd(i) = t * (1 - t);
  }
  const oracle::Mat h = 1.3 * o.x.transpose() * dd.asDiagonal() * o.x;
  std::vector<double> v(sub.size()), out(sub.size());
  for (auto& x : v) x = rng.normal();
  hq.apply(v, out);
  for (std::size_t a = 0; a < sub.size(); ++a) {
    double want = 0.0;
    for (std::size_t b = 0; b < sub.size(); ++b) want += h(sub[a], sub[b]) * v[b];
    EXPECT_NEAR(out[a], want, 1e-10);
    EXPECT_NEAR(hq.diag[a] * 1.0, h(sub[a], sub[a]), 1e-10);
  }
}

TEST(LogregObjective, Prediction) {
  const LogRegModel m{{1.0, -2.0, 0.5}, 1.0};
  const std::vector<LabeledDataset::Entry> x{{0, 1.0}, {1, 1.0}};
  const Prediction p = predict(m, x, true);
  EXPECT_NEAR(p.probability, sigmoid(-0.5), 1e-15);
  EXPECT_EQ(p.label, -1);
}

TEST(LogregDataset, Validation) {
  EXPECT_THROW(LabeledDataset(2, {{{0, 1.0}}}, {2}), InvalidArgument);
  EXPECT_THROW(LabeledDataset(2, {{{5, 1.0}}}, {1}), InvalidArgument);
}

TEST(LogregSolvers, CdnEpochIsMonotone) {
  const auto s = datagen::synth_logreg(100, 300, 0.05, 5);
  LogRegState st(s.data, 1.0);
  TrainConfig cfg;
  double prev = st.objective();
  for (int e = 0; e < 10; ++e) {
    cdn_epoch(st, cfg);
    EXPECT_LE(st.objective(), prev);
    prev = st.objective();
  }
  const oracle::DenseLogreg o = oracle::dense_logreg(s.data);
  EXPECT_NEAR(st.objective(), oracle::logreg_objective(o, 1.0, oracle::to_eigen(st.w())), 1e-8 * prev);
}

TEST(LogregSolvers, AllAlgorithmsAgreeAndMeetStopRule) {
  for (bool bias : {false, true}) {
    const auto s = datagen::synth_logreg(200, 400, 0.05, 6);
    const LabeledDataset d = s.data.with_bias(bias);
    const oracle::DenseLogreg o = oracle::dense_logreg(d);
    TrainConfig cfg;
    cfg.C = 0.5;
    cfg.eps = 1e-4;
    const double ref = oracle::logreg_subgradient_l1(o, cfg.C, oracle::Vec::Zero(d.dim()));
    const double frac = static_cast<double>(std::min(d.positives(), d.negatives())) / d.samples();
    const auto before = ml::monotonicity_violations().load();
    std::vector<double> objs;
    for (Algorithm a : {Algorithm::cdn, Algorithm::ml_cdn, Algorithm::glmnet, Algorithm::ml_glmnet}) {
      const TrainResult r = train(d, a, cfg);
      EXPECT_TRUE(r.report.converged) << to_string(a);
      const oracle::Vec w = oracle::to_eigen(r.model.w);
      EXPECT_LT(oracle::logreg_subgradient_l1(o, cfg.C, w), cfg.eps * frac * ref) << to_string(a);
      EXPECT_NEAR(r.report.objective, oracle::logreg_objective(o, cfg.C, w), 1e-8 * r.report.objective);
      objs.push_back(r.report.objective);
    }
    for (double v : objs) EXPECT_NEAR(v, objs[0], 1e-5 * objs[0]);
    EXPECT_EQ(ml::monotonicity_violations().load(), before);
  }
}

TEST(LogregSolvers, StopRuleEdgeCases) {
  const auto s = datagen::synth_logreg(10, 20, 0.1, 7);
  EXPECT_TRUE(logreg_converged(0.0, 0.0, 1e-3, s.data));
  EXPECT_FALSE(logreg_converged(1.0, 1.0, 1e-3, s.data));
  for (Algorithm a : {Algorithm::cdn, Algorithm::ml_cdn, Algorithm::glmnet, Algorithm::ml_glmnet})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW(parse_algorithm("newton"), InvalidArgument);
  TrainConfig bad;
  bad.C = -1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}
