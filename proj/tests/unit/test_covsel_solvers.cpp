#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "mlsparse/covsel/bcd.hpp"
#include "mlsparse/covsel/strategies.hpp"
#include "mlsparse/datagen/generators.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "oracles/oracles.hpp"

using namespace mlsparse;
using namespace mlsparse::covsel;

namespace {

std::shared_ptr<SampleMatrix> planar_samples(std::size_t n, std::size_t m, std::uint64_t seed) {
  const auto g = datagen::random_planar_laplacian({n, seed});
  return std::make_shared<SampleMatrix>(normalize_rows(datagen::sample_from_precision(g.precision, m, seed + 1)));
}

}  // namespace

TEST(CovselSolvers, StrategiesAgreeAndSatisfyKkt) {
  const auto y = planar_samples(150, 100, 3);
  const oracle::Mat sd = oracle::sample_covariance(*y);
  const CovselProblem p(y, 0.6);
  SolveConfig cfg;
  cfg.bcd.block_size = 32;
  cfg.dc_floor = 24;
  const auto before = ml::monotonicity_violations().load();
  std::vector<double> objs;
  for (Strategy s : {Strategy::bcd, Strategy::ml_bcd, Strategy::continuation, Strategy::dc}) {
    const SolveResult r = solve(s, p, SparseSymMatrix{}, cfg);
    EXPECT_TRUE(r.report.converged) << to_string(s);
    const oracle::Mat a = oracle::to_eigen(r.state.a());
    EXPECT_NEAR(r.report.objective, oracle::covsel_objective(sd, a, 0.6), 1e-8 * std::abs(r.report.objective));
    EXPECT_LT(oracle::covsel_subgradient_l1(sd, a, 0.6), 5e-3 * a.cwiseAbs().sum()) << to_string(s);
    EXPECT_GE(r.report.max_support, r.report.support);
    for (std::size_t k = 1; k < r.report.trace.rows().size(); ++k)
      EXPECT_LE(r.report.trace.rows()[k].objective, r.report.trace.rows()[k - 1].objective + 1e-12);
    objs.push_back(r.report.objective);
  }
  for (double o : objs) EXPECT_NEAR(o, objs[0], 1e-4 * std::abs(objs[0]));
  EXPECT_EQ(ml::monotonicity_violations().load(), before);
}

TEST(CovselSolvers, LargeLambdaGivesDiagonalClosedForm) {
  const auto y = planar_samples(80, 60, 5);
  const oracle::Mat sd = oracle::sample_covariance(*y);
  double off = 0.0;
  for (Eigen::Index j = 0; j < sd.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) off = std::max(off, std::abs(sd(i, j)));
  const double lam = off + 0.05;
  const SolveResult r = solve_bcd(CovselProblem(y, lam), SparseSymMatrix{}, SolveConfig{});
  EXPECT_TRUE(r.report.converged);
  EXPECT_EQ(r.report.support, static_cast<std::size_t>(sd.rows()));
  for (Eigen::Index i = 0; i < sd.rows(); ++i)
    EXPECT_NEAR(r.state.a().at(i, i), 1.0 / (sd(i, i) + lam), 1e-3 / (sd(i, i) + lam));
}

TEST(CovselSolvers, WarmStartAtOptimumStopsImmediately) {
  const auto y = planar_samples(100, 80, 8);
  const CovselProblem p(y, 0.65);
  const SolveResult first = solve_bcd(p, SparseSymMatrix{}, SolveConfig{});
  ASSERT_TRUE(first.report.converged);
  const SolveResult again = solve_bcd(p, first.state.a(), SolveConfig{});
  EXPECT_TRUE(again.report.converged);
  EXPECT_LE(again.report.iterations, 1u);
  EXPECT_NEAR(again.report.objective, first.report.objective, 1e-9 * std::abs(first.report.objective));
}

TEST(CovselSolvers, ContinuationSchedule) {
  const auto s = continuation_schedule(0.4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s[0], 0.7);
  EXPECT_NEAR(s[1], 0.6, 1e-15);
  EXPECT_NEAR(s[2], 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(s[3], 0.4);
}

TEST(CovselSolvers, StrategyNames) {
  for (Strategy s : {Strategy::bcd, Strategy::ml_bcd, Strategy::continuation, Strategy::dc})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_strategy("quic"), InvalidArgument);
}

TEST(CovselSolvers, SweepRefreshesFreeSet) {
  const auto y = planar_samples(100, 80, 9);
  const oracle::Mat sd = oracle::sample_covariance(*y);
  const CovselProblem p(y, 0.6);
  CovselState st(p, SparseSymMatrix{});
  BcdOptions opt;
  opt.block_size = 16;
  const double before = st.objective();
  const SweepStats s = bcd_sweep(st, opt);
  EXPECT_TRUE(s.full);
  EXPECT_LT(st.objective(), before);
  EXPECT_NEAR(st.objective(), oracle::covsel_objective(sd, oracle::to_eigen(st.a()), 0.6),
              1e-8 * std::abs(st.objective()));
  EXPECT_FALSE(st.subgradient_exact());
  EXPECT_EQ(st.free_pairs().size(), st.free_magnitudes().size());
}
