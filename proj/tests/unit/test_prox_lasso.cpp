#include <gtest/gtest.h>

#include <cmath>

#include "mlsparse/error.hpp"
#include "mlsparse/lasso/lasso_problem.hpp"
#include "mlsparse/lasso/linesearch.hpp"
#include "mlsparse/lasso/quadratic_model.hpp"
#include "mlsparse/ml/cycle.hpp"
#include "mlsparse/prox.hpp"
#include "oracles/oracles.hpp"

using namespace mlsparse;
using namespace mlsparse::lasso;

namespace {

struct Instance {
  oracle::Mat h;
  oracle::Vec c;
  double lam;
};

Instance random_instance(Rng& rng, std::size_t n) {
  Instance in;
  in.h = oracle::random_spd(n, rng, 0.3, 6.0);
  in.c = oracle::Vec(n);
  for (std::size_t i = 0; i < n; ++i) in.c(i) = 2.0 * rng.normal();
  in.lam = rng.uniform(0.2, 2.0);
  return in;
}

LassoProblem to_problem(const Instance& in) {
  return LassoProblem(oracle::from_eigen(in.h), DenseVector(in.c.data(), in.c.data() + in.c.size()), in.lam);
}

}  // namespace

TEST(Prox, SoftShrinkage) {
  EXPECT_DOUBLE_EQ(soft_shrinkage(3.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(soft_shrinkage(-3.0, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(soft_shrinkage(0.5, 1.0), 0.0);
}

TEST(Prox, ScalarProxBeatsGrid) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = rng.uniform(0.1, 5.0), b = rng.uniform(-5.0, 5.0), lam = rng.uniform(0.0, 3.0);
    const double z = scalar_prox(a, b, lam);
    auto f = [&](double t) { return 0.5 * a * t * t + b * t + lam * std::abs(t); };
    for (double t = -10.0; t <= 10.0; t += 0.01) EXPECT_LE(f(z), f(t) + 1e-12);
  }
}

TEST(Prox, MinNormSubgradientIsZeroExactlyAtKkt) {
  EXPECT_DOUBLE_EQ(min_norm_subgradient(0.5, 0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(min_norm_subgradient(1.5, 0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(min_norm_subgradient(-1.0, 2.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(min_norm_subgradient(0.3, -2.0, 1.0), -0.7);
}

TEST(Lasso, ProblemGradientMatchesOracle) {
  Rng rng(1);
  const Instance in = random_instance(rng, 15);
  const LassoProblem p = to_problem(in);
  DenseVector x(15);
  for (auto& v : x) v = rng.uniform() < 0.5 ? 0.0 : rng.normal();
  const oracle::Vec xe = oracle::to_eigen(x);
  EXPECT_NEAR(p.objective(x), oracle::lasso_objective(in.h, in.c, in.lam, xe), 1e-10);
  const auto sub = p.subgradient(x);
  const oracle::Vec so = oracle::lasso_subgradient(in.h, in.c, in.lam, xe);
  for (std::size_t i = 0; i < 15; ++i) EXPECT_NEAR(sub[i], so(i), 1e-10);
}

TEST(Lasso, PcdCgSolvesTheModelExactly) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng.below(40);
    const Instance in = random_instance(rng, n);
    const LassoProblem p = to_problem(in);
    EXPECT_TRUE(pcd_cg_solve(p.model_at(DenseVector(n, 0.0)), IndexSet::range(n), 1e-6, 5000).converged);
    const auto res = pcd_cg_solve(p.model_at(DenseVector(n, 0.0)), IndexSet::range(n), 1e-12, 5000);
    const auto opt = oracle::lasso_minimize(in.h, in.c, in.lam);
    const double f = p.objective(res.z);
    EXPECT_LE(std::abs(f - opt.objective), 1e-9 * std::max(1.0, std::abs(opt.objective)));
    EXPECT_NEAR(res.model_value, f, 1e-9 * std::max(1.0, std::abs(f)));
  }
}

TEST(Lasso, PcdCgRespectsRestriction) {
  Rng rng(3);
  const Instance in = random_instance(rng, 20);
  const LassoProblem p = to_problem(in);
  const IndexSet r{1, 4, 7, 9};
  const auto res = pcd_cg_solve(p.model_at(DenseVector(20, 0.0)), r, 1e-10, 1000);
  for (std::size_t i = 0; i < 20; ++i)
    if (!r.contains(i)) EXPECT_EQ(res.z[i], 0.0);
}

TEST(Lasso, ShrinkageDirectionRejectsBadDiagonal) {
  QuadraticModel m;
  m.hessian_diag = {1.0, 0.0};
  m.grad = {1.0, 1.0};
  m.base = {0.0, 0.0};
  m.lambda = 0.1;
  m.hessian_apply = [](std::span<const double> v, std::span<double> o) {
    o[0] = v[0];
    o[1] = 0.0;
  };
  EXPECT_THROW(shrinkage_direction(m, StepKind::pcd, IndexSet::range(2)), InvalidArgument);
}

TEST(LineSearch, PicksLastDecreasingSample) {
  // f(alpha) = (alpha - 0.3)^2 sampled at 1, 1/2, 1/4, 1/8: values rise after 1/4.
  const auto r = sampled_linesearch([](double a) -> std::optional<double> { return (a - 0.3) * (a - 0.3); }, 0.09);
  EXPECT_DOUBLE_EQ(r.alpha, 0.25);
  EXPECT_THROW(sampled_linesearch([](double) -> std::optional<double> { return 1.0; }, 0.0), StagnationError);
  const auto guarded = sampled_linesearch(
      [](double a) -> std::optional<double> {
        if (a > 0.3) return std::nullopt;
        return -a;
      },
      0.0);
  EXPECT_DOUBLE_EQ(guarded.alpha, 0.25);
}

TEST(Lasso, RelaxationsAreMonotoneAndConverge) {
  Rng rng(4);
  const auto before = ml::monotonicity_violations().load();
  for (StepKind kind : {StepKind::ssf, StepKind::pcd, StepKind::pcd_cg}) {
    const Instance in = random_instance(rng, 25);
    const LassoProblem p = to_problem(in);
    LassoRelaxOptions o;
    o.kind = kind;
    o.inner_tol = 1e-10;
    LassoRelaxation r(p, DenseVector(25, 0.0), o);
    const double stop = 1e-6 * r.reference_subgradient_l1();
    const auto out = ml::solve_plain(r, 20000, [&] { return r.subgradient_l1() <= stop; });
    EXPECT_TRUE(out.converged) << static_cast<int>(kind) << " " << r.subgradient_l1() << " " << out.cycles;
    for (std::size_t k = 1; k < out.trace.rows().size(); ++k)
      EXPECT_LE(out.trace.rows()[k].objective, out.trace.rows()[k - 1].objective);
    const auto opt = oracle::lasso_minimize(in.h, in.c, in.lam);
    EXPECT_NEAR(r.objective(), opt.objective, 1e-8 * std::max(1.0, std::abs(opt.objective)));
  }
  EXPECT_EQ(ml::monotonicity_violations().load(), before);
}
