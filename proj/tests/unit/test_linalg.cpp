#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "mlsparse/cg.hpp"
#include "mlsparse/dense.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/parallel.hpp"
#include "mlsparse/rng.hpp"
#include "mlsparse/samples.hpp"
#include "mlsparse/sparse.hpp"
#include "oracles/oracles.hpp"

using namespace mlsparse;

TEST(IndexSet, SortsAndDeduplicates) {
  const IndexSet s{5, 1, 3, 1, 5};
  EXPECT_EQ(s.ids(), (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.position(5), 2u);
  EXPECT_EQ(s.position(4), s.size());
}

TEST(IndexSet, SetAlgebraMatchesDefinition) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < 40; ++i) {
      if (rng.uniform() < 0.4) a.push_back(i);
      if (rng.uniform() < 0.4) b.push_back(i);
    }
    const IndexSet sa(a), sb(b);
    const IndexSet u = set_union(sa, sb), d = set_difference(sa, sb), x = set_intersection(sa, sb);
    for (std::size_t i = 0; i < 40; ++i) {
      EXPECT_EQ(u.contains(i), sa.contains(i) || sb.contains(i));
      EXPECT_EQ(d.contains(i), sa.contains(i) && !sb.contains(i));
      EXPECT_EQ(x.contains(i), sa.contains(i) && sb.contains(i));
    }
    EXPECT_TRUE(is_subset(x, sa));
    EXPECT_TRUE(is_subset(sa, u));
  }
}

TEST(PairSet, ClosedUnderTransposition) {
  const PairSet p = PairSet::from_upper({{0, 2}, {1, 1}, {0, 2}});
  EXPECT_TRUE(p.contains(0, 2));
  EXPECT_TRUE(p.contains(2, 0));
  EXPECT_TRUE(p.contains(1, 1));
  EXPECT_EQ(p.upper_size(), 2u);
  EXPECT_EQ(p.size(), 3u);
}

TEST(SparseSymMatrix, MultiplyMatchesDense) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_sparse_spd(30, 0.15, rng);
    const oracle::Mat ad = oracle::to_eigen(a);
    EXPECT_TRUE(ad.isApprox(ad.transpose()));
    std::vector<double> x(30);
    for (auto& v : x) v = rng.normal();
    const auto y = a.multiply(x);
    const oracle::Vec ye = ad * oracle::to_eigen(x);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(y[i], ye(i), 1e-12);
    EXPECT_NEAR(a.l1_norm(), ad.cwiseAbs().sum(), 1e-10);
    EXPECT_TRUE(a.structurally_symmetric());
  }
}

TEST(SparseSymMatrix, TripletsSumAndMirror) {
  const std::vector<Triplet> t{{1, 0, 2.0}, {1, 0, 1.0}, {2, 2, 4.0}};
  const auto a = SparseSymMatrix::from_triplets(3, t);
  EXPECT_DOUBLE_EQ(a.at(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(a.at(1, 0), 3.0);
  EXPECT_DOUBLE_EQ(a.at(2, 2), 4.0);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 0.0);
}

TEST(SparseSymMatrix, PlusScaledDropsCancelledOffDiagonal) {
  const auto a = SparseSymMatrix::from_triplets(3, std::vector<Triplet>{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {1, 0, 0.5}});
  const std::vector<Triplet> d{{0, 1, -0.25}, {2, 2, 1.0}};
  const auto b = a.plus_scaled(d, 2.0);
  EXPECT_EQ(b.pattern().contains(0, 1), false);
  EXPECT_DOUBLE_EQ(b.at(2, 2), 3.0);
  EXPECT_EQ(b.nnz(), 3u);
}

TEST(Dense, CholeskyLogdetAndInverseMatchEigen) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::Mat m = oracle::random_spd(12, rng, 0.1, 5.0);
    const DenseMatrix dm = oracle::from_eigen(m);
    const LogDet ld = dense_chol_logdet(dm);
    ASSERT_TRUE(ld.pd);
    EXPECT_NEAR(ld.logdet, std::log(m.determinant()), 1e-9);
    const oracle::Mat inv = oracle::to_eigen(spd_inverse(dm));
    EXPECT_LT((inv - m.inverse()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Dense, NonPdIsReported) {
  DenseMatrix m = DenseMatrix::identity(3);
  m(1, 1) = -1.0;
  EXPECT_FALSE(dense_chol_logdet(m).pd);
  EXPECT_FALSE(cholesky_lower(m).has_value());
  EXPECT_THROW(spd_inverse(m), NumericalError);
  DenseMatrix asym = DenseMatrix::identity(2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(dense_chol_logdet(asym), InvalidArgument);
}

TEST(Cg, ConvergedResidualHoldsExplicitly) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_sparse_spd(60, 0.05, rng);
    std::vector<double> b(60);
    for (auto& v : b) v = rng.normal();
    const CgResult r = cg_solve(a, b, 1e-10, 1000);
    ASSERT_EQ(r.status, CgStatus::converged);
    const auto ax = a.multiply(r.x);
    double res = 0.0;
    for (std::size_t i = 0; i < 60; ++i) res += (ax[i] - b[i]) * (ax[i] - b[i]);
    EXPECT_LE(std::sqrt(res), 1e-10 * norm2(b) * (1 + 1e-9));
    EXPECT_GE(r.matvecs, r.iterations);
  }
}

TEST(Cg, ZeroRhsAndIterationCap) {
  Rng rng(1);
  const auto a = oracle::random_sparse_spd(40, 0.2, rng);
  const CgResult z = cg_solve(a, std::vector<double>(40, 0.0), 1e-8, 100);
  EXPECT_EQ(z.status, CgStatus::converged);
  EXPECT_EQ(z.iterations, 0u);
  EXPECT_EQ(norm_inf(z.x), 0.0);
  std::vector<double> b(40);
  for (auto& v : b) v = rng.normal();
  EXPECT_EQ(cg_solve(a, b, 1e-14, 1).status, CgStatus::max_iterations);
}

TEST(Cg, ManyMatchesSingle) {
  Rng rng(2);
  const auto a = oracle::random_sparse_spd(50, 0.1, rng);
  std::vector<DenseVector> rhs(7, DenseVector(50));
  for (auto& r : rhs)
    for (auto& v : r) v = rng.normal();
  set_thread_cap(3);
  const auto many = cg_solve_many(a, rhs, 1e-9, 500);
  set_thread_cap(1);
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    const auto one = cg_solve(a, rhs[k], 1e-9, 500);
    EXPECT_EQ(one.x, many[k].x);
  }
}

TEST(Parallel, EachIndexOnceAndRethrows) {
  set_thread_cap(4);
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, [&](std::size_t k) { hits[k].fetch_add(1); });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t k) {
                 if (k == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  set_thread_cap(1);
}

TEST(Rng, ReproducibleAndRoughlyNormal) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(derive_seed(42, 1), derive_seed(42, 2));
  Rng r(7);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = r.normal();
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(17), 17u);
}

TEST(Samples, NormalizeRows) {
  Rng rng(4);
  SampleMatrix y(5, 50);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t s = 0; s < 50; ++s) y(i, s) = 3.0 + 2.0 * rng.normal();
  const SampleMatrix n = normalize_rows(y);
  EXPECT_TRUE(n.normalized());
  EXPECT_TRUE(n.check_normalized());
  SampleMatrix flat(2, 10);
  for (std::size_t s = 0; s < 10; ++s) flat(0, s) = flat(1, s) = 1.0;
  EXPECT_THROW(normalize_rows(flat), InvalidArgument);
  EXPECT_THROW(normalize_rows(SampleMatrix(2, 1)), InvalidArgument);
}
