#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "mlsparse/cg.hpp"
#include "mlsparse/covsel/bcd.hpp"
#include "mlsparse/datagen/generators.hpp"
#include "mlsparse/lasso/lasso_problem.hpp"
#include "mlsparse/logreg/solvers.hpp"
#include "mlsparse/rng.hpp"

using namespace mlsparse;

namespace {

const datagen::PlanarLaplacian& planar(std::size_t n) {
  static std::map<std::size_t, datagen::PlanarLaplacian> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, datagen::random_planar_laplacian({n, 7})).first;
  return it->second;
}

void BM_CgSolve(benchmark::State& state) {
  const auto& g = planar(static_cast<std::size_t>(state.range(0)));
  DenseVector b(g.precision.dim(), 0.0);
  b[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(cg_solve(g.precision, b, 1e-5, 5000));
}
BENCHMARK(BM_CgSolve)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_PcdCg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  DenseMatrix h(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) h(i, j) = (i == j ? 2.0 : 0.0) + (i + 1 == j || j + 1 == i ? -0.9 : 0.0);
  DenseVector c(n);
  for (auto& v : c) v = rng.normal();
  const lasso::LassoProblem p(h, c, 0.5);
  const auto model = p.model_at(DenseVector(n, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(lasso::pcd_cg_solve(model, IndexSet::range(n), 1e-6, 1000));
}
BENCHMARK(BM_PcdCg)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_BcdSweep(benchmark::State& state) {
  const auto& g = planar(static_cast<std::size_t>(state.range(0)));
  auto y = std::make_shared<SampleMatrix>(normalize_rows(datagen::sample_from_precision(g.precision, 200, 11)));
  const covsel::CovselProblem p(y, 0.6);
  covsel::BcdOptions opt;
  for (auto _ : state) {
    state.PauseTiming();
    covsel::CovselState st(p, SparseSymMatrix{});
    state.ResumeTiming();
    benchmark::DoNotOptimize(covsel::bcd_sweep(st, opt));
  }
}
BENCHMARK(BM_BcdSweep)->Arg(300)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_CdnEpoch(benchmark::State& state) {
  const auto syn = datagen::synth_logreg(static_cast<std::size_t>(state.range(0)), 2000, 0.01, 5);
  logreg::TrainConfig cfg;
  cfg.C = 0.1;
  for (auto _ : state) {
    state.PauseTiming();
    logreg::LogRegState st(syn.data, cfg.C);
    state.ResumeTiming();
    benchmark::DoNotOptimize(logreg::cdn_epoch(st, cfg));
  }
}
BENCHMARK(BM_CdnEpoch)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
