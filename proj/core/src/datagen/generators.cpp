#include "mlsparse/datagen/generators.hpp"

#include <algorithm>
#include <cmath>

#include "mlsparse/dense.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/logreg/objective.hpp"
#include "mlsparse/rng.hpp"

namespace mlsparse::datagen {

double PlanarGraphSpec::margin() const { return 1.0 / std::sqrt(static_cast<double>(n)); }

PlanarLaplacian random_planar_laplacian(const PlanarGraphSpec& spec) {
  if (spec.n < 10) throw InvalidArgument("random_planar_laplacian: n must be at least 10");
  Rng rng(derive_seed(spec.seed, 0));
  std::vector<Point> pts(spec.n);
  for (auto& q : pts) {
    q.x = rng.uniform();
    q.y = rng.uniform();
  }
  std::vector<Triangle> tris;
  Rng jitter(derive_seed(spec.seed, 1));
  for (int attempt = 0;; ++attempt) {
    try {
      tris = delaunay(pts);
      break;
    } catch (const NumericalError&) {
      if (attempt == 5) throw;
      for (auto& q : pts) {
        q.x += 1e-9 * (2.0 * jitter.uniform() - 1.0);
        q.y += 1e-9 * (2.0 * jitter.uniform() - 1.0);
      }
    }
  }

  const std::size_t n = spec.n;
  std::vector<Triplet> t;
  std::vector<double> degree(n, 0.0);
  for (const auto& e : triangle_edges(tris)) {
    t.push_back({e[1], e[0], -1.0});
    degree[e[0]] += 1.0;
    degree[e[1]] += 1.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] > 0.0) t.push_back({i, i, degree[i]});

  PlanarLaplacian out;
  out.laplacian = SparseSymMatrix::from_triplets(n, t);
  const double m = spec.margin();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = pts[i];
    if (q.x >= m && q.x <= 1.0 - m && q.y >= m && q.y <= 1.0 - m) out.kept.push_back(i);
  }
  if (out.kept.empty()) throw InvalidArgument("random_planar_laplacian: no interior points remain");
  const IndexSet kept(out.kept);
  std::vector<Triplet> tt;
  for (const auto& e : out.laplacian.upper_triplets())
    if (kept.contains(e.row) && kept.contains(e.col)) tt.push_back({kept.position(e.row), kept.position(e.col), e.value});
  out.precision = SparseSymMatrix::from_triplets(kept.size(), tt);
  out.points = std::move(pts);
  return out;
}

SampleMatrix sample_from_precision(const SparseSymMatrix& p, std::size_t m, std::uint64_t seed) {
  const std::size_t n = p.dim();
  const auto l = cholesky_lower(p.to_dense());
  if (!l) throw NumericalError("sample_from_precision: precision matrix is not positive definite");
  const DenseMatrix& lm = *l;
  SampleMatrix y(n, m);
  Rng rng(seed);
  DenseVector v(n);
  for (std::size_t s = 0; s < m; ++s) {
    for (auto& x : v) x = rng.normal();
    // Solve L^T y = v by back substitution; column i of L is row i of L^T.
    for (std::size_t i = n; i-- > 0;) {
      double acc = v[i];
      const auto col = lm.col(i);
      for (std::size_t k = i + 1; k < n; ++k) acc -= col[k] * v[k];
      v[i] = acc / col[i];
    }
    for (std::size_t i = 0; i < n; ++i) y(i, s) = v[i];
  }
  return y;
}

SynthLogreg synth_logreg(std::size_t n, std::size_t m, double sparsity, std::uint64_t seed, double density,
                         double scale) {
  if (!(sparsity > 0.0 && sparsity <= 1.0)) throw InvalidArgument("synth_logreg: sparsity must lie in (0,1]");
  if (!(density > 0.0 && density <= 1.0)) throw InvalidArgument("synth_logreg: density must lie in (0,1]");
  if (n == 0 || m == 0) throw InvalidArgument("synth_logreg: n and m must be positive");
  SynthLogreg out;
  out.planted.assign(n, 0.0);
  Rng wr(derive_seed(seed, 0));
  const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(sparsity * static_cast<double>(n))));
  std::vector<std::size_t> ids(n);
  for (std::size_t j = 0; j < n; ++j) ids[j] = j;
  for (std::size_t j = 0; j < k; ++j) std::swap(ids[j], ids[j + wr.below(n - j)]);
  for (std::size_t j = 0; j < k; ++j) {
    const double mag = scale * (1.0 + wr.uniform());
    out.planted[ids[j]] = wr.uniform() < 0.5 ? -mag : mag;
  }

  Rng xr(derive_seed(seed, 1));
  Rng yr(derive_seed(seed, 2));
  std::vector<std::vector<logreg::LabeledDataset::Entry>> samples(m);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    double dotw = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(xr.uniform() < density)) continue;
      const double v = xr.normal();
      samples[i].push_back({j, v});
      dotw += v * out.planted[j];
    }
    labels[i] = yr.uniform() < logreg::sigmoid(dotw) ? 1 : -1;
  }
  out.data = logreg::LabeledDataset(n, std::move(samples), std::move(labels));
  return out;
}

}  // namespace mlsparse::datagen
