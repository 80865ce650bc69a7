#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mlsparse/datagen/delaunay.hpp"
#include "mlsparse/logreg/dataset.hpp"
#include "mlsparse/samples.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse::datagen {

struct PlanarGraphSpec {
  std::size_t n = 1000;  // points before trimming
  std::uint64_t seed = 1;

  double margin() const;  // 1 / sqrt(n)
};

struct PlanarLaplacian {
  SparseSymMatrix precision;  // trimmed, positive definite
  SparseSymMatrix laplacian;  // full graph Laplacian before trimming
  std::vector<Point> points;
  std::vector<std::size_t> kept;  // indices into points of the trimmed rows
};

/// Uniform points in the unit square, Delaunay edges weighted -1, diagonal
/// equal to the degree; rows of points closer than the margin to the
/// boundary are removed afterwards. Requires n >= 10.
PlanarLaplacian random_planar_laplacian(const PlanarGraphSpec& spec);

/// m samples y = L^{-T} v with P = L L^T and v standard normal, so cov(y) = P^{-1}.
/// Throws NumericalError if P is not positive definite.
SampleMatrix sample_from_precision(const SparseSymMatrix& p, std::size_t m, std::uint64_t seed);

struct SynthLogreg {
  logreg::LabeledDataset data;
  std::vector<double> planted;
};

/// n features, m samples; every feature appears in a sample with probability
/// `density` with a standard normal value. A fraction `sparsity` of the
/// features carries planted weights of magnitude in [scale, 2 scale]; labels
/// are drawn from the logistic model of the planted weights.
SynthLogreg synth_logreg(std::size_t n, std::size_t m, double sparsity, std::uint64_t seed, double density = 0.1,
                         double scale = 2.0);

}  // namespace mlsparse::datagen
