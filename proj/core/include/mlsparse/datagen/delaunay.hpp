#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace mlsparse::datagen {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Triangle = std::array<std::size_t, 3>;

/// Bowyer-Watson triangulation of distinct points. Throws NumericalError
/// when a degenerate (near-zero area) triangle remains.
std::vector<Triangle> delaunay(const std::vector<Point>& pts);

/// Unique undirected edges (i < j) of a triangulation, sorted.
std::vector<std::array<std::size_t, 2>> triangle_edges(const std::vector<Triangle>& tris);

}  // namespace mlsparse::datagen
