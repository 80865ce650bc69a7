#pragma once

#include <iosfwd>
#include <string>

#include "mlsparse/dense.hpp"
#include "mlsparse/samples.hpp"
#include "mlsparse/sparse.hpp"

namespace mlsparse {

/// MatrixMarket "coordinate real symmetric"; only the lower triangle is written.
void write_matrix_market(std::ostream& out, const SparseSymMatrix& m);
void write_matrix_market(const std::string& path, const SparseSymMatrix& m);
/// Accepts symmetric or general coordinate files; general files must be symmetric.
SparseSymMatrix read_matrix_market(std::istream& in);
SparseSymMatrix read_matrix_market(const std::string& path);

/// Sample CSV: a "# n=<n> m=<m>" line, then one line per variable.
void write_samples_csv(std::ostream& out, const SampleMatrix& s);
void write_samples_csv(const std::string& path, const SampleMatrix& s);
SampleMatrix read_samples_csv(std::istream& in);
SampleMatrix read_samples_csv(const std::string& path);

void write_dense_csv(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_dense_csv(std::istream& in);

}  // namespace mlsparse
