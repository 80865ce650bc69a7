#include "mlsparse/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <tuple>
#include <vector>

#include "mlsparse/error.hpp"

namespace mlsparse {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<double> parse_csv_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(',', pos);
    if (end == std::string::npos) end = line.size();
    std::string cell = line.substr(pos, end - pos);
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": empty cell");
    cell = cell.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size())
      throw ParseError("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    vals.push_back(v);
    pos = end + 1;
  }
  return vals;
}

}  // namespace

void write_matrix_market(std::ostream& out, const SparseSymMatrix& m) {
  std::size_t lower_nnz = 0;
  for (std::size_t j = 0; j < m.dim(); ++j)
    for (std::size_t i : m.col_rows(j))
      if (i >= j) ++lower_nnz;
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.dim() << ' ' << m.dim() << ' ' << lower_nnz << '\n';
  out << std::setprecision(17);
  for (std::size_t j = 0; j < m.dim(); ++j) {
    auto rows = m.col_rows(j);
    auto vals = m.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k] >= j) out << rows[k] + 1 << ' ' << j + 1 << ' ' << vals[k] << '\n';
  }
}

void write_matrix_market(const std::string& path, const SparseSymMatrix& m) {
  auto out = open_out(path);
  write_matrix_market(out, m);
}

SparseSymMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate")
    throw ParseError("matrix market: unsupported banner '" + line + "'");
  if (field != "real" && field != "integer")
    throw ParseError("matrix market: unsupported field '" + field + "'");
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw ParseError("matrix market: unsupported symmetry '" + symmetry + "'");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> rows >> cols >> nnz) || rows != cols)
      throw ParseError("matrix market: bad size line " + std::to_string(line_no));
  }
  std::vector<Triplet> t, upper;
  t.reserve(nnz);
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!std::getline(in, line))
      throw ParseError("matrix market: expected " + std::to_string(nnz) + " entries, got " +
                       std::to_string(k));
    ++line_no;
    std::istringstream es(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(es >> i >> j >> v) || i == 0 || j == 0 || i > rows || j > cols)
      throw ParseError("matrix market: bad entry on line " + std::to_string(line_no));
    if (!symmetric && i < j) {
      upper.push_back({j - 1, i - 1, v});  // mirrored, checked against the lower triangle below
      continue;
    }
    t.push_back({i - 1, j - 1, v});
  }
  if (!symmetric) {
    auto key = [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); };
    std::vector<Triplet> lower;
    for (const auto& e : t)
      if (e.row != e.col) lower.push_back(e);
    std::sort(lower.begin(), lower.end(), key);
    std::sort(upper.begin(), upper.end(), key);
    bool same = lower.size() == upper.size();
    for (std::size_t k = 0; same && k < lower.size(); ++k)
      same = lower[k].row == upper[k].row && lower[k].col == upper[k].col && lower[k].value == upper[k].value;
    if (!same) throw ParseError("matrix market: general matrix is not symmetric");
  }
  return SparseSymMatrix::from_triplets(rows, t);
}

SparseSymMatrix read_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_samples_csv(std::ostream& out, const SampleMatrix& s) {
  out << "# n=" << s.variables() << " m=" << s.samples() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < s.variables(); ++i) {
    auto r = s.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << r[k];
    out << '\n';
  }
}

void write_samples_csv(const std::string& path, const SampleMatrix& s) {
  auto out = open_out(path);
  write_samples_csv(out, s);
}

SampleMatrix read_samples_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0, m = 0;
  bool have_meta = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_meta && line.find("n=") != std::string::npos) {
        if (std::sscanf(line.c_str(), "# n=%zu m=%zu", &n, &m) != 2)
          throw ParseError("samples csv: bad metadata line " + std::to_string(line_no));
        have_meta = true;
      }
      continue;
    }
    rows.push_back(parse_csv_numbers(line, line_no));
    if (rows.size() > 1 && rows.back().size() != rows.front().size())
      throw ParseError("samples csv: line " + std::to_string(line_no) + " has " +
                       std::to_string(rows.back().size()) + " values, expected " +
                       std::to_string(rows.front().size()));
  }
  if (rows.empty()) throw ParseError("samples csv: no data rows");
  if (have_meta && (rows.size() != n || rows.front().size() != m))
    throw ParseError("samples csv: metadata says n=" + std::to_string(n) + " m=" +
                     std::to_string(m) + " but data is " + std::to_string(rows.size()) + "x" +
                     std::to_string(rows.front().size()));
  SampleMatrix s(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), s.row(i).begin());
  s.mark_normalized(s.check_normalized());
  return s;
}

SampleMatrix read_samples_csv(const std::string& path) {
  auto in = open_in(path);
  return read_samples_csv(in);
}

void write_dense_csv(std::ostream& out, const DenseMatrix& m) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

DenseMatrix read_dense_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_csv_numbers(line, line_no));
    if (rows.back().size() != rows.front().size())
      throw ParseError("dense csv: ragged row on line " + std::to_string(line_no));
  }
  if (rows.empty()) return {};
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace mlsparse
