#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mlsparse::ml {

struct TraceRow {
  std::size_t cycle = 0;
  std::size_t levels = 0;
  double objective = 0.0;
  std::size_t support = 0;
  std::size_t max_support = 0;
  double work = 0.0;  // cumulative relaxation work units
};

class Trace {
 public:
  void add(const TraceRow& row) { rows_.push_back(row); }
  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const TraceRow& back() const { return rows_.back(); }

  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

 private:
  std::vector<TraceRow> rows_;
};

}  // namespace mlsparse::ml
