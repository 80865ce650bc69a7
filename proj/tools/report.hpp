#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mlsparse::cli {

/// One solver run. Every field is filled, failures included.
struct RunReport {
  std::string problem;
  std::string solver;
  double seconds = 0.0;
  std::size_t iterations = 0;
  std::size_t max_support = 0;
  std::size_t support = 0;
  double objective = 0.0;
  bool converged = false;
  std::string error;  // empty on success
  std::vector<std::pair<std::string, std::string>> config;

  /// "time(it)/max-supp", the layout of the benchmark tables.
  std::string cell() const;
};

void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const RunReport& r);
void write_report_csv(const std::string& path, const std::vector<RunReport>& rows);

}  // namespace mlsparse::cli
