#include "report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mlsparse/error.hpp"

namespace mlsparse::cli {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string RunReport::cell() const {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << seconds << '(' << iterations << ")/" << max_support;
  return s.str();
}

void write_report_header(std::ostream& out) {
  out << "problem,solver,seconds,iterations,max_support,support,objective,converged,cell,error,config\n";
}

void write_report_row(std::ostream& out, const RunReport& r) {
  std::string cfg;
  for (const auto& [k, v] : r.config) cfg += (cfg.empty() ? "" : ";") + k + "=" + v;
  std::ostringstream obj;
  obj << std::setprecision(12) << r.objective;
  out << quote(r.problem) << ',' << quote(r.solver) << ',' << std::fixed << std::setprecision(4) << r.seconds
      << std::defaultfloat << ',' << r.iterations << ',' << r.max_support << ',' << r.support << ',' << obj.str()
      << ',' << (r.converged ? 1 : 0) << ',' << quote(r.cell()) << ',' << quote(r.error) << ',' << quote(cfg)
      << '\n';
}

void write_report_csv(const std::string& path, const std::vector<RunReport>& rows) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_report_header(out);
  for (const auto& r : rows) write_report_row(out, r);
  if (!out) throw ParseError("write failed for " + path);
}

}  // namespace mlsparse::cli
