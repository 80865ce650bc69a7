#include "mlsparse/ml/trace.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace mlsparse::ml {

void Trace::write_csv(std::ostream& out) const {
  out << "cycle,levels,objective,support,max_support,work\n";
  out << std::setprecision(15);
  for (const auto& r : rows_)
    out << r.cycle << ',' << r.levels << ',' << r.objective << ',' << r.support << ','
        << r.max_support << ',' << r.work << '\n';
}

std::string Trace::to_csv() const {
  std::ostringstream s;
  write_csv(s);
  return s.str();
}

}  // namespace mlsparse::ml
