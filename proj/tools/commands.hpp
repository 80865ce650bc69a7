#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mlsparse/covsel/strategies.hpp"
#include "mlsparse/logreg/solvers.hpp"

namespace mlsparse::cli {

struct GenCovselArgs {
  std::size_t n = 0;
  std::size_t m = 200;
  std::uint64_t seed = 1;
  std::string out = "covsel";  // writes <out>_samples.csv and <out>_precision.mtx
};

struct GenLogregArgs {
  std::size_t n = 0;
  std::size_t m = 0;
  double sparsity = 0.01;
  double density = 0.1;
  std::uint64_t seed = 1;
  std::string out = "logreg.svm";
};

struct CovselArgs {
  std::string data;
  double lambda = 0.0;
  std::string solver = "bcd";
  covsel::SolveConfig cfg;
  std::uint64_t seed = 0;
  std::string out = "precision.mtx";
  std::string report;  // CSV report, stdout when empty
  std::string trace;
};

struct LogregArgs {
  std::string data;
  std::string algo = "cdn";
  logreg::TrainConfig cfg;
  bool bias = false;
  std::string out = "model.txt";
  std::string report;
  std::string trace;
};

struct BenchArgs {
  std::string suite;
  std::string out;  // stdout when empty
};

int cmd_gen_covsel(const GenCovselArgs& a);
int cmd_gen_logreg(const GenLogregArgs& a);
int cmd_covsel(const CovselArgs& a);
int cmd_logreg(const LogregArgs& a);
int cmd_bench(const BenchArgs& a);

}  // namespace mlsparse::cli
