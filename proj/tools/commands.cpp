#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "mlsparse/datagen/generators.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/io.hpp"
#include "mlsparse/logreg/dataset.hpp"
#include "mlsparse/rng.hpp"
#include "report.hpp"

namespace mlsparse::cli {

namespace {

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void emit_reports(const std::string& path, const std::vector<RunReport>& rows) {
  if (path.empty()) {
    write_report_header(std::cout);
    for (const auto& r : rows) write_report_row(std::cout, r);
  } else {
    write_report_csv(path, rows);
  }
}

void write_trace(const std::string& path, const ml::Trace& t) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  t.write_csv(out);
}

std::shared_ptr<SampleMatrix> load_samples(const std::string& path) {
  SampleMatrix s = read_samples_csv(path);
  if (!s.normalized()) s = normalize_rows(std::move(s));
  return std::make_shared<SampleMatrix>(std::move(s));
}

std::vector<std::pair<std::string, std::string>> covsel_config(const covsel::SolveConfig& c, double lambda) {
  return {{"lambda", str(lambda)},
          {"block_size", str(c.bcd.block_size)},
          {"block_cg_tol", str(c.bcd.block_cg_tol)},
          {"neighbor_cg_tol", str(c.bcd.neighbor_cg_tol)},
          {"newton_tol", str(c.bcd.newton_tol)},
          {"stop_tol", str(c.bcd.stop_tol)},
          {"max_iterations", str(c.bcd.max_iterations)},
          {"dc_floor", str(c.dc_floor)}};
}

RunReport run_covsel(const std::string& problem, const covsel::CovselProblem& p, covsel::Strategy s,
                     const covsel::SolveConfig& cfg) {
  RunReport r;
  r.problem = problem;
  r.solver = covsel::to_string(s);
  r.config = covsel_config(cfg, p.lambda());
  try {
    covsel::SolveResult res = covsel::solve(s, p, SparseSymMatrix{}, cfg);
    r.seconds = res.report.seconds;
    r.iterations = res.report.iterations;
    r.max_support = res.report.max_support;
    r.support = res.report.support;
    r.objective = res.report.objective;
    r.converged = res.report.converged;
    if (res.report.counters.rejected_blocks > 0)
      std::cerr << "warning: " << res.report.counters.rejected_blocks
                << " block steps rejected (no decreasing positive definite step)\n";
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

RunReport run_logreg(const std::string& problem, const logreg::LabeledDataset& d, logreg::Algorithm a,
                     const logreg::TrainConfig& cfg, logreg::TrainResult* keep) {
  RunReport r;
  r.problem = problem;
  r.solver = logreg::to_string(a);
  r.config = {{"C", str(cfg.C)}, {"eps", str(cfg.eps)}, {"max_iterations", str(cfg.max_iterations)},
              {"bias", d.has_bias() ? "1" : "0"}};
  try {
    logreg::TrainResult res = logreg::train(d, a, cfg);
    r.seconds = res.report.seconds;
    r.iterations = res.report.iterations;
    r.max_support = res.report.max_support;
    r.support = res.report.support;
    r.objective = res.report.objective;
    r.converged = res.report.converged;
    if (keep) *keep = std::move(res);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

int cmd_gen_covsel(const GenCovselArgs& a) {
  const auto g = datagen::random_planar_laplacian({a.n, a.seed});
  const SampleMatrix y = normalize_rows(datagen::sample_from_precision(g.precision, a.m, derive_seed(a.seed, 1)));
  write_samples_csv(a.out + "_samples.csv", y);
  write_matrix_market(a.out + "_precision.mtx", g.precision);
  std::cerr << "wrote " << a.out << "_samples.csv (" << y.variables() << " variables, " << y.samples()
            << " samples) and " << a.out << "_precision.mtx\n";
  return 0;
}

int cmd_gen_logreg(const GenLogregArgs& a) {
  const auto s = datagen::synth_logreg(a.n, a.m, a.sparsity, a.seed, a.density);
  logreg::write_libsvm(a.out, s.data);
  std::cerr << "wrote " << a.out << " (" << s.data.features() << " features, " << s.data.samples()
            << " samples)\n";
  return 0;
}

int cmd_covsel(const CovselArgs& a) {
  const covsel::Strategy s = covsel::parse_strategy(a.solver);
  const covsel::CovselProblem p(load_samples(a.data), a.lambda);
  RunReport r;
  r.problem = a.data;
  r.solver = covsel::to_string(s);
  r.config = covsel_config(a.cfg, a.lambda);
  r.config.push_back({"seed", str(a.seed)});
  std::optional<covsel::SolveResult> res;
  try {
    res.emplace(covsel::solve(s, p, SparseSymMatrix{}, a.cfg));
    r.seconds = res->report.seconds;
    r.iterations = res->report.iterations;
    r.max_support = res->report.max_support;
    r.support = res->report.support;
    r.objective = res->report.objective;
    r.converged = res->report.converged;
  } catch (const Error& e) {
    r.error = e.what();
  }
  emit_reports(a.report, {r});
  if (!res) {
    std::cerr << "error: " << r.error << '\n';
    return 1;
  }
  if (res->report.counters.rejected_blocks > 0)
    std::cerr << "warning: " << res->report.counters.rejected_blocks
              << " block steps rejected (no decreasing positive definite step)\n";
  if (!r.converged) std::cerr << "warning: stopping rule not met within the iteration budget\n";
  write_matrix_market(a.out, res->state.a());
  write_trace(a.trace, res->report.trace);
  return 0;
}

int cmd_logreg(const LogregArgs& a) {
  const logreg::Algorithm algo = logreg::parse_algorithm(a.algo);
  const logreg::LabeledDataset d = logreg::read_libsvm(a.data, 0, a.bias);
  logreg::TrainResult res;
  RunReport r = run_logreg(a.data, d, algo, a.cfg, &res);
  r.config.push_back({"data", a.data});
  emit_reports(a.report, {r});
  if (!r.error.empty()) {
    std::cerr << "error: " << r.error << '\n';
    return 1;
  }
  if (!r.converged) std::cerr << "warning: stopping rule not met within the iteration budget\n";
  logreg::write_model(a.out, res.model);
  write_trace(a.trace, res.report.trace);
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  std::ifstream in(a.suite);
  if (!in) throw ParseError("cannot open " + a.suite);
  nlohmann::json suite;
  try {
    in >> suite;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("suite: ") + e.what());
  }
  std::vector<RunReport> rows;
  try {
    for (const auto& c : suite.value("covsel", nlohmann::json::array())) {
      const auto n = c.at("n").get<std::size_t>();
      const auto m = c.value("m", std::size_t{200});
      const auto seed = c.value("seed", std::uint64_t{1});
      covsel::SolveConfig cfg;
      cfg.bcd.block_size = c.value("block_size", cfg.bcd.block_size);
      cfg.bcd.max_iterations = c.value("max_iterations", cfg.bcd.max_iterations);
      cfg.dc_floor = c.value("dc_floor", cfg.dc_floor);
      const auto g = datagen::random_planar_laplacian({n, seed});
      auto y = std::make_shared<SampleMatrix>(
          normalize_rows(datagen::sample_from_precision(g.precision, m, derive_seed(seed, 1))));
      const std::string name = "planar n=" + str(n) + " m=" + str(m) + " seed=" + str(seed);
      for (double lam : c.at("lambdas").get<std::vector<double>>()) {
        const covsel::CovselProblem p(y, lam);
        for (const auto& sname : c.at("solvers").get<std::vector<std::string>>())
          rows.push_back(run_covsel(name + " lambda=" + str(lam), p, covsel::parse_strategy(sname), cfg));
      }
    }
    for (const auto& c : suite.value("logreg", nlohmann::json::array())) {
      const auto n = c.at("n").get<std::size_t>();
      const auto m = c.at("m").get<std::size_t>();
      const auto sparsity = c.value("sparsity", 0.01);
      const auto seed = c.value("seed", std::uint64_t{1});
      const auto s = datagen::synth_logreg(n, m, sparsity, seed, c.value("density", 0.1));
      const std::string name = "synthetic n=" + str(n) + " m=" + str(m) + " seed=" + str(seed);
      for (double C : c.at("C").get<std::vector<double>>()) {
        logreg::TrainConfig cfg;
        cfg.C = C;
        cfg.eps = c.value("eps", cfg.eps);
        for (const auto& aname : c.at("algorithms").get<std::vector<std::string>>())
          rows.push_back(run_logreg(name + " C=" + str(C), s.data, logreg::parse_algorithm(aname), cfg, nullptr));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("suite: ") + e.what());
  }
  emit_reports(a.out, rows);
  return 0;
}

}  // namespace mlsparse::cli
