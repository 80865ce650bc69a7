#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "mlsparse/error.hpp"
#include "mlsparse/parallel.hpp"

using namespace mlsparse::cli;

int main(int argc, char** argv) {
  CLI::App app{"Multilevel solvers for l1-regularized sparse inverse covariance and logistic regression"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker cap (default: MLSPARSE_THREADS or 1)")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "Generate synthetic data");
  gen->require_subcommand(1);
  GenCovselArgs gc;
  auto* gen_cov = gen->add_subcommand("covsel", "Planar-Laplacian precision matrix and Gaussian samples");
  gen_cov->add_option("--n", gc.n, "Points before boundary trimming")->required()->check(CLI::Range(10, 1000000));
  gen_cov->add_option("--m", gc.m, "Samples")->capture_default_str()->check(CLI::Range(2, 100000000));
  gen_cov->add_option("--seed", gc.seed)->capture_default_str();
  gen_cov->add_option("--out", gc.out, "Output prefix")->capture_default_str();

  GenLogregArgs gl;
  auto* gen_lr = gen->add_subcommand("logreg", "Sparse synthetic logistic regression dataset (libsvm)");
  gen_lr->add_option("--n", gl.n, "Features")->required()->check(CLI::PositiveNumber);
  gen_lr->add_option("--m", gl.m, "Samples")->required()->check(CLI::PositiveNumber);
  gen_lr->add_option("--sparsity", gl.sparsity, "Fraction of informative features")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, 1.0));
  gen_lr->add_option("--density", gl.density, "Feature density per sample")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, 1.0));
  gen_lr->add_option("--seed", gl.seed)->capture_default_str();
  gen_lr->add_option("--out", gl.out)->capture_default_str();

  CovselArgs ca;
  auto* cov = app.add_subcommand("covsel", "Sparse inverse covariance estimation");
  cov->add_option("--data", ca.data, "Sample CSV (rows = variables)")->required();
  cov->add_option("--lambda", ca.lambda)->required()->check(CLI::PositiveNumber);
  cov->add_option("--solver", ca.solver)
      ->capture_default_str()
      ->check(CLI::IsMember({"bcd", "ml-bcd", "continuation", "dc"}));
  cov->add_option("--block-size", ca.cfg.bcd.block_size)->capture_default_str()->check(CLI::PositiveNumber);
  cov->add_option("--cg-tol-block", ca.cfg.bcd.block_cg_tol)->capture_default_str()->check(CLI::Range(1e-16, 0.999));
  cov->add_option("--cg-tol-neighbor", ca.cfg.bcd.neighbor_cg_tol)
      ->capture_default_str()
      ->check(CLI::Range(1e-16, 0.999));
  cov->add_option("--newton-tol", ca.cfg.bcd.newton_tol)->capture_default_str()->check(CLI::Range(1e-16, 0.999));
  cov->add_option("--stop-tol", ca.cfg.bcd.stop_tol)->capture_default_str()->check(CLI::PositiveNumber);
  cov->add_option("--max-iter", ca.cfg.bcd.max_iterations)->capture_default_str();
  cov->add_option("--dc-floor", ca.cfg.dc_floor)->capture_default_str()->check(CLI::PositiveNumber);
  cov->add_option("--seed", ca.seed, "Recorded in the report")->capture_default_str();
  cov->add_option("--out", ca.out, "Matrix Market solution")->capture_default_str();
  cov->add_option("--report", ca.report, "CSV report (stdout when omitted)");
  cov->add_option("--trace", ca.trace, "Per-iteration trace CSV");

  LogregArgs la;
  auto* lr = app.add_subcommand("logreg", "l1-regularized logistic regression");
  lr->add_option("--data", la.data, "libsvm dataset")->required();
  lr->add_option("--C", la.cfg.C)->capture_default_str()->check(CLI::PositiveNumber);
  lr->add_option("--algo", la.algo)
      ->capture_default_str()
      ->check(CLI::IsMember({"cdn", "ml-cdn", "glmnet", "ml-glmnet"}));
  lr->add_option("--eps", la.cfg.eps)->capture_default_str()->check(CLI::PositiveNumber);
  lr->add_option("--max-iter", la.cfg.max_iterations)->capture_default_str();
  lr->add_option("--inner-sweeps", la.cfg.glmnet_inner_sweeps, "GLMNET inner coordinate descent sweeps")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  lr->add_flag("--bias", la.bias, "Append an unregularized bias feature");
  lr->add_option("--out", la.out, "Sparse model text")->capture_default_str();
  lr->add_option("--report", la.report, "CSV report (stdout when omitted)");
  lr->add_option("--trace", la.trace, "Per-iteration trace CSV");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a JSON benchmark suite and emit one CSV row per run");
  bench->add_option("--suite", ba.suite)->required();
  bench->add_option("--out", ba.out, "CSV output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (threads > 0) mlsparse::set_thread_cap(threads);
    if (*gen_cov) return cmd_gen_covsel(gc);
    if (*gen_lr) return cmd_gen_logreg(gl);
    if (*cov) return cmd_covsel(ca);
    if (*lr) return cmd_logreg(la);
    if (*bench) return cmd_bench(ba);
  } catch (const mlsparse::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
