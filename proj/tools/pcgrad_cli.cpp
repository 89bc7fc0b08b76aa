// pcgrad: evaluate, inspect and reduce the inconsistency of pairwise
// comparison matrices.

#include <iostream>

#include "CLI11.hpp"
#include "pcgrad/commands.hpp"

int main(int argc, char** argv) {
  using namespace pcgrad::cli;

  CLI::App app{"Inconsistency reduction for pairwise comparison matrices"};
  app.require_subcommand(1);
  // "-h" would clash with the step-size option --h.
  app.set_help_flag("--help", "Print this help message and exit");

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Print the p-inconsistency indicator of a matrix file");
  evaluate->add_option("input", eval.input, "Matrix file")->required();
  evaluate->add_option("--p", eval.p, "Exponent: decimal or inf")->capture_default_str();

  GradientOptions grad;
  auto* gradient = app.add_subcommand("gradient", "Print the instant or difference priority vector");
  gradient->add_option("input", grad.input, "Matrix file")->required();
  gradient->add_option("--p", grad.p, "Exponent: decimal or inf")->capture_default_str();
  gradient->add_option("--kind", grad.kind, "analytic or difference")->capture_default_str();
  gradient->add_option("--l", grad.l, "Difference increment")->capture_default_str();

  ReduceOptions red;
  auto* reduce = app.add_subcommand("reduce", "Run a consistencization descent and write its trace");
  reduce->add_option("input", red.input, "Matrix file")->required();
  reduce->add_option("--scheme", red.scheme, "multiplicative or additive (default: file mode)");
  reduce->add_option("--gradient", red.gradient, "analytic or difference")->capture_default_str();
  reduce->add_option("--p", red.p, "Exponent: decimal or inf")->capture_default_str();
  reduce->add_option("--h", red.h, "Step size")->capture_default_str();
  reduce->add_option("--l", red.l, "Difference increment")->capture_default_str();
  reduce->add_option("--eps", red.eps, "Target indicator value")->capture_default_str();
  reduce->add_option("--max-iter", red.max_iter, "Iteration cap")->capture_default_str();
  reduce->add_option("--stall-window", red.stall_window, "Iterations without progress before stopping")
      ->capture_default_str();
  reduce->add_option("--out", red.out, "Trace CSV output path");

  ReproOptions rep;
  auto* repro = app.add_subcommand("repro", "Re-run every published table configuration");
  repro->add_option("--out-dir", rep.out_dir, "Directory for traces and summary.csv")->capture_default_str();
  repro->add_option("--jobs", rep.jobs, "Runs executed concurrently")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*evaluate) return cmd_evaluate(eval, std::cout, std::cerr);
  if (*gradient) return cmd_gradient(grad, std::cout, std::cerr);
  if (*reduce) return cmd_reduce(red, std::cout, std::cerr);
  return cmd_repro(rep, std::cout, std::cerr);
}
