#pragma once

// Subcommand bodies for the `pcgrad` tool. Each returns the process exit
// code: 0 on success, 1 for input/flag errors, 2 for numerical failures
// (undefined indicator, non-smooth exponent, consistent locus, stopped
// descent).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace pcgrad::cli {

struct EvaluateOptions {
  std::filesystem::path input;
  std::string p = "1";
};

struct GradientOptions {
  std::filesystem::path input;
  std::string p = "1";
  std::string kind = "analytic";  // analytic | difference
  double l = 1e-6;
};

struct ReduceOptions {
  std::filesystem::path input;
  std::optional<std::string> scheme;  // defaults to the file's mode
  std::string gradient = "difference";
  std::string p = "1";
  double h = 0.01;
  double l = 0.001;
  double eps = 1e-4;
  std::size_t max_iter = 100000;
  std::size_t stall_window = 50;
  std::optional<std::filesystem::path> out;
};

struct ReproOptions {
  std::filesystem::path out_dir = "repro_out";
  unsigned jobs = 1;
};

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gradient(const GradientOptions& opts, std::ostream& out, std::ostream& err);
int cmd_reduce(const ReduceOptions& opts, std::ostream& out, std::ostream& err);
int cmd_repro(const ReproOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace pcgrad::cli
