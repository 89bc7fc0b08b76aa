#include "pcgrad/commands.hpp"

#include <cstdio>
#include <ostream>

#include "pcgrad/descent.hpp"
#include "pcgrad/errors.hpp"
#include "pcgrad/gradients.hpp"
#include "pcgrad/indicators.hpp"
#include "pcgrad/matrix_io.hpp"
#include "pcgrad/repro.hpp"

namespace pcgrad::cli {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNumericError = 2;

std::string six(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int numeric_failure(const PcError& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return kNumericError;
}

int input_failure(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  return kInputError;
}

// Loads the file and exponent; returns false after reporting an input error.
bool load_inputs(const std::filesystem::path& path, const std::string& p_text, MatrixFile& file,
                 std::optional<PExponent>& p, std::ostream& err) {
  try {
    p = PExponent::parse(p_text);
  } catch (const PcError& e) {
    err << "error: --p: " << e.what() << '\n';
    return false;
  }
  try {
    file = read_matrix_file(path);
  } catch (const PcError& e) {
    err << "error: " << path.string() << ": " << e.what() << '\n';
    return false;
  }
  return true;
}

}  // namespace

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  MatrixFile file;
  std::optional<PExponent> p;
  if (!load_inputs(opts.input, opts.p, file, p, err)) return kInputError;
  try {
    out << six(kii(file.additive(), *p)) << '\n';
  } catch (const PcError& e) {
    if (e.kind() == ErrorKind::IndicatorUndefined) return numeric_failure(e, err);
    return input_failure(e, err);
  }
  return kOk;
}

int cmd_gradient(const GradientOptions& opts, std::ostream& out, std::ostream& err) {
  MatrixFile file;
  std::optional<PExponent> p;
  if (!load_inputs(opts.input, opts.p, file, p, err)) return kInputError;
  if (opts.kind != "analytic" && opts.kind != "difference") {
    err << "error: --kind must be analytic or difference\n";
    return kInputError;
  }
  if (opts.kind == "difference" && !(opts.l > 0.0)) {
    err << "error: --l must be positive\n";
    return kInputError;
  }
  DirectionVector dir;
  try {
    const bool additive = file.mode == Scheme::Additive;
    if (opts.kind == "analytic") {
      dir = additive ? instant_pv_np(file.additive(), *p) : instant_pv_np(file.multiplicative(), *p);
    } else {
      dir = additive ? difference_priority_vector(file.additive(), *p, opts.l)
                     : difference_priority_vector(file.multiplicative(), *p, opts.l);
    }
  } catch (const PcError& e) {
    return numeric_failure(e, err);
  }
  for (std::size_t s = 0; s < dir.components.size(); ++s) {
    out << entry_label(s) << ' ' << six(dir.components[s]) << '\n';
  }
  return kOk;
}

int cmd_reduce(const ReduceOptions& opts, std::ostream& out, std::ostream& err) {
  MatrixFile file;
  std::optional<PExponent> p;
  if (!load_inputs(opts.input, opts.p, file, p, err)) return kInputError;

  DescentConfig cfg;
  cfg.scheme = file.mode;
  if (opts.scheme) {
    if (*opts.scheme == "multiplicative") {
      cfg.scheme = Scheme::Multiplicative;
    } else if (*opts.scheme == "additive") {
      cfg.scheme = Scheme::Additive;
    } else {
      err << "error: --scheme must be multiplicative or additive\n";
      return kInputError;
    }
  }
  if (opts.gradient == "analytic") {
    cfg.gradient = GradientKind::Analytic;
  } else if (opts.gradient == "difference") {
    cfg.gradient = GradientKind::Difference;
  } else {
    err << "error: --gradient must be analytic or difference\n";
    return kInputError;
  }
  cfg.p = *p;
  cfg.h = opts.h;
  cfg.l = opts.l;
  cfg.eps = opts.eps;
  cfg.max_iter = opts.max_iter;
  cfg.stall_window = opts.stall_window;

  DescentResult result;
  try {
    cfg.validate(file.order);
    result = file.mode == Scheme::Additive ? run(file.additive(), cfg) : run(file.multiplicative(), cfg);
  } catch (const PcError& e) {
    return input_failure(e, err);
  }

  if (opts.out) {
    try {
      write_trace_file(*opts.out, result);
    } catch (const PcError& e) {
      return input_failure(e, err);
    }
  }

  const auto names = upper_column_names(result.order, result.scheme);
  out << "scheme " << to_string(result.scheme) << '\n';
  out << "stop_reason " << to_string(result.stop_reason) << '\n';
  out << "best_iter " << result.best_iter << '\n';
  out << "best_indicator " << six(result.best_indicator) << '\n';
  for (std::size_t s = 0; s < names.size() && s < result.best_upper.size(); ++s) {
    out << names[s] << ' ' << six(result.best_upper[s]) << '\n';
  }
  if (!result.trace.clamps.empty()) out << "positivity_clamps " << result.trace.clamps.size() << '\n';

  switch (result.stop_reason) {
    case StopReason::Converged:
    case StopReason::Stalled:
    case StopReason::MaxIter:
      return kOk;
    case StopReason::PositivityFailure:
    case StopReason::IndicatorUndefined:
      err << "descent stopped: " << result.stop_detail << '\n';
      return kNumericError;
  }
  return kNumericError;
}

int cmd_repro(const ReproOptions& opts, std::ostream& out, std::ostream& err) {
  ReproSettings settings;
  settings.jobs = opts.jobs == 0 ? 1 : opts.jobs;
  const auto rows = run_repro(settings);
  print_repro_table(out, rows);
  try {
    write_repro_outputs(opts.out_dir, rows);
  } catch (const std::exception& e) {
    return input_failure(e, err);
  }
  out << "traces and summary.csv written to " << opts.out_dir.string() << '\n';
  return kOk;
}

}  // namespace pcgrad::cli
