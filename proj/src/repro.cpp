#include "pcgrad/repro.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>

#include "pcgrad/errors.hpp"
#include "pcgrad/matrix_io.hpp"

namespace pcgrad {

MultiplicativePCMatrix reference_matrix_3x3() {
  return MultiplicativePCMatrix::from_upper(3, {std::exp(-2.0), std::exp(3.0), std::exp(1.0)});
}

AdditivePCMatrix reference_additive_3x3() { return AdditivePCMatrix::from_upper(3, {-2.0, 3.0, 1.0}); }

MultiplicativePCMatrix reference_matrix_4x4() {
  return MultiplicativePCMatrix::from_upper(4, {std::exp(-2.0), std::exp(3.0), std::exp(1.0), 1.0, 1.0, 1.0});
}

std::string PaperRun::file_stem() const {
  auto compact = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  std::string p_text = p.to_string();
  for (char& c : p_text) {
    if (c == '-') c = 'm';
  }
  return table + "_p" + p_text + "_h" + compact(h) + "_l" + compact(l);
}

std::vector<PaperRun> paper_runs() {
  const auto M = Scheme::Multiplicative;
  const auto A = Scheme::Additive;
  const auto one = PExponent::finite(1.0);
  const auto inf = PExponent::infinity();
  const auto two = PExponent::finite(2.0);
  const auto half = PExponent::finite(0.5);
  const auto harmonic = PExponent::finite(-1.0);
  return {
      {"3x3-mult", 3, M, one, 0.1, 0.001, 230, false, {4.045, 19.676, 4.867}},
      {"3x3-mult", 3, M, one, 0.01, 0.001, 2300, false, {4.041, 19.675, 4.868}},
      {"3x3-mult", 3, M, one, 0.001, 0.0001, 23000, false, {4.041, 19.675, 4.868}},
      {"3x3-add", 3, A, one, 0.1, 0.001, 180, false, {-0.714, 1.715, 2.285}},
      {"3x3-add", 3, A, one, 0.01, 0.001, 1800, false, {-0.952, 1.120, 2.047}},
      {"3x3-add", 3, A, one, 0.001, 0.0001, 17800, false, {-0.667, 1.667, 2.332}},
      {"4x4-max", 4, M, inf, 0.1, 0.001, 168, false, {2.517, 19.904, 3.696, 1.398, 1.0, 0.150}},
      {"4x4-max", 4, M, inf, 0.01, 0.001, 3080, false, {3.865, 19.666, 4.812, 1.566, 0.415, 0.083}},
      {"4x4-mean", 4, M, one, 0.1, 0.001, 280, false, {2.768, 19.855, 3.952, 1.544, 0.533, 0.138}},
      {"4x4-mean", 4, M, one, 0.01, 0.001, 4700, false, {3.939, 19.669, 4.812, 1.112, 0.281, 0.057}},
      {"4x4-quadratic", 4, M, two, 0.1, 0.001, 220, false, {2.459, 19.892, 3.757, 1.641, 0.524, 0.106}},
      {"4x4-quadratic", 4, M, two, 0.01, 0.001, 3700, false, {3.571, 19.725, 4.573, 1.613, 0.422, 0.089}},
      {"4x4-sqrt", 4, M, half, 0.01, 0.001, 280, true, {0.700, 20.074, 2.663, 0.926, 1.317, 0.506}},
      {"4x4-sqrt", 4, M, half, 0.001, 0.00001, 2700, false, {0.713, 20.074, 2.662, 0.973, 1.360, 0.512}},
      {"4x4-harmonic", 4, M, harmonic, 0.002, 0.1, 133, true, {0.228, 21.434, 2.678, 0.991, 2.370, 0.895}},
      {"4x4-harmonic", 4, M, harmonic, 0.002, 0.01, 17, true, {0.144, 21.737, 2.713, 0.999, 2.654, 0.986}},
  };
}

DescentConfig config_for(const PaperRun& run, const ReproSettings& settings) {
  DescentConfig cfg;
  cfg.scheme = run.scheme;
  cfg.gradient = GradientKind::Difference;
  cfg.p = run.p;
  cfg.h = run.h;
  cfg.l = run.l;
  cfg.eps = settings.eps;
  cfg.max_iter = settings.max_iter;
  cfg.stall_window = settings.stall_window;
  return cfg;
}

namespace {

ReproRow execute(const PaperRun& run, const ReproSettings& settings) {
  const DescentConfig cfg = config_for(run, settings);
  ReproRow row{run, {}, {}, 0};
  if (run.order == 3 && run.scheme == Scheme::Additive) {
    row.result = pcgrad::run(reference_additive_3x3(), cfg);
  } else if (run.order == 3) {
    row.result = pcgrad::run(reference_matrix_3x3(), cfg);
  } else {
    row.result = pcgrad::run(reference_matrix_4x4(), cfg);
  }
  for (std::size_t s = 0; s < run.reported_entries.size() && s < row.result.best_upper.size(); ++s) {
    row.deviations.push_back(std::abs(row.result.best_upper[s] - run.reported_entries[s]));
  }
  const std::size_t ours = row.result.best_iter;
  row.iter_deviation = ours > run.reported_iter ? ours - run.reported_iter : run.reported_iter - ours;
  return row;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string join_fixed(const std::vector<double>& xs, int digits) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ' ';
    out += fixed(xs[i], digits);
  }
  return out;
}

}  // namespace

std::vector<ReproRow> run_repro(const ReproSettings& settings) {
  const auto runs = paper_runs();
  std::vector<ReproRow> rows(runs.size());
  if (settings.jobs <= 1) {
    for (std::size_t i = 0; i < runs.size(); ++i) rows[i] = execute(runs[i], settings);
    return rows;
  }
  std::vector<std::future<ReproRow>> pending;
  std::size_t next = 0;
  while (next < runs.size()) {
    pending.clear();
    const std::size_t batch_start = next;
    for (unsigned k = 0; k < settings.jobs && next < runs.size(); ++k, ++next) {
      pending.push_back(std::async(std::launch::async, execute, std::cref(runs[next]), std::cref(settings)));
    }
    for (std::size_t k = 0; k < pending.size(); ++k) rows[batch_start + k] = pending[k].get();
  }
  return rows;
}

void print_repro_table(std::ostream& os, const std::vector<ReproRow>& rows) {
  os << "#  table          p     h       l        iter (reported)   stop     entries ours | reported | max dev\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    double max_dev = 0.0;
    for (double d : r.deviations) max_dev = std::max(max_dev, d);
    char head[160];
    std::snprintf(head, sizeof(head), "%-2zu %-14s %-5s %-7g %-8g %6zu (%s%zu)   %-9s ", i + 1, r.run.table.c_str(),
                  r.run.p.to_string().c_str(), r.run.h, r.run.l, r.result.best_iter,
                  r.run.iter_exact ? "=" : "~", r.run.reported_iter,
                  std::string(to_string(r.result.stop_reason)).c_str());
    os << head << join_fixed(r.result.best_upper, 3) << " | " << join_fixed(r.run.reported_entries, 3) << " | "
       << fixed(max_dev, 3) << '\n';
  }
}

void write_repro_summary_csv(std::ostream& os, const std::vector<ReproRow>& rows) {
  constexpr std::size_t kMaxEntries = 6;
  os << "run,table,p,scheme,h,l,best_iter,reported_iter,reported_iter_exact,iter_abs_dev,stop_reason,best_indicator";
  for (std::size_t s = 0; s < kMaxEntries; ++s) os << ",entry_" << s + 1;
  for (std::size_t s = 0; s < kMaxEntries; ++s) os << ",reported_" << s + 1;
  for (std::size_t s = 0; s < kMaxEntries; ++s) os << ",abs_dev_" << s + 1;
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << i + 1 << ',' << r.run.table << ',' << r.run.p.to_string() << ',' << to_string(r.run.scheme) << ','
       << format_number(r.run.h) << ',' << format_number(r.run.l) << ',' << r.result.best_iter << ','
       << r.run.reported_iter << ',' << (r.run.iter_exact ? "true" : "false") << ',' << r.iter_deviation << ','
       << to_string(r.result.stop_reason) << ',' << format_number(r.result.best_indicator);
    auto cells = [&](const std::vector<double>& xs) {
      for (std::size_t s = 0; s < kMaxEntries; ++s) {
        os << ',';
        if (s < xs.size()) os << fixed(xs[s], 6);
      }
    };
    cells(r.result.best_upper);
    cells(r.run.reported_entries);
    cells(r.deviations);
    os << '\n';
  }
}

void write_repro_outputs(const std::filesystem::path& dir, const std::vector<ReproRow>& rows) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "%02zu_", i + 1);
    write_trace_file(dir / (prefix + rows[i].run.file_stem() + ".csv"), rows[i].result);
  }
  std::ofstream summary(dir / "summary.csv", std::ios::binary);
  if (!summary) throw PcError(ErrorKind::InvalidConfig, "cannot write " + (dir / "summary.csv").string());
  write_repro_summary_csv(summary, rows);
}

}  // namespace pcgrad
