#pragma once

// Built-in reproduction of the published consistencization tables: every
// (p, scheme, h, l) row, its reported best iteration and entries, and the
// values obtained here.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcgrad/descent.hpp"

namespace pcgrad {

// 3x3 start (a_12, a_13, a_23) = (e^-2, e^3, e).
MultiplicativePCMatrix reference_matrix_3x3();
// Its additive form (-2, 3, 1).
AdditivePCMatrix reference_additive_3x3();
// 4x4 start: the 3x3 block bordered by ones.
MultiplicativePCMatrix reference_matrix_4x4();

struct PaperRun {
  std::string table;  // short label, e.g. "3x3-mult"
  std::size_t order = 3;
  Scheme scheme = Scheme::Multiplicative;
  PExponent p = PExponent::finite(1.0);
  double h = 0.0;
  double l = 0.0;
  std::size_t reported_iter = 0;
  bool iter_exact = false;             // printed as "=" rather than "~"
  std::vector<double> reported_entries;  // slot order, scheme coordinates

  std::string file_stem() const;
};

std::vector<PaperRun> paper_runs();

struct ReproRow {
  PaperRun run;
  DescentResult result;
  std::vector<double> deviations;  // |ours - reported| per entry
  std::size_t iter_deviation = 0;
};

// Settings shared by every run (eps, max_iter, stall_window); the run table
// supplies scheme, gradient = difference, p, h and l.
struct ReproSettings {
  double eps = 1e-4;
  std::size_t max_iter = 100000;
  std::size_t stall_window = 50;
  unsigned jobs = 1;
};

DescentConfig config_for(const PaperRun& run, const ReproSettings& settings);

// Rows come back in table order regardless of `jobs`.
std::vector<ReproRow> run_repro(const ReproSettings& settings = {});

void print_repro_table(std::ostream& os, const std::vector<ReproRow>& rows);
void write_repro_summary_csv(std::ostream& os, const std::vector<ReproRow>& rows);

// Writes one trace per run plus summary.csv into `dir`.
void write_repro_outputs(const std::filesystem::path& dir, const std::vector<ReproRow>& rows);

}  // namespace pcgrad
