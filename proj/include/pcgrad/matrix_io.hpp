#pragma once

// Text formats.
//
// Matrix file:
//   # comment
//   mode=multiplicative        (or additive; default multiplicative)
//   n=4                        (present: upper-triangle list follows)
//   0.135, 20.08, 2.718, 1, 1, 1
//
// Without `n=` the data lines are a full comma-separated n x n grid that must
// pass reciprocity (multiplicative) or antisymmetry (additive) checks.
// Upper-triangle lists use the library slot order (column by column).
//
// Trace file: CSV with header `iteration,indicator,a_1_2,...` (b_i_j for the
// additive scheme), one row per recorded iterate, then one `# summary:` line.
// Decimal points only.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pcgrad/descent.hpp"
#include "pcgrad/pc_matrix.hpp"

namespace pcgrad {

struct MatrixFile {
  Scheme mode = Scheme::Multiplicative;
  std::size_t order = 0;
  std::vector<double> upper;

  MultiplicativePCMatrix multiplicative() const;
  AdditivePCMatrix additive() const;
};

// Throws PcError (ParseError with "line L, column C" diagnostics, or the
// validation error of the grid).
MatrixFile parse_matrix_file(std::string_view text);
MatrixFile read_matrix_file(const std::filesystem::path& path);

std::string format_matrix_file(const MultiplicativePCMatrix& m);
std::string format_matrix_file(const AdditivePCMatrix& b);

// Shortest text that reads back to the same double.
std::string format_number(double v);

std::vector<std::string> upper_column_names(std::size_t order, Scheme scheme);

void write_trace(std::ostream& os, const DescentResult& result);
void write_trace_file(const std::filesystem::path& path, const DescentResult& result);

}  // namespace pcgrad
