#include "pcgrad/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pcgrad/errors.hpp"

namespace pcgrad {

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& what) {
  throw PcError(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string_view text;
  std::size_t col;  // 1-based
};

std::vector<Token> split_fields(std::string_view line) {
  std::vector<Token> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    std::size_t a = start;
    std::size_t b = end;
    while (a < b && is_space(line[a])) ++a;
    while (b > a && is_space(line[b - 1])) --b;
    out.push_back({line.substr(a, b - a), a + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const Token& tok, std::size_t line) {
  if (tok.text.empty()) parse_fail(line, tok.col, "empty field");
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    parse_fail(line, tok.col, "'" + std::string(tok.text) + "' is not a decimal number");
  }
  return v;
}

}  // namespace

MultiplicativePCMatrix MatrixFile::multiplicative() const {
  if (mode == Scheme::Multiplicative) return MultiplicativePCMatrix::from_upper(order, upper);
  return to_multiplicative(additive());
}

AdditivePCMatrix MatrixFile::additive() const {
  if (mode == Scheme::Additive) return AdditivePCMatrix::from_upper(order, upper);
  return to_additive(multiplicative());
}

MatrixFile parse_matrix_file(std::string_view text) {
  MatrixFile out;
  std::size_t declared_order = 0;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> row_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t lead = 0;
    while (lead < line.size() && is_space(line[lead])) ++lead;
    if (lead == line.size()) continue;

    if (const std::size_t eq = line.find('='); eq != std::string_view::npos) {
      std::string_view key = line.substr(lead, eq - lead);
      while (!key.empty() && is_space(key.back())) key.remove_suffix(1);
      std::string_view value = line.substr(eq + 1);
      while (!value.empty() && is_space(value.front())) value.remove_prefix(1);
      while (!value.empty() && is_space(value.back())) value.remove_suffix(1);
      if (key == "mode") {
        if (value == "multiplicative") {
          out.mode = Scheme::Multiplicative;
        } else if (value == "additive") {
          out.mode = Scheme::Additive;
        } else {
          parse_fail(line_no, eq + 2, "mode must be multiplicative or additive");
        }
      } else if (key == "n") {
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
          parse_fail(line_no, eq + 2, "order must be a positive integer");
        }
        declared_order = n;
      } else {
        parse_fail(line_no, lead + 1, "unknown key '" + std::string(key) + "'");
      }
      continue;
    }

    std::vector<double> row;
    for (const Token& tok : split_fields(line)) row.push_back(parse_number(tok, line_no));
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }

  if (rows.empty()) parse_fail(line_no, 1, "no matrix data");

  if (declared_order != 0) {
    for (auto& r : rows) out.upper.insert(out.upper.end(), r.begin(), r.end());
    if (declared_order < 3) throw PcError(ErrorKind::OrderTooSmall, "n = " + std::to_string(declared_order));
    if (out.upper.size() != upper_size(declared_order)) {
      parse_fail(row_lines.back(), 1,
                 "expected " + std::to_string(upper_size(declared_order)) + " upper-triangle entries for n=" +
                     std::to_string(declared_order) + ", got " + std::to_string(out.upper.size()));
    }
    out.order = declared_order;
    // Validate through the typed constructors.
    if (out.mode == Scheme::Multiplicative) {
      (void)out.multiplicative();
    } else {
      (void)out.additive();
    }
    return out;
  }

  const std::size_t n = rows.size();
  std::vector<double> grid;
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      parse_fail(row_lines[r], 1,
                 "row has " + std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n));
    }
    grid.insert(grid.end(), rows[r].begin(), rows[r].end());
  }
  out.order = n;
  if (out.mode == Scheme::Multiplicative) {
    const auto m = validate_multiplicative(n, grid);
    out.upper.assign(m.upper().begin(), m.upper().end());
  } else {
    const auto b = validate_additive(n, grid);
    out.upper.assign(b.upper().begin(), b.upper().end());
  }
  return out;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PcError(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_file(buf.str());
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::string format_upper(std::string_view mode, std::size_t n, std::span<const double> up) {
  std::string out = "mode=" + std::string(mode) + "\nn=" + std::to_string(n) + "\n";
  for (std::size_t s = 0; s < up.size(); ++s) {
    if (s > 0) out += ", ";
    out += format_number(up[s]);
  }
  out += "\n";
  return out;
}

}  // namespace

std::string format_matrix_file(const MultiplicativePCMatrix& m) {
  return format_upper("multiplicative", m.order(), m.upper());
}

std::string format_matrix_file(const AdditivePCMatrix& b) { return format_upper("additive", b.order(), b.upper()); }

std::vector<std::string> upper_column_names(std::size_t order, Scheme scheme) {
  const char prefix = scheme == Scheme::Multiplicative ? 'a' : 'b';
  std::vector<std::string> names;
  for (std::size_t s = 0; s < upper_size(order); ++s) {
    const auto [i, j] = slot_entry(s);
    names.push_back(std::string(1, prefix) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  }
  return names;
}

void write_trace(std::ostream& os, const DescentResult& result) {
  const auto names = upper_column_names(result.order, result.scheme);
  os << "iteration,indicator";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  for (const auto& rec : result.trace.records) {
    os << rec.iter << ',' << format_number(rec.indicator);
    for (double v : rec.upper) os << ',' << format_number(v);
    os << '\n';
  }
  os << "# summary: stop_reason=" << to_string(result.stop_reason) << ",best_iter=" << result.best_iter
     << ",best_indicator=" << format_number(result.best_indicator);
  for (std::size_t s = 0; s < names.size() && s < result.best_upper.size(); ++s) {
    os << ',' << names[s] << '=' << format_number(result.best_upper[s]);
  }
  os << '\n';
}

void write_trace_file(const std::filesystem::path& path, const DescentResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PcError(ErrorKind::InvalidConfig, "cannot write " + path.string());
  write_trace(out, result);
}

}  // namespace pcgrad
