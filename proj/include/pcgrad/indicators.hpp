#pragma once

// p-averages and the p-inconsistency indicators
//
//   Kii_{n,p}(A) = 1 - exp(-M_p(d_1, ..., d_N)),   N = C(n,3),
//
// where d_t = |b_ij + b_jk - b_ik| are the triad defects of the additive form
// and M_p is the power mean ((1/N) sum d_t^p)^(1/p), or max for p = inf.
// p = inf is Koczkodaj's index.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcgrad/pc_matrix.hpp"

namespace pcgrad {

// Defects below this count as exact zeros when p < 0.
inline constexpr double kZeroDefect = 1e-12;

class PExponent {
 public:
  // Throws InvalidExponent for 0, NaN or +-inf (use infinity() for the max).
  static PExponent finite(double p);
  static PExponent infinity() { return PExponent(std::nullopt); }

  // Decimal literal or "inf". Throws InvalidExponent / ParseError.
  static PExponent parse(std::string_view text);

  bool is_infinite() const noexcept { return !p_.has_value(); }
  bool is_finite() const noexcept { return p_.has_value(); }

  // Only meaningful for finite exponents.
  double value() const;

  std::string to_string() const;

  friend bool operator==(const PExponent&, const PExponent&) = default;

 private:
  explicit PExponent(std::optional<double> p) : p_(p) {}

  std::optional<double> p_;
};

double p_average(std::span<const double> xs, PExponent p);

// Koczkodaj index of a single triad (x, y, z) = (a_ij, a_ik, a_jk), computed as
// 1 - exp(-|ln(y / xz)|).
double kii3(double x, double y, double z);

// 1 - min(y/xz, xz/y). Kept as an independent closed form for cross-checks.
double kii3_min_form(double x, double y, double z);

// Triad defects in enumerate_triads order.
std::vector<double> triad_defects(const AdditivePCMatrix& b);

// Indicator straight from an upper triangle of logs; no matrix construction.
double kii_from_log_upper(std::size_t n, std::span<const double> log_upper, PExponent p);

double kii(const AdditivePCMatrix& b, PExponent p);
double kii(const MultiplicativePCMatrix& m, PExponent p);

}  // namespace pcgrad
