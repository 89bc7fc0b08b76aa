#include "pcgrad/indicators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pcgrad/errors.hpp"
#include "pcgrad/kernels.hpp"

namespace pcgrad {

PExponent PExponent::finite(double p) {
  if (!std::isfinite(p)) {
    throw PcError(ErrorKind::InvalidExponent, "finite exponent expected, got " + std::to_string(p));
  }
  if (p == 0.0) {
    throw PcError(ErrorKind::InvalidExponent, "p = 0 gives a constant indicator");
  }
  return PExponent(p);
}

PExponent PExponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "+inf" || text == "infinity") {
    return infinity();
  }
  double p = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last) {
    throw PcError(ErrorKind::ParseError, "cannot parse exponent '" + std::string(text) + "'");
  }
  return finite(p);
}

double PExponent::value() const {
  if (!p_) throw PcError(ErrorKind::InvalidExponent, "infinite exponent has no finite value");
  return *p_;
}

std::string PExponent::to_string() const {
  if (!p_) return "inf";
  std::ostringstream os;
  os << *p_;
  return os.str();
}

double p_average(std::span<const double> xs, PExponent p) {
  if (xs.empty()) throw PcError(ErrorKind::InvalidConfig, "p-average of an empty list");
  for (double x : xs) {
    if (!(x >= 0.0)) throw PcError(ErrorKind::InvalidConfig, "p-average needs nonnegative values");
  }
  const auto& k = kernels::active();
  if (p.is_infinite()) return k.max(xs.data(), xs.size());

  const double e = p.value();
  const double count = static_cast<double>(xs.size());
  if (e < 0.0) {
    const double smallest = k.min(xs.data(), xs.size());
    if (smallest < kZeroDefect) {
      throw PcError(ErrorKind::ZeroWithNegativeExponent,
                    "value " + std::to_string(smallest) + " is zero for p = " + p.to_string());
    }
  }
  if (e == 1.0) return k.sum(xs.data(), xs.size()) / count;
  if (e == 2.0) return std::sqrt(k.sum_squares(xs.data(), xs.size()) / count);
  return std::pow(kernels::power_sum(xs, e) / count, 1.0 / e);
}

double kii3(double x, double y, double z) {
  const double u = std::log(y) - std::log(x) - std::log(z);
  return 1.0 - std::exp(-std::abs(u));
}

double kii3_min_form(double x, double y, double z) {
  const double r = y / (x * z);
  return 1.0 - std::min(r, 1.0 / r);
}

namespace {

std::vector<double> defects_of(std::size_t n, std::span<const double> log_upper) {
  const auto& slots = kernels::triad_slots(n);
  std::vector<double> d(slots.size());
  kernels::triad_defects(log_upper, slots, d);
  return d;
}

}  // namespace

std::vector<double> triad_defects(const AdditivePCMatrix& b) { return defects_of(b.order(), b.upper()); }

double kii(const AdditivePCMatrix& b, PExponent p) { return kii_from_log_upper(b.order(), b.upper(), p); }

double kii_from_log_upper(std::size_t n, std::span<const double> log_upper, PExponent p) {
  if (n < 3 || log_upper.size() != upper_size(n)) {
    throw PcError(ErrorKind::InvalidConfig, "upper triangle does not match order " + std::to_string(n));
  }
  const std::vector<double> d = defects_of(n, log_upper);
  if (p.is_finite() && p.value() < 0.0) {
    const auto triads = enumerate_triads(n);
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (d[t] < kZeroDefect) {
        std::ostringstream msg;
        msg << "Kii with p = " << p.to_string() << " is undefined: triad " << triad_label(triads[t])
            << " is consistent (defect " << d[t] << ")";
        throw PcError(ErrorKind::IndicatorUndefined, msg.str());
      }
    }
  }
  return 1.0 - std::exp(-p_average(d, p));
}

double kii(const MultiplicativePCMatrix& m, PExponent p) { return kii(to_additive(m), p); }

}  // namespace pcgrad
