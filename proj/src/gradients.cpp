#include "pcgrad/gradients.hpp"

#include <cmath>
#include <sstream>

#include "pcgrad/errors.hpp"
#include "pcgrad/kernels.hpp"

namespace pcgrad {

namespace {

double sign_of(double u) { return u > 0.0 ? 1.0 : -1.0; }

void require_off_locus(double u, const char* where) {
  if (std::abs(u) < kZeroDefect) {
    std::ostringstream msg;
    msg << where << ": triad is consistent (|u| = " << std::abs(u) << "), gradient undefined";
    throw PcError(ErrorKind::OnConsistentLocus, msg.str());
  }
}

void require_increment(double l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw PcError(ErrorKind::InvalidConfig, "difference increment must be positive, got " + std::to_string(l));
  }
}

void require_smooth(std::size_t n, PExponent p) {
  if (p.is_infinite() || p.value() == 1.0) {
    throw PcError(ErrorKind::NonSmoothExponent, "Kii_{" + std::to_string(n) + "," + p.to_string() +
                                                    "} has no continuous gradient; use the difference gradient");
  }
}

// -grad Kii_{n,p} in log coordinates, n > 3.
std::vector<double> log_space_descent(std::size_t n, std::span<const double> log_upper, PExponent p) {
  require_smooth(n, p);
  const auto& slots = kernels::triad_slots(n);
  std::vector<double> d(slots.size());
  kernels::triad_defects(log_upper, slots, d);

  std::size_t degenerate = 0;
  for (double dt : d) degenerate += dt < kMinGradientDefect ? 1 : 0;
  if (degenerate == d.size()) {
    throw PcError(ErrorKind::OnConsistentLocus, "matrix is consistent, gradient undefined");
  }
  if (degenerate > 0) {
    const auto triads = enumerate_triads(n);
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (d[t] < kMinGradientDefect) {
        std::ostringstream msg;
        msg << "triad " << triad_label(triads[t]) << " has defect " << d[t] << " < " << kMinGradientDefect
            << "; analytic gradient is not defined there";
        throw PcError(ErrorKind::DegenerateDefect, msg.str());
      }
    }
  }

  const double e = p.value();
  const double mean = p_average(d, p);
  // d Kii / d d_t = exp(-M) * M^(1-p) * d_t^(p-1) / N
  const double scale = std::exp(-mean) * std::pow(mean, 1.0 - e) / static_cast<double>(d.size());

  std::vector<double> grad(log_upper.size(), 0.0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    const double signed_cycle = (log_upper[slots.ij[t]] + log_upper[slots.jk[t]]) - log_upper[slots.ik[t]];
    const double w = std::pow(d[t], e - 1.0) * sign_of(signed_cycle);
    grad[slots.ij[t]] += w;
    grad[slots.jk[t]] += w;
    grad[slots.ik[t]] -= w;
  }
  for (double& g : grad) g *= -scale;
  return grad;
}

// Forward quotients over log-upper coordinates; `perturbed_log` maps the
// slot value to its perturbed log value.
template <typename Perturb>
DirectionVector forward_differences(std::size_t n, std::vector<double> log_upper, PExponent p, double l,
                                    Perturb perturbed_log) {
  const double base = kii_from_log_upper(n, log_upper, p);
  DirectionVector out{n, std::vector<double>(log_upper.size())};
  for (std::size_t s = 0; s < log_upper.size(); ++s) {
    const double saved = log_upper[s];
    log_upper[s] = perturbed_log(s);
    const double moved = kii_from_log_upper(n, log_upper, p);
    log_upper[s] = saved;
    out.components[s] = (moved - base) / l;
  }
  return out;
}

}  // namespace

double DirectionVector::norm() const {
  double acc = 0.0;
  for (double c : components) acc += c * c;
  return std::sqrt(acc);
}

DirectionVector DirectionVector::operator-() const {
  DirectionVector out{order, components};
  for (double& c : out.components) c = -c;
  return out;
}

DirectionVector instant_pv3_mult(double x, double y, double z) {
  const double u = std::log(y) - std::log(x) - std::log(z);
  require_off_locus(u, "instant_pv3_mult");
  const double f = sign_of(u) * std::exp(-std::abs(u));
  return {3, {f / x, -f / y, f / z}};
}

DirectionVector instant_pv3_add(double a, double b, double c) {
  const double u = a + c - b;
  require_off_locus(u, "instant_pv3_add");
  const double f = sign_of(u) * std::exp(-std::abs(u));
  return {3, {-f, f, -f}};
}

DirectionVector instant_pv_np(const MultiplicativePCMatrix& m, PExponent p) {
  const auto up = m.upper();
  if (m.order() == 3) return instant_pv3_mult(up[0], up[1], up[2]);
  const AdditivePCMatrix b = to_additive(m);
  std::vector<double> dir = log_space_descent(m.order(), b.upper(), p);
  // d/da = (1/a) d/db
  for (std::size_t s = 0; s < dir.size(); ++s) dir[s] /= up[s];
  return {m.order(), std::move(dir)};
}

DirectionVector instant_pv_np(const AdditivePCMatrix& b, PExponent p) {
  const auto up = b.upper();
  if (b.order() == 3) return instant_pv3_add(up[0], up[1], up[2]);
  return {b.order(), log_space_descent(b.order(), up, p)};
}

DirectionVector difference_gradient(const MultiplicativePCMatrix& m, PExponent p, double l) {
  require_increment(l);
  const auto up = m.upper();
  std::vector<double> logs(up.size());
  for (std::size_t s = 0; s < up.size(); ++s) logs[s] = std::log(up[s]);
  return forward_differences(m.order(), std::move(logs), p, l, [&](std::size_t s) { return std::log(up[s] + l); });
}

DirectionVector difference_gradient(const AdditivePCMatrix& b, PExponent p, double l) {
  require_increment(l);
  const auto up = b.upper();
  return forward_differences(b.order(), std::vector<double>(up.begin(), up.end()), p, l,
                             [&](std::size_t s) { return up[s] + l; });
}

DirectionVector difference_priority_vector(const MultiplicativePCMatrix& m, PExponent p, double l) {
  return -difference_gradient(m, p, l);
}

DirectionVector difference_priority_vector(const AdditivePCMatrix& b, PExponent p, double l) {
  return -difference_gradient(b, p, l);
}

}  // namespace pcgrad
