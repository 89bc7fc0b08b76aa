#include "pcgrad/pc_matrix.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "pcgrad/errors.hpp"

namespace pcgrad {

namespace {

void require_order(std::size_t n) {
  if (n < 3) {
    throw PcError(ErrorKind::OrderTooSmall, "order " + std::to_string(n) + " < 3, no triads exist");
  }
}

void require_size(std::size_t n, std::size_t got) {
  if (got != upper_size(n)) {
    throw PcError(ErrorKind::InvalidConfig, "expected " + std::to_string(upper_size(n)) +
                                                " upper-triangle entries for order " + std::to_string(n) +
                                                ", got " + std::to_string(got));
  }
}

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorKind::ReciprocityViolation: return "ReciprocityViolation";
    case ErrorKind::BadDiagonal: return "BadDiagonal";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::ZeroWithNegativeExponent: return "ZeroWithNegativeExponent";
    case ErrorKind::IndicatorUndefined: return "IndicatorUndefined";
    case ErrorKind::NonSmoothExponent: return "NonSmoothExponent";
    case ErrorKind::OnConsistentLocus: return "OnConsistentLocus";
    case ErrorKind::DegenerateDefect: return "DegenerateDefect";
    case ErrorKind::PositivityFailure: return "PositivityFailure";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

EntryIndex slot_entry(std::size_t slot) {
  std::size_t j = 1;
  while (upper_slot(0, j + 1) <= slot) ++j;
  return {slot - upper_slot(0, j), j};
}

std::string entry_label(std::size_t slot) {
  const auto [i, j] = slot_entry(slot);
  return pair_label(i, j);
}

std::string triad_label(const Triad& t) {
  return "(" + std::to_string(t.i + 1) + "," + std::to_string(t.j + 1) + "," + std::to_string(t.k + 1) + ")";
}

// --- MultiplicativePCMatrix -------------------------------------------------

MultiplicativePCMatrix MultiplicativePCMatrix::from_upper(std::size_t n, std::vector<double> upper) {
  require_order(n);
  require_size(n, upper.size());
  for (std::size_t s = 0; s < upper.size(); ++s) {
    if (!(upper[s] > 0.0) || !std::isfinite(upper[s])) {
      throw PcError(ErrorKind::NonPositiveEntry, "entry " + entry_label(s) + " = " + std::to_string(upper[s]));
    }
  }
  return MultiplicativePCMatrix(n, std::move(upper));
}

double MultiplicativePCMatrix::operator()(std::size_t row, std::size_t col) const {
  if (row == col) return 1.0;
  if (row < col) return upper_[upper_slot(row, col)];
  return 1.0 / upper_[upper_slot(col, row)];
}

std::vector<double> MultiplicativePCMatrix::full() const {
  std::vector<double> grid(n_ * n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) grid[r * n_ + c] = (*this)(r, c);
  return grid;
}

MultiplicativePCMatrix MultiplicativePCMatrix::transposed() const {
  std::vector<double> up(upper_.size());
  for (std::size_t s = 0; s < up.size(); ++s) up[s] = 1.0 / upper_[s];
  return MultiplicativePCMatrix(n_, std::move(up));
}

MultiplicativePCMatrix MultiplicativePCMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw PcError(ErrorKind::InvalidConfig, "permutation size mismatch");
  std::vector<double> up(upper_.size());
  for (std::size_t j = 1; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i) up[upper_slot(i, j)] = (*this)(perm[i], perm[j]);
  return MultiplicativePCMatrix(n_, std::move(up));
}

// --- AdditivePCMatrix -------------------------------------------------------

AdditivePCMatrix AdditivePCMatrix::from_upper(std::size_t n, std::vector<double> upper) {
  require_order(n);
  require_size(n, upper.size());
  for (std::size_t s = 0; s < upper.size(); ++s) {
    if (!std::isfinite(upper[s])) {
      throw PcError(ErrorKind::ParseError, "entry " + entry_label(s) + " is not finite");
    }
  }
  return AdditivePCMatrix(n, std::move(upper));
}

double AdditivePCMatrix::operator()(std::size_t row, std::size_t col) const {
  if (row == col) return 0.0;
  if (row < col) return upper_[upper_slot(row, col)];
  return -upper_[upper_slot(col, row)];
}

// --- triads -----------------------------------------------------------------

std::vector<Triad> enumerate_triads(std::size_t n) {
  require_order(n);
  std::vector<Triad> out;
  out.reserve(triad_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

// --- priority vectors -------------------------------------------------------

PriorityVector::PriorityVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw PcError(ErrorKind::NonPositiveWeight, "empty weight vector");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0) || !std::isfinite(w_[i])) {
      throw PcError(ErrorKind::NonPositiveWeight, "w_" + std::to_string(i + 1) + " = " + std::to_string(w_[i]));
    }
  }
}

PriorityVector PriorityVector::normalized() const {
  const double total = std::accumulate(w_.begin(), w_.end(), 0.0);
  std::vector<double> out(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) out[i] = w_[i] / total;
  return PriorityVector(std::move(out));
}

// --- validation and conversions ---------------------------------------------

MultiplicativePCMatrix validate_multiplicative(std::size_t n, std::span<const double> grid, double tol) {
  require_order(n);
  if (grid.size() != n * n) {
    throw PcError(ErrorKind::InvalidConfig, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " grid");
  }
  auto at = [&](std::size_t r, std::size_t c) { return grid[r * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!(at(r, c) > 0.0) || !std::isfinite(at(r, c))) {
        throw PcError(ErrorKind::NonPositiveEntry, "entry " + pair_label(r, c) + " = " + std::to_string(at(r, c)));
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (std::abs(at(r, r) - 1.0) > tol) {
      throw PcError(ErrorKind::BadDiagonal, "diagonal entry " + pair_label(r, r) + " = " + std::to_string(at(r, r)));
    }
  }
  std::vector<double> up(upper_size(n));
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double residual = std::abs(at(i, j) * at(j, i) - 1.0);
      if (residual > tol) {
        std::ostringstream msg;
        msg << "entries " << pair_label(i, j) << " and " << pair_label(j, i) << " are not reciprocal, residual "
            << residual;
        throw PcError(ErrorKind::ReciprocityViolation, msg.str());
      }
      up[upper_slot(i, j)] = at(i, j);
    }
  }
  return MultiplicativePCMatrix::from_upper(n, std::move(up));
}

AdditivePCMatrix validate_additive(std::size_t n, std::span<const double> grid, double tol) {
  require_order(n);
  if (grid.size() != n * n) {
    throw PcError(ErrorKind::InvalidConfig, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " grid");
  }
  auto at = [&](std::size_t r, std::size_t c) { return grid[r * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    if (std::abs(at(r, r)) > tol) {
      throw PcError(ErrorKind::BadDiagonal, "diagonal entry " + pair_label(r, r) + " = " + std::to_string(at(r, r)));
    }
  }
  std::vector<double> up(upper_size(n));
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double residual = std::abs(at(i, j) + at(j, i));
      if (residual > tol) {
        std::ostringstream msg;
        msg << "entries " << pair_label(i, j) << " and " << pair_label(j, i) << " are not antisymmetric, residual "
            << residual;
        throw PcError(ErrorKind::ReciprocityViolation, msg.str());
      }
      up[upper_slot(i, j)] = at(i, j);
    }
  }
  return AdditivePCMatrix::from_upper(n, std::move(up));
}

AdditivePCMatrix to_additive(const MultiplicativePCMatrix& m) {
  std::vector<double> up(m.upper().begin(), m.upper().end());
  for (double& v : up) v = std::log(v);
  return AdditivePCMatrix::from_upper(m.order(), std::move(up));
}

MultiplicativePCMatrix to_multiplicative(const AdditivePCMatrix& b) {
  std::vector<double> up(b.upper().begin(), b.upper().end());
  for (double& v : up) v = std::exp(v);
  return MultiplicativePCMatrix::from_upper(b.order(), std::move(up));
}

double triad_defect(const AdditivePCMatrix& b, const Triad& t) {
  const auto up = b.upper();
  return std::abs(up[t.ij_slot()] + up[t.jk_slot()] - up[t.ik_slot()]);
}

bool is_consistent(const MultiplicativePCMatrix& m, double tol) {
  const AdditivePCMatrix b = to_additive(m);
  for (const Triad& t : enumerate_triads(m.order())) {
    if (triad_defect(b, t) > tol) return false;
  }
  return true;
}

MultiplicativePCMatrix consistent_from_weights(const PriorityVector& w) {
  const auto ws = w.weights();
  const std::size_t n = ws.size();
  require_order(n);
  std::vector<double> up(upper_size(n));
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) up[upper_slot(i, j)] = ws[i] / ws[j];
  return MultiplicativePCMatrix::from_upper(n, std::move(up));
}

PriorityVector gmm_priority_vector(const MultiplicativePCMatrix& m) {
  // Row means of the additive form: sum_j b_ij / n, exponentiated.
  const std::size_t n = m.order();
  const AdditivePCMatrix b = to_additive(m);
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) row += b(r, c);
    w[r] = std::exp(row / static_cast<double>(n));
  }
  return PriorityVector(std::move(w)).normalized();
}

}  // namespace pcgrad
