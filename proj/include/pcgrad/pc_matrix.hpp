#pragma once

// Pairwise-comparison matrices in multiplicative and additive (log) form.
//
// Both forms store only the strict upper triangle. Reciprocity
// (a_ji = 1/a_ij, b_ji = -b_ij) and the unit/zero diagonal are implied by
// the representation, so no update can break them.
//
// Upper-triangle slots are ordered column by column:
//   (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
// so the first three slots of any matrix are its leading 3x3 triad, and the
// layout of an n x n matrix is a prefix of the (n+1) x (n+1) layout.
// All indices in the C++ API are 0-based; text output uses 1-based labels.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pcgrad {

inline constexpr double kReciprocityTolerance = 1e-9;

constexpr std::size_t upper_size(std::size_t n) { return n * (n - 1) / 2; }

// Slot of entry (i, j), i < j.
constexpr std::size_t upper_slot(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }

struct EntryIndex {
  std::size_t i;
  std::size_t j;
};

// Inverse of upper_slot.
EntryIndex slot_entry(std::size_t slot);

// "(i,j)" with 1-based indices.
std::string entry_label(std::size_t slot);

class MultiplicativePCMatrix {
 public:
  // Throws OrderTooSmall, NonPositiveEntry, or InvalidConfig on a size mismatch.
  static MultiplicativePCMatrix from_upper(std::size_t n, std::vector<double> upper);

  std::size_t order() const noexcept { return n_; }
  std::span<const double> upper() const noexcept { return upper_; }

  // Full-matrix access, 0-based.
  double operator()(std::size_t row, std::size_t col) const;

  std::vector<double> full() const;  // row-major n*n

  MultiplicativePCMatrix transposed() const;

  // Simultaneous row/column permutation: result(r, c) = this(perm[r], perm[c]).
  MultiplicativePCMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const MultiplicativePCMatrix&, const MultiplicativePCMatrix&) = default;

 private:
  MultiplicativePCMatrix(std::size_t n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {}

  std::size_t n_;
  std::vector<double> upper_;
};

class AdditivePCMatrix {
 public:
  // Throws OrderTooSmall, or ParseError for non-finite entries.
  static AdditivePCMatrix from_upper(std::size_t n, std::vector<double> upper);

  std::size_t order() const noexcept { return n_; }
  std::span<const double> upper() const noexcept { return upper_; }

  double operator()(std::size_t row, std::size_t col) const;

  friend bool operator==(const AdditivePCMatrix&, const AdditivePCMatrix&) = default;

 private:
  AdditivePCMatrix(std::size_t n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {}

  std::size_t n_;
  std::vector<double> upper_;
};

// Index triple i < j < k with the slots of its three entries.
struct Triad {
  std::size_t i;
  std::size_t j;
  std::size_t k;

  std::size_t ij_slot() const { return upper_slot(i, j); }
  std::size_t jk_slot() const { return upper_slot(j, k); }
  std::size_t ik_slot() const { return upper_slot(i, k); }

  friend bool operator==(const Triad&, const Triad&) = default;
};

std::string triad_label(const Triad& t);  // "(i,j,k)", 1-based

constexpr std::size_t triad_count(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// All C(n,3) triads in lexicographic order.
std::vector<Triad> enumerate_triads(std::size_t n);

class PriorityVector {
 public:
  // Throws NonPositiveWeight.
  explicit PriorityVector(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }

  // Representative with components summing to one.
  PriorityVector normalized() const;

 private:
  std::vector<double> w_;
};

// Checks a full row-major n*n grid and keeps its upper triangle. The lower
// triangle is only validated, never averaged in.
MultiplicativePCMatrix validate_multiplicative(std::size_t n, std::span<const double> grid,
                                               double tol = kReciprocityTolerance);

// Antisymmetry and zero diagonal within an absolute tolerance.
AdditivePCMatrix validate_additive(std::size_t n, std::span<const double> grid,
                                   double tol = kReciprocityTolerance);

AdditivePCMatrix to_additive(const MultiplicativePCMatrix& m);
MultiplicativePCMatrix to_multiplicative(const AdditivePCMatrix& b);

// |b_ij + b_jk - b_ik|
double triad_defect(const AdditivePCMatrix& b, const Triad& t);

bool is_consistent(const MultiplicativePCMatrix& m, double tol);

MultiplicativePCMatrix consistent_from_weights(const PriorityVector& w);

// Geometric mean of each row, normalized to sum one.
PriorityVector gmm_priority_vector(const MultiplicativePCMatrix& m);

}  // namespace pcgrad
