#pragma once

// Priority directions: how the upper-triangle entries should move to lower
// an indicator.
//
//  * instant priority vectors are exact descent directions -grad(Kii);
//  * difference priority vectors replace each partial derivative by the
//    forward quotient (Kii(A with one entry + l) - Kii(A)) / l.
//
// Every function here returns a descent direction (or, for
// difference_gradient, the gradient estimate itself), indexed like
// MultiplicativePCMatrix::upper().

#include <cstddef>
#include <vector>

#include "pcgrad/indicators.hpp"
#include "pcgrad/pc_matrix.hpp"

namespace pcgrad {

// Smallest triad defect at which the analytic gradient is evaluated.
inline constexpr double kMinGradientDefect = 1e-9;

struct DirectionVector {
  std::size_t order = 0;
  std::vector<double> components;

  double norm() const;
  DirectionVector operator-() const;
};

// -grad of 1 - exp(-|ln y - ln x - ln z|) at (x, y, z) = (a_12, a_13, a_23).
// Throws OnConsistentLocus when y = xz.
DirectionVector instant_pv3_mult(double x, double y, double z);

// -grad of 1 - exp(-|a + c - b|) at (a, b, c) = (b_12, b_13, b_23).
DirectionVector instant_pv3_add(double a, double b, double c);

// -grad Kii_{n,p} with respect to the multiplicative upper entries. Order 3
// reduces to instant_pv3_mult for every p; for n > 3, p = 1 and p = inf are
// rejected with NonSmoothExponent. Throws OnConsistentLocus when every defect
// is below kMinGradientDefect and DegenerateDefect when only some are.
DirectionVector instant_pv_np(const MultiplicativePCMatrix& m, PExponent p);

// Same, with respect to the additive entries b_ij.
DirectionVector instant_pv_np(const AdditivePCMatrix& b, PExponent p);

// Forward differences of Kii with increment l > 0, one upper entry at a time.
DirectionVector difference_gradient(const MultiplicativePCMatrix& m, PExponent p, double l);
DirectionVector difference_gradient(const AdditivePCMatrix& b, PExponent p, double l);

// -difference_gradient
DirectionVector difference_priority_vector(const MultiplicativePCMatrix& m, PExponent p, double l);
DirectionVector difference_priority_vector(const AdditivePCMatrix& b, PExponent p, double l);

}  // namespace pcgrad
