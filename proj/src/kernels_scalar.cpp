#include <cmath>

#include "kernels_impl.hpp"

namespace pcgrad::kernels::scalar {

void triad_defects(const double* b, const std::int32_t* ij, const std::int32_t* jk, const std::int32_t* ik,
                   std::size_t count, double* out) {
  for (std::size_t t = 0; t < count; ++t) out[t] = std::abs((b[ij[t]] + b[jk[t]]) - b[ik[t]]);
}

// Sums accumulate in four interleaved partial sums, combined as
// (s0 + s1) + (s2 + s3), then the tail in order. This is the lane order of the
// vector variants, which keeps every variant bit-identical.
double sum(const double* x, std::size_t count) {
  std::size_t i = 0;
  double acc = 0.0;
  if (count >= 4) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (; i + 4 <= count; i += 4)
      for (int k = 0; k < 4; ++k) lane[k] += x[i + k];
    acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  }
  for (; i < count; ++i) acc += x[i];
  return acc;
}

double sum_squares(const double* x, std::size_t count) {
  std::size_t i = 0;
  double acc = 0.0;
  if (count >= 4) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (; i + 4 <= count; i += 4)
      for (int k = 0; k < 4; ++k) lane[k] += x[i + k] * x[i + k];
    acc = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  }
  for (; i < count; ++i) acc += x[i] * x[i];
  return acc;
}

double max(const double* x, std::size_t count) {
  double m = x[0];
  for (std::size_t i = 1; i < count; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double min(const double* x, std::size_t count) {
  double m = x[0];
  for (std::size_t i = 1; i < count; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

}  // namespace pcgrad::kernels::scalar
