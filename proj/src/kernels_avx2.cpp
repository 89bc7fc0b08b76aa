// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace pcgrad::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

void triad_defects(const double* b, const std::int32_t* ij, const std::int32_t* jk, const std::int32_t* ik,
                   std::size_t count, double* out) {
  std::size_t t = 0;
  for (; t + 4 <= count; t += 4) {
    const __m128i vij = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ij + t));
    const __m128i vjk = _mm_loadu_si128(reinterpret_cast<const __m128i*>(jk + t));
    const __m128i vik = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ik + t));
    const __m256d bij = _mm256_i32gather_pd(b, vij, 8);
    const __m256d bjk = _mm256_i32gather_pd(b, vjk, 8);
    const __m256d bik = _mm256_i32gather_pd(b, vik, 8);
    _mm256_storeu_pd(out + t, abs_pd(_mm256_sub_pd(_mm256_add_pd(bij, bjk), bik)));
  }
  for (; t < count; ++t) out[t] = std::abs((b[ij[t]] + b[jk[t]]) - b[ik[t]]);
}

double sum(const double* x, std::size_t count) {
  std::size_t i = 0;
  double acc = 0.0;
  if (count >= 4) {
    __m256d v = _mm256_setzero_pd();
    for (; i + 4 <= count; i += 4) v = _mm256_add_pd(v, _mm256_loadu_pd(x + i));
    acc = hsum(v);
  }
  for (; i < count; ++i) acc += x[i];
  return acc;
}

double sum_squares(const double* x, std::size_t count) {
  std::size_t i = 0;
  double acc = 0.0;
  if (count >= 4) {
    __m256d v = _mm256_setzero_pd();
    for (; i + 4 <= count; i += 4) {
      const __m256d xv = _mm256_loadu_pd(x + i);
      v = _mm256_add_pd(v, _mm256_mul_pd(xv, xv));
    }
    acc = hsum(v);
  }
  for (; i < count; ++i) acc += x[i] * x[i];
  return acc;
}

double max(const double* x, std::size_t count) {
  std::size_t i = 0;
  double m = x[0];
  if (count >= 4) {
    __m256d v = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= count; i += 4) v = _mm256_max_pd(v, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] > m ? lanes[k] : m;
  } else {
    i = 1;
  }
  for (; i < count; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double min(const double* x, std::size_t count) {
  std::size_t i = 0;
  double m = x[0];
  if (count >= 4) {
    __m256d v = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= count; i += 4) v = _mm256_min_pd(v, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    m = lanes[0];
    for (int k = 1; k < 4; ++k) m = lanes[k] < m ? lanes[k] : m;
  } else {
    i = 1;
  }
  for (; i < count; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

}  // namespace pcgrad::kernels::avx2
