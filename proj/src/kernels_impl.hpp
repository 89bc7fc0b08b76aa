#pragma once

#include <cstddef>
#include <cstdint>

namespace pcgrad::kernels {

namespace scalar {
void triad_defects(const double* b, const std::int32_t* ij, const std::int32_t* jk, const std::int32_t* ik,
                   std::size_t count, double* out);
double sum(const double* x, std::size_t count);
double sum_squares(const double* x, std::size_t count);
double max(const double* x, std::size_t count);
double min(const double* x, std::size_t count);
}  // namespace scalar

#if defined(PCGRAD_HAVE_AVX2)
namespace avx2 {
void triad_defects(const double* b, const std::int32_t* ij, const std::int32_t* jk, const std::int32_t* ik,
                   std::size_t count, double* out);
double sum(const double* x, std::size_t count);
double sum_squares(const double* x, std::size_t count);
double max(const double* x, std::size_t count);
double min(const double* x, std::size_t count);
}  // namespace avx2
#endif

}  // namespace pcgrad::kernels
