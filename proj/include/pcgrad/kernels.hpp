#pragma once

// Inner-loop kernels over triad defects: a scalar reference implementation
// and an AVX2 variant, selected once at startup from the running CPU.
//
// Every variant is bit-identical to the scalar reference: sums use a fixed
// four-lane accumulation order and no variant contracts into FMA. Descent
// traces therefore do not depend on the CPU they ran on.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pcgrad::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

// Slots of every triad of order n, structure-of-arrays, lexicographic order.
struct TriadSlots {
  std::size_t order = 0;
  std::vector<std::int32_t> ij;
  std::vector<std::int32_t> jk;
  std::vector<std::int32_t> ik;

  std::size_t size() const noexcept { return ij.size(); }
};

// Cached per order; safe to call concurrently.
const TriadSlots& triad_slots(std::size_t n);

struct KernelTable {
  Isa isa;
  // out[t] = |b[ij[t]] + b[jk[t]] - b[ik[t]]|
  void (*triad_defects)(const double* log_upper, const std::int32_t* ij, const std::int32_t* jk,
                        const std::int32_t* ik, std::size_t count, double* out);
  double (*sum)(const double* x, std::size_t count);
  double (*sum_squares)(const double* x, std::size_t count);
  double (*max)(const double* x, std::size_t count);
  double (*min)(const double* x, std::size_t count);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);

// Best variant that is both compiled in and supported by this CPU.
Isa detected_isa();

const KernelTable& active();

// Overrides the runtime choice (tests, benchmarking). Throws PcError
// InvalidConfig when the variant is unavailable.
void select(Isa isa);

// Convenience wrappers over active().
void triad_defects(std::span<const double> log_upper, const TriadSlots& slots, std::span<double> out);

// sum_t x_t^p for finite p; scalar in every variant.
double power_sum(std::span<const double> x, double p);

}  // namespace pcgrad::kernels
