#include "pcgrad/kernels.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "kernels_impl.hpp"
#include "pcgrad/errors.hpp"
#include "pcgrad/pc_matrix.hpp"

namespace pcgrad::kernels {

namespace {

const KernelTable kScalar{Isa::Scalar,     scalar::triad_defects, scalar::sum, scalar::sum_squares,
                          scalar::max,     scalar::min};

#if defined(PCGRAD_HAVE_AVX2)
const KernelTable kAvx2{Isa::Avx2, avx2::triad_defects, avx2::sum, avx2::sum_squares, avx2::max, avx2::min};
#endif

const KernelTable* table_for(Isa isa) {
  return isa == Isa::Avx2 ? avx2_table() : &kScalar;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{table_for(detected_isa())};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const TriadSlots& triad_slots(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<TriadSlots>> cache;
  std::lock_guard lock(mu);
  auto& entry = cache[n];
  if (!entry) {
    auto slots = std::make_unique<TriadSlots>();
    slots->order = n;
    for (const Triad& t : enumerate_triads(n)) {
      slots->ij.push_back(static_cast<std::int32_t>(t.ij_slot()));
      slots->jk.push_back(static_cast<std::int32_t>(t.jk_slot()));
      slots->ik.push_back(static_cast<std::int32_t>(t.ik_slot()));
    }
    entry = std::move(slots);
  }
  return *entry;
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(PCGRAD_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(PCGRAD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  if (avx2_table() != nullptr && cpu_supports(Isa::Avx2)) return Isa::Avx2;
  return Isa::Scalar;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* table = table_for(isa);
  if (table == nullptr || !cpu_supports(isa)) {
    throw PcError(ErrorKind::InvalidConfig, std::string("kernel variant ") + std::string(to_string(isa)) +
                                                " is not available on this build/CPU");
  }
  active_slot().store(table, std::memory_order_release);
}

void triad_defects(std::span<const double> log_upper, const TriadSlots& slots, std::span<double> out) {
  active().triad_defects(log_upper.data(), slots.ij.data(), slots.jk.data(), slots.ik.data(), slots.size(),
                         out.data());
}

double power_sum(std::span<const double> x, double p) {
  double acc = 0.0;
  for (double v : x) acc += std::pow(v, p);
  return acc;
}

}  // namespace pcgrad::kernels
