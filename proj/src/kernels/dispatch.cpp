#include <atomic>

#include "knx/kernels.hpp"

namespace knx::kernels {
namespace {

Isa detect() noexcept { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool avx2_available() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  selected().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { selected().store(detect(), std::memory_order_relaxed); }

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void shift_or(std::span<std::uint64_t> bits, std::size_t shift) {
  if (active_isa() == Isa::Avx2) {
    shift_or_avx2(bits, shift);
  } else {
    shift_or_scalar(bits, shift);
  }
}

}  // namespace knx::kernels
