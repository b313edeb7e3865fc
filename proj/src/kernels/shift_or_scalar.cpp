#include "knx/kernels.hpp"

namespace knx::kernels {

void shift_or_scalar(std::span<std::uint64_t> bits, std::size_t shift) {
  if (shift == 0 || bits.empty()) return;
  const std::size_t words = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  const std::size_t n = bits.size();
  if (words >= n) return;
  // Top-down so every source word is read before it is updated.
  for (std::size_t i = n; i-- > words;) {
    const std::size_t src = i - words;
    std::uint64_t v = bits[src] << r;
    if (r != 0 && src > 0) v |= bits[src - 1] >> (64 - r);
    bits[i] |= v;
  }
}

}  // namespace knx::kernels
