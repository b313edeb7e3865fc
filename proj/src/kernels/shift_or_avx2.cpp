#include "knx/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define KNX_X86 1
#else
#define KNX_X86 0
#endif

namespace knx::kernels {

#if KNX_X86

__attribute__((target("avx2"))) void shift_or_avx2(std::span<std::uint64_t> bits, std::size_t shift) {
  if (shift == 0 || bits.empty()) return;
  const std::size_t words = shift / 64;
  const unsigned r = static_cast<unsigned>(shift % 64);
  const std::size_t n = bits.size();
  if (words >= n) return;
  std::uint64_t* data = bits.data();

  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - r));  // 64 yields zero lanes

  // Blocks of four destination words, top-down; each block reads words
  // strictly below the blocks already written.
  std::size_t i = n;
  while (i >= words + 1 + 4) {
    i -= 4;
    const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + (i - words)));
    const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + (i - words - 1)));
    const __m256i moved = _mm256_or_si256(_mm256_sll_epi64(hi, left), _mm256_srl_epi64(lo, right));
    const __m256i dst = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(data + i), _mm256_or_si256(dst, moved));
  }
  while (i-- > words) {
    const std::size_t src = i - words;
    std::uint64_t v = data[src] << r;
    if (r != 0 && src > 0) v |= data[src - 1] >> (64 - r);
    data[i] |= v;
  }
}

#else

void shift_or_avx2(std::span<std::uint64_t> bits, std::size_t shift) { shift_or_scalar(bits, shift); }

#endif

}  // namespace knx::kernels
