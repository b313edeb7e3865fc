#pragma once

// Word-parallel bitset kernels for the semigroup reachability DP.
//
// shift_or(bits, s) performs bits |= bits << s over a little-endian bitset
// (bit i of the set lives in bits[i / 64] at position i % 64). Bits shifted
// past the last word are dropped. The scalar kernel is the reference; the
// AVX2 kernel must produce identical words and is selected at runtime when
// the CPU supports it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace knx::kernels {

enum class Isa { Scalar, Avx2 };

void shift_or_scalar(std::span<std::uint64_t> bits, std::size_t shift);
void shift_or_avx2(std::span<std::uint64_t> bits, std::size_t shift);

bool avx2_available() noexcept;

/// Best kernel for this CPU unless overridden by force_isa.
Isa active_isa() noexcept;
/// Pins the dispatched kernel (tests and benchmarks). Forcing Avx2 on a CPU
/// without it falls back to Scalar.
void force_isa(Isa isa) noexcept;
void reset_isa() noexcept;
std::string_view to_string(Isa isa) noexcept;

void shift_or(std::span<std::uint64_t> bits, std::size_t shift);

}  // namespace knx::kernels
