#include <random>
#include <vector>

#include "doctest.h"
#include "knx/kernels.hpp"

using namespace knx::kernels;

namespace {

std::vector<std::uint64_t> reference(std::vector<std::uint64_t> bits, std::size_t shift) {
  const std::size_t n = bits.size() * 64;
  std::vector<bool> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (bits[i / 64] >> (i % 64)) & 1U;
  for (std::size_t i = n; i-- > shift;) {
    if (b[i - shift]) bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return bits;
}

}  // namespace

TEST_CASE("scalar shift_or matches a bit-by-bit reference") {
  std::mt19937_64 rng(21);
  for (std::size_t words : {1U, 2U, 5U, 9U, 17U}) {
    for (std::size_t shift : {0U, 1U, 7U, 63U, 64U, 65U, 130U, 1000U}) {
      std::vector<std::uint64_t> bits(words);
      for (auto& w : bits) w = rng() & rng();
      const auto want = reference(bits, shift);
      shift_or_scalar(bits, shift);
      CAPTURE(words);
      CAPTURE(shift);
      CHECK(bits == want);
    }
  }
}

TEST_CASE("AVX2 shift_or is word-identical to the scalar kernel") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; skipping");
    return;
  }
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t words = 1 + rng() % 40;
    const std::size_t shift = rng() % (words * 64 + 70);
    std::vector<std::uint64_t> a(words);
    for (auto& w : a) w = (trial % 3 == 0) ? rng() : (rng() & rng() & rng());
    auto b = a;
    shift_or_scalar(a, shift);
    shift_or_avx2(b, shift);
    CAPTURE(words);
    CAPTURE(shift);
    REQUIRE(a == b);
  }
}

TEST_CASE("dispatch honours force_isa and reset_isa") {
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  force_isa(Isa::Avx2);
  CHECK(active_isa() == (avx2_available() ? Isa::Avx2 : Isa::Scalar));
  reset_isa();
  CHECK(active_isa() == (avx2_available() ? Isa::Avx2 : Isa::Scalar));
  CHECK(to_string(Isa::Scalar) == "scalar");
  CHECK(to_string(Isa::Avx2) == "avx2");
}
