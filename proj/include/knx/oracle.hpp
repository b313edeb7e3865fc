#pragma once

// Independent oracles: exhaustive minimum-norm search at concrete rational
// eps values, and a cross-check of the symbolic enumerator against it.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knx/exactness.hpp"

namespace knx {

struct OracleConfig {
  std::vector<Rational> epsilon_values{Rational(-1, 1 << 20), Rational(-1, 1 << 24)};
  std::size_t sample_count = 0;
  std::uint64_t rng_seed = 1;
};

/// All eps negative and at least two of them.
void validate(const OracleConfig& config);

/// Minimum-norm point of conv(vertices) for concrete vertices. Every
/// affinely independent support is solved through its barycentric KKT
/// system (fraction-free elimination), and the smallest feasible norm wins.
RationalVector numeric_min_norm(std::span<const RationalVector> vertices, const GramForm& q,
                                std::size_t cap = kDefaultVertexCap);

struct OracleReport {
  bool agree = true;
  std::size_t subsets_enumerated = 0;
  std::size_t candidates_checked = 0;
  std::vector<Rational> epsilon_values;
  std::vector<RationalVector> main_strata;    // dominant forms, sorted
  std::vector<RationalVector> oracle_strata;  // dominant forms, sorted
  bool main_semistable = false;
  bool oracle_semistable = false;
  std::vector<std::string> mismatches;

  [[nodiscard]] std::string summary() const;
};

/// Enumerates every weight subset containing alpha_0 at each eps, reads off
/// the closest points, and compares (a) the induced strata with the
/// symbolic enumeration and (b) each symbolic candidate evaluated at eps
/// with the exhaustive value for the same subset.
OracleReport cross_check_enumeration(const ExactnessProblem& problem, const OracleConfig& config);

/// Torus problem in cotangent mode with nonzero integer weights and a
/// nonzero character, entries in [-3, 3]. Deterministic in the seed.
ExactnessProblem random_problem(std::size_t rank, std::size_t weight_count, std::uint64_t seed);

/// Per-sample seed derived from a base seed (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Sample i of a seeded family with rank in [1, max_rank] and weight count
/// in [1, max_weights].
ExactnessProblem random_sample(std::uint64_t base_seed, std::uint64_t index, std::size_t max_rank = 3,
                               std::size_t max_weights = 6);

}  // namespace knx
