#pragma once

// Small dense exact linear algebra over Q (Gaussian elimination).

#include <optional>
#include <span>
#include <vector>

#include "knx/rational.hpp"

namespace knx::linalg {

/// Solves A X = B for square A. Returns nullopt when A is singular.
std::optional<RationalMatrix> solve(RationalMatrix a, RationalMatrix b);

Rational determinant(RationalMatrix a);

/// Reduced row echelon basis of span(rows), zero rows dropped. Two families
/// span the same subspace iff their reduced bases are equal, so the result
/// doubles as a canonical key for the span.
RationalMatrix reduced_basis(std::span<const RationalVector> rows, std::size_t dim);

/// True iff v lies in the row space of a reduced basis.
bool in_span(const RationalMatrix& basis, const RationalVector& v);

std::size_t rank_of(std::span<const RationalVector> rows, std::size_t dim);

/// Greedy maximal linearly independent subset, returned as indices in input
/// order.
std::vector<std::size_t> independent_subset(std::span<const RationalVector> rows);

}  // namespace knx::linalg
