#pragma once

// Exact convex geometry over eps-perturbed points: minimum-norm point of a
// polytope, hull membership and the "strictly closer to every point" test.

#include <cstddef>
#include <span>
#include <vector>

#include "knx/eps.hpp"

namespace knx {

inline constexpr std::size_t kDefaultVertexCap = 24;

/// conv(vertices). All vertices must share the same eps-part so that
/// difference vectors are eps-free (every polytope in this library is a
/// translate of a rational polytope by eps*lambda).
struct Polytope {
  std::vector<EpsVector> vertices;
  GramForm form;
};

/// point = sum coefficients[k] * vertices[support[k]], coefficients >= 0
/// summing to 1, and pair(point, s - point) >= 0 for every vertex s.
struct MinNormCertificate {
  EpsVector point;
  std::vector<std::size_t> support;
  std::vector<EpsScalar> coefficients;
};

/// Unique q-closest point of P to the origin for all small eps < 0.
///
/// Supports are enumerated by size, then lexicographically; for each
/// affinely independent support the closest point of its affine hull is
/// affine in eps. The first support whose barycentric coordinates are
/// nonnegative and whose point satisfies the variational inequality against
/// every vertex is accepted, so the reported support is the smallest one in
/// that order.
MinNormCertificate min_norm_point(const Polytope& p, std::size_t cap = kDefaultVertexCap);

/// True iff point lies in conv(vertices) for all small eps < 0. Uses
/// basic-solution enumeration over affinely independent supports.
bool hull_contains(const EpsVector& point, const Polytope& p, std::size_t cap = kDefaultVertexCap);

/// True iff alternative is strictly closer than point to every s in sites.
bool witnesses_compare(const EpsVector& point, const EpsVector& alternative, std::span<const EpsVector> sites,
                       const GramForm& q);

/// Calls fn(indices) for each k-subset of {0..n-1} in lexicographic order.
/// fn returns true to stop early; the function returns whether it stopped.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(std::span<const std::size_t>(idx))) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace knx
