#pragma once

// Kirwan-Ness one-parameter subgroups of a representation for a character.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "knx/convex.hpp"
#include "knx/group.hpp"

namespace knx {

enum class WeightMode { Cotangent, Raw };
enum class Orientation { Negative, Positive, Both };

/// Torus weights of W. Cotangent mode stratifies T*W, whose weights are the
/// w_weights followed by their negatives; raw mode stratifies the given
/// weights directly.
struct WeightSystem {
  std::vector<RationalVector> w_weights;
  WeightMode mode = WeightMode::Cotangent;

  [[nodiscard]] std::vector<RationalVector> stratify_weights() const;

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

/// Validates d >= 1 and a common length equal to the group rank.
void validate(const WeightSystem& ws, const GroupData& g);

struct WeightSplit {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> zero;
  std::vector<std::size_t> minus;
};

/// Index conventions: split indices point into ws.stratify_weights();
/// defining_subset points into [alpha_0, stratify_weights...], so 0 is the
/// affine-cone weight and i + 1 is stratify_weights()[i].
struct KNStratum {
  RationalVector beta;           // signed, primitive
  RationalVector beta_dominant;  // Weyl canonical form of beta
  RationalVector direction;      // v with closest point eps*v, unrescaled
  Rational q_norm;               // q(v)
  std::vector<std::size_t> defining_subset;
  WeightSplit split;

  [[nodiscard]] const std::vector<std::size_t>& z_indices() const { return split.zero; }
  [[nodiscard]] std::vector<std::size_t> y_indices() const;
};

/// One geometric candidate examined by the enumerator: the vertex subset
/// (indices into KNResult::points, 0 = alpha_0) and its symbolic
/// minimum-norm point. Exposed for the numeric cross-check.
struct KNCandidate {
  std::vector<std::size_t> vertices;
  EpsVector min_point;
};

struct KNResult {
  std::vector<KNStratum> strata;  // ascending q_norm, then beta_dominant
  bool semistable_nonempty = false;

  std::vector<RationalVector> points;  // distinct geometry points, points[0] = 0
  RationalVector lambda;               // character used for the perturbation
  std::vector<KNCandidate> candidates;
};

struct KNOptions {
  Orientation orientation = Orientation::Negative;
  std::size_t cap = kDefaultVertexCap;
};

/// Enumerates the strata meeting V.
///
/// For every subspace U spanned by a subset of the weights, the candidate
/// closest point is eps * proj_{U-perp}(lambda). The candidate is tested on
/// the largest subset it could be optimal for (alpha_0 plus every weight
/// satisfying the variational inequality against it); the minimum-norm point
/// of that subset's perturbed hull is a genuine KN direction and every KN
/// direction arises this way. Results are deduplicated by Weyl orbit.
KNResult enumerate_kn(const WeightSystem& ws, const TorusCharacter& chi, const GroupData& g,
                      const KNOptions& options = {});

struct PointClassification {
  bool semistable = false;
  std::optional<KNStratum> stratum;
};

/// Stratum of a point of V given by the indices of its nonzero weight
/// coordinates. Torus only.
PointClassification classify_point(std::span<const std::size_t> support, const WeightSystem& ws,
                                   const TorusCharacter& chi, const GroupData& g, const KNOptions& options = {});

/// Splits stratify_weights by the sign of alpha . beta.
WeightSplit split_weights(const std::vector<RationalVector>& weights, const RationalVector& beta, const GramForm& q);

/// Oriented primitive directions for a closest point eps*v.
std::vector<RationalVector> oriented_betas(const RationalVector& v, Orientation orientation);

}  // namespace knx
