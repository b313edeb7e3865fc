#pragma once

// Reductive group data on a maximal torus: roots, simple reflections, the
// invariant pairing, and the characters the exactness test is phrased in.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knx/eps.hpp"

namespace knx {

/// Immutable after construction. The constructor verifies that the roots are
/// closed under negation, that every simple reflection permutes the roots,
/// and that the form is invariant under every simple reflection.
///
/// central_directions lists directions of the coordinate lattice that are
/// quotiented away (sl(n) keeps gl(n) coordinates and drops (1,...,1)).
class GroupData {
 public:
  GroupData(std::size_t rank, std::vector<RationalVector> roots, std::vector<RationalVector> simple_roots,
            GramForm form, std::string label, std::vector<RationalVector> central_directions = {});

  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] const std::vector<RationalVector>& roots() const { return roots_; }
  [[nodiscard]] const std::vector<RationalVector>& simple_roots() const { return simple_roots_; }
  [[nodiscard]] const GramForm& form() const { return form_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const std::vector<RationalVector>& central_directions() const { return central_directions_; }
  [[nodiscard]] bool is_torus() const { return roots_.empty(); }

  /// v - 2 (v.r)/(r.r) r for the i-th simple root r.
  [[nodiscard]] RationalVector reflect(const RationalVector& v, std::size_t i) const;

  /// Drops the components along central_directions (identity otherwise).
  [[nodiscard]] RationalVector quotient(const RationalVector& v) const;

 private:
  std::size_t rank_;
  std::vector<RationalVector> roots_;
  std::vector<RationalVector> simple_roots_;
  GramForm form_;
  std::string label_;
  std::vector<RationalVector> central_directions_;
};

GroupData preset_torus(std::size_t rank);
GroupData preset_gl(std::size_t n);
GroupData preset_sl(std::size_t n);
GroupData preset_product(std::span<const GroupData> factors);

/// Dominant representative of the Weyl orbit of v: apply simple reflections
/// whose root pairs negatively with v until none does. For gl(n) this sorts
/// coordinates in nonincreasing order.
RationalVector weyl_canonicalize(const RationalVector& v, const GroupData& g);

/// Unique positive multiple of v with coprime integer entries.
RationalVector primitive_rescale(const RationalVector& v);

/// Sum of gamma.beta over roots gamma with gamma.beta < 0.
Rational negative_root_weight_sum(const RationalVector& beta, const GroupData& g);

/// Character chi of the torus, lambda = d chi. Integral unless declared a
/// rational character.
struct TorusCharacter {
  RationalVector vector;
  bool integral = true;

  friend bool operator==(const TorusCharacter&, const TorusCharacter&) = default;
};

/// Character c of the Lie algebra, c = base (+ t * direction in parametric
/// mode). Both must pair to zero with every root.
struct LieCharacter {
  RationalVector base;
  std::optional<RationalVector> direction;

  friend bool operator==(const LieCharacter&, const LieCharacter&) = default;
};

void validate(const TorusCharacter& chi, const GroupData& g);
void validate(const LieCharacter& c, const GroupData& g);

}  // namespace knx
