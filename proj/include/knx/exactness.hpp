#pragma once

// Exactness criterion: c(beta) must avoid shift(beta) + I(beta) for every
// kept KN one-parameter subgroup beta.

#include <optional>
#include <string>
#include <vector>

#include "knx/kn.hpp"
#include "knx/semigroup.hpp"

namespace knx {

struct ExactnessProblem {
  GroupData group;
  WeightSystem weights;
  TorusCharacter chi;
  LieCharacter c;
  Orientation orientation = Orientation::Negative;
  /// Dominant forms of strata to skip; each must match an enumerated stratum.
  std::vector<RationalVector> dropped_strata;
  Strictness strictness = Strictness::Slice;
  std::size_t cap = kDefaultVertexCap;
  /// Reported translation of the parameter (c = c' + translation), applied
  /// to the locus only in the translated copy.
  std::optional<Rational> translation;
  std::vector<std::string> notes;
};

enum class VerdictStatus { Certified, Violated, Parametric };

std::string_view to_string(VerdictStatus status) noexcept;

struct StratumVerdict {
  KNStratum stratum;
  ShiftData shift;
  NumericalSemigroup semigroup;
  Rational c_of_beta;  // fixed mode
  bool pass = true;
  std::optional<Witness> witness;
  SetDescription locus;  // parametric mode: forbidden t
  bool constant_condition = false;
};

struct ExactnessVerdict {
  VerdictStatus status = VerdictStatus::Certified;
  bool semistable_nonempty = false;
  std::vector<StratumVerdict> per_stratum;
  std::vector<SetDescription> forbidden_locus;
  std::vector<SetDescription> translated_locus;
  std::string union_rendering;
  std::string translated_union_rendering;
  std::vector<std::string> notes;
};

/// Validates group/weights/characters and that drop-list entries refer to
/// enumerated strata; returns the kept strata.
std::vector<KNStratum> kept_strata(const ExactnessProblem& problem, bool* semistable_nonempty = nullptr);

/// Evaluates one beta (any positive multiple is allowed; the verdict is
/// homogeneous of degree one).
StratumVerdict evaluate_stratum(const KNStratum& stratum, const ExactnessProblem& problem);

/// Fixed-parameter verdict. Requires c without a direction.
ExactnessVerdict check(const ExactnessProblem& problem);

/// Forbidden locus in t for c = base + t * direction.
ExactnessVerdict forbidden(const ExactnessProblem& problem);

/// gl(n) acting on gl_n + C^n with the determinant character and c along
/// (1,...,1); the locus is in the variable c' of the shifted comoment map.
ExactnessProblem cherednik_preset(std::size_t n, Orientation orientation = Orientation::Positive);

}  // namespace knx
