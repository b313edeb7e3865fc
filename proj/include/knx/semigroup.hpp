#pragma once

// Per-stratum shift data and the numerical semigroup I(beta).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knx/group.hpp"
#include "knx/kn.hpp"

namespace knx {

/// Which weights generate I(beta): the symplectic slice (T*W minus the
/// cotangent of n^-) or every weight of the stratified space.
enum class Strictness { Slice, FullV };

struct ShiftData {
  RationalVector beta;
  Rational half_abs_sum;  // 1/2 sum_i |alpha_i . beta| over the weights of W
  Rational n_minus_sum;   // sum of the negative beta-weights on g, <= 0
  Rational shift;         // n_minus_sum + half_abs_sum
  std::vector<Rational> space_weights;  // beta-weights of T*W (raw mode: of V)
  std::vector<Rational> slice_weights;  // space_weights minus T*n^-
  std::vector<Rational> semigroup_generators;
};

/// Raw mode treats the given weights as the whole symplectic space V, so
/// half_abs_sum = 1/4 sum_V |w| and n^- must be empty.
ShiftData compute_shift(const RationalVector& beta, const WeightSystem& ws, const GroupData& g,
                        Strictness strictness = Strictness::Slice);

/// 2 sum_W |alpha.beta| == sum_slice |w| - 2 n_minus_sum, exactly.
bool weight_sum_identity_holds(const ShiftData& data);

/// Numerical semigroup generated by positive rationals, stored as
/// scale * (integer semigroup). Gaps and the conductor are in integer units
/// and are multiples of the content.
class NumericalSemigroup {
 public:
  NumericalSemigroup() = default;

  [[nodiscard]] const std::vector<Rational>& rational_generators() const { return rational_generators_; }
  [[nodiscard]] const std::vector<std::uint64_t>& generators() const { return generators_; }
  [[nodiscard]] const Rational& scale() const { return scale_; }
  [[nodiscard]] std::uint64_t content() const { return content_; }
  [[nodiscard]] const std::vector<std::uint64_t>& gaps() const { return gaps_; }
  [[nodiscard]] std::uint64_t conductor() const { return conductor_; }
  /// No generators: the semigroup is {0}.
  [[nodiscard]] bool is_trivial() const { return generators_.empty(); }

  [[nodiscard]] bool contains(const mpz_class& m) const;

  /// Counts n_i with sum n_i * generators()[i] == m, for a member m.
  [[nodiscard]] std::optional<std::vector<mpz_class>> decompose(const mpz_class& m) const;

  friend NumericalSemigroup semigroup_from_generators(std::span<const Rational> gens);

 private:
  std::vector<Rational> rational_generators_;
  std::vector<std::uint64_t> generators_;
  Rational scale_ = 1;
  std::uint64_t content_ = 1;
  std::vector<std::uint64_t> gaps_;
  std::uint64_t conductor_ = 0;
  // Reachability in units of content: bit k set iff k * content is a member,
  // for k < reach_bits_. Everything at or above reach_bits_ is a member.
  std::vector<std::uint64_t> reach_;
  std::uint64_t reach_bits_ = 0;
};

/// Generators must be positive; an empty list yields the semigroup {0}.
/// Throws CapExceeded when the cleared generators make the DP table too big.
NumericalSemigroup semigroup_from_generators(std::span<const Rational> gens);

/// value - shift lies in scale * S, decided exactly.
bool membership(const NumericalSemigroup& s, const Rational& shift, const Rational& value);

/// The condition in its equivalent form:
/// c - 1/2 n_minus in 1/4 sum_slice |w| + I.
bool membership_equivalent_form(const ShiftData& data, const NumericalSemigroup& s, const Rational& value);

/// value = shift + sum counts[i] * generators[i].
struct Witness {
  Rational value;
  Rational shift;
  std::vector<Rational> generators;
  std::vector<mpz_class> counts;

  [[nodiscard]] bool verify() const;
};

std::optional<Witness> find_witness(const NumericalSemigroup& s, const Rational& shift, const Rational& value);

/// {offset + modulus * k : k in Z>=0, k not in gaps}; every k >= conductor
/// is included. modulus may be negative (a ray pointing down) or zero (the
/// single point offset). `empty` and `all` mark the degenerate loci of a
/// constant condition.
struct SetDescription {
  Rational offset = 0;
  Rational modulus = 0;
  std::vector<std::uint64_t> gaps;
  std::uint64_t conductor = 0;
  bool empty = false;
  bool all = false;

  [[nodiscard]] bool contains(const Rational& x) const;
  [[nodiscard]] std::string render() const;

  friend bool operator==(const SetDescription&, const SetDescription&) = default;
};

SetDescription forbidden_set_description(const NumericalSemigroup& s, const Rational& shift);

/// Pulls a description back along value = base + t * slope (slope != 0).
SetDescription pull_back(const SetDescription& d, const Rational& base, const Rational& slope);

/// Translates every element by delta.
SetDescription translated(const SetDescription& d, const Rational& delta);

/// True when every element of a lies in b (decided for gap-free rays and
/// points; returns false when undecided).
bool provably_contained(const SetDescription& a, const SetDescription& b);

/// Components joined by a union sign, after dropping those provably
/// contained in another.
std::string render_union(std::span<const SetDescription> parts);

}  // namespace knx
