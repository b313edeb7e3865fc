#pragma once

// Infinitesimal scalars c0 + c1*eps + c2*eps^2, compared in the limit
// eps -> 0 from below, plus the positive definite pairing used everywhere.

#include <span>
#include <string>

#include "knx/rational.hpp"

namespace knx {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

struct EpsScalar {
  Rational c0 = 0;
  Rational c1 = 0;
  Rational c2 = 0;

  static EpsScalar constant(Rational value) { return {std::move(value), 0, 0}; }
  static EpsScalar linear(Rational value) { return {0, std::move(value), 0}; }

  [[nodiscard]] int degree() const;  // -1 for the zero polynomial
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const EpsScalar&, const EpsScalar&) = default;
};

EpsScalar operator+(const EpsScalar& a, const EpsScalar& b);
EpsScalar operator-(const EpsScalar& a, const EpsScalar& b);
EpsScalar operator-(const EpsScalar& a);
/// Throws DegreeOverflow when the product has a nonzero term above eps^2.
EpsScalar operator*(const EpsScalar& a, const EpsScalar& b);
EpsScalar operator*(const EpsScalar& a, const Rational& s);

/// Sign of x(eps) for every sufficiently small eps < 0.
Sign eps_sign(const EpsScalar& x);
Rational evaluate(const EpsScalar& x, const Rational& eps);
std::string to_string(const EpsScalar& x);

/// constant + eps * linear.
struct EpsVector {
  RationalVector constant;
  RationalVector linear;

  static EpsVector from_constant(RationalVector v);
  static EpsVector infinitesimal(RationalVector v);  // 0 + eps*v
  static EpsVector perturbed(RationalVector v, RationalVector direction);

  [[nodiscard]] std::size_t size() const { return constant.size(); }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] RationalVector evaluate(const Rational& eps) const;

  friend bool operator==(const EpsVector&, const EpsVector&) = default;
};

EpsVector add(const EpsVector& a, const EpsVector& b);
EpsVector sub(const EpsVector& a, const EpsVector& b);
/// acc += t * d for a scalar of degree <= 1 and a rational direction.
void accumulate(EpsVector& acc, const EpsScalar& t, const RationalVector& d);
std::string to_string(const EpsVector& v);

/// Symmetric positive definite pairing on the rank-r lattice. Validated at
/// construction (symmetry, leading principal minors > 0).
class GramForm {
 public:
  explicit GramForm(RationalMatrix matrix);
  static GramForm identity(std::size_t rank);

  [[nodiscard]] std::size_t rank() const { return matrix_.size(); }
  [[nodiscard]] const RationalMatrix& matrix() const { return matrix_; }
  [[nodiscard]] bool is_identity() const { return identity_; }

  [[nodiscard]] Rational dot(const RationalVector& u, const RationalVector& v) const;
  [[nodiscard]] Rational norm2(const RationalVector& u) const { return dot(u, u); }

  friend bool operator==(const GramForm& a, const GramForm& b) { return a.matrix_ == b.matrix_; }

 private:
  RationalMatrix matrix_;
  bool identity_ = false;
};

bool is_positive_definite(const RationalMatrix& m);

/// u^T q v expanded in eps.
EpsScalar pair(const EpsVector& u, const EpsVector& v, const GramForm& q);
EpsScalar squared_distance(const EpsVector& u, const EpsVector& v, const GramForm& q);

/// v minus its q-orthogonal projection onto span(spanning). The spanning
/// family may be empty or linearly dependent.
RationalVector project_out_span(const RationalVector& v, std::span<const RationalVector> spanning,
                                const GramForm& q);

}  // namespace knx
