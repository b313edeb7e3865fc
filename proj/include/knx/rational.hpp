#pragma once

// Exact rational scalars and vectors backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace knx {

/// GMP rationals stay canonical (reduced, positive denominator) under
/// arithmetic; values produced by parse_rational are canonicalized explicitly.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major

/// Accepts "p", "-p", "+p" and "p/q" with q != 0. Anything else (decimal
/// points, exponents, whitespace) is a Schema error.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& value);
std::string to_string(const RationalVector& v);

Rational make_rational(long numerator, long denominator = 1);
RationalVector make_vector(std::initializer_list<Rational> entries);
RationalVector zero_vector(std::size_t n);
RationalVector unit_vector(std::size_t n, std::size_t i);

RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scaled(const RationalVector& a, const Rational& s);
RationalVector negated(const RationalVector& a);
bool is_zero(const RationalVector& a);

/// Standard (identity-form) dot product; pairings under a general form go
/// through GramForm.
Rational dot(const RationalVector& a, const RationalVector& b);

int sign(const Rational& value);
Rational abs(const Rational& value);

mpz_class lcm_of_denominators(const RationalVector& v);
mpz_class gcd_of_numerators(const RationalVector& v);

}  // namespace knx
