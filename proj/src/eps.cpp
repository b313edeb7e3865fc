#include "knx/eps.hpp"

#include "knx/error.hpp"
#include "knx/linalg.hpp"

namespace knx {

int EpsScalar::degree() const {
  if (sgn(c2) != 0) return 2;
  if (sgn(c1) != 0) return 1;
  if (sgn(c0) != 0) return 0;
  return -1;
}

bool EpsScalar::is_zero() const { return degree() < 0; }

EpsScalar operator+(const EpsScalar& a, const EpsScalar& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }

EpsScalar operator-(const EpsScalar& a, const EpsScalar& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }

EpsScalar operator-(const EpsScalar& a) { return {-a.c0, -a.c1, -a.c2}; }

EpsScalar operator*(const EpsScalar& a, const EpsScalar& b) {
  if (a.degree() + b.degree() > 2) {
    throw Error(ErrorKind::DegreeOverflow, "product " + to_string(a) + " * " + to_string(b) + " exceeds eps^2");
  }
  EpsScalar out;
  out.c0 = a.c0 * b.c0;
  out.c1 = a.c0 * b.c1 + a.c1 * b.c0;
  out.c2 = a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0;
  return out;
}

EpsScalar operator*(const EpsScalar& a, const Rational& s) { return {a.c0 * s, a.c1 * s, a.c2 * s}; }

Sign eps_sign(const EpsScalar& x) {
  // eps < 0 flips the linear coefficient; eps^2 > 0 keeps the quadratic one.
  int s = sgn(x.c0);
  if (s == 0) s = -sgn(x.c1);
  if (s == 0) s = sgn(x.c2);
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

Rational evaluate(const EpsScalar& x, const Rational& eps) { return x.c0 + eps * (x.c1 + eps * x.c2); }

std::string to_string(const EpsScalar& x) {
  return to_string(x.c0) + " + " + to_string(x.c1) + "e + " + to_string(x.c2) + "e^2";
}

EpsVector EpsVector::from_constant(RationalVector v) {
  const std::size_t n = v.size();
  return {std::move(v), zero_vector(n)};
}

EpsVector EpsVector::infinitesimal(RationalVector v) {
  const std::size_t n = v.size();
  return {zero_vector(n), std::move(v)};
}

EpsVector EpsVector::perturbed(RationalVector v, RationalVector direction) {
  if (v.size() != direction.size()) throw Error(ErrorKind::InvalidParameter, "length mismatch in EpsVector");
  return {std::move(v), std::move(direction)};
}

bool EpsVector::is_zero() const { return knx::is_zero(constant) && knx::is_zero(linear); }

RationalVector EpsVector::evaluate(const Rational& eps) const { return add(constant, scaled(linear, eps)); }

EpsVector add(const EpsVector& a, const EpsVector& b) { return {add(a.constant, b.constant), add(a.linear, b.linear)}; }

EpsVector sub(const EpsVector& a, const EpsVector& b) { return {sub(a.constant, b.constant), sub(a.linear, b.linear)}; }

void accumulate(EpsVector& acc, const EpsScalar& t, const RationalVector& d) {
  if (sgn(t.c2) != 0) throw Error(ErrorKind::DegreeOverflow, "quadratic coefficient on a point");
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc.constant[i] += t.c0 * d[i];
    acc.linear[i] += t.c1 * d[i];
  }
}

std::string to_string(const EpsVector& v) {
  if (knx::is_zero(v.linear)) return to_string(v.constant);
  if (knx::is_zero(v.constant)) return "e*" + to_string(v.linear);
  return to_string(v.constant) + " + e*" + to_string(v.linear);
}

bool is_positive_definite(const RationalMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) return false;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix minor(k, RationalVector(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = m[i][j];
    }
    if (sgn(linalg::determinant(std::move(minor))) <= 0) return false;
  }
  return n > 0;
}

GramForm::GramForm(RationalMatrix matrix) : matrix_(std::move(matrix)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "empty Gram form");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw Error(ErrorKind::InvalidParameter, "Gram form is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (matrix_[i][j] != matrix_[j][i]) throw Error(ErrorKind::InvalidParameter, "Gram form is not symmetric");
    }
  }
  if (!is_positive_definite(matrix_)) throw Error(ErrorKind::InvalidParameter, "Gram form is not positive definite");
  identity_ = true;
  for (std::size_t i = 0; i < n && identity_; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix_[i][j] != (i == j ? 1 : 0)) {
        identity_ = false;
        break;
      }
    }
  }
}

GramForm GramForm::identity(std::size_t rank) {
  RationalMatrix m(rank, zero_vector(rank));
  for (std::size_t i = 0; i < rank; ++i) m[i][i] = 1;
  return GramForm(std::move(m));
}

Rational GramForm::dot(const RationalVector& u, const RationalVector& v) const {
  if (u.size() != rank() || v.size() != rank()) throw Error(ErrorKind::InvalidParameter, "pairing length mismatch");
  if (identity_) return knx::dot(u, v);
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += matrix_[i][j] * v[j];
    acc += u[i] * row;
  }
  return acc;
}

EpsScalar pair(const EpsVector& u, const EpsVector& v, const GramForm& q) {
  EpsScalar out;
  out.c0 = q.dot(u.constant, v.constant);
  out.c1 = q.dot(u.constant, v.linear) + q.dot(u.linear, v.constant);
  out.c2 = q.dot(u.linear, v.linear);
  return out;
}

EpsScalar squared_distance(const EpsVector& u, const EpsVector& v, const GramForm& q) {
  const EpsVector d = sub(u, v);
  return pair(d, d, q);
}

RationalVector project_out_span(const RationalVector& v, std::span<const RationalVector> spanning, const GramForm& q) {
  const auto basis_idx = linalg::independent_subset(spanning);
  if (basis_idx.empty()) return v;
  const std::size_t k = basis_idx.size();
  RationalMatrix gram(k, RationalVector(k));
  RationalMatrix rhs(k, RationalVector(1));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& bi = spanning[basis_idx[i]];
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = q.dot(bi, spanning[basis_idx[j]]);
    rhs[i][0] = q.dot(bi, v);
  }
  const auto coeffs = linalg::solve(std::move(gram), std::move(rhs));
  if (!coeffs) throw Error(ErrorKind::InternalInconsistency, "singular Gram matrix on an independent family");
  RationalVector out = v;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& bi = spanning[basis_idx[i]];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= (*coeffs)[i][0] * bi[j];
  }
  return out;
}

}  // namespace knx
