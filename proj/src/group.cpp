#include "knx/group.hpp"

#include <algorithm>

#include "knx/error.hpp"

namespace knx {
namespace {

bool contains_vector(const std::vector<RationalVector>& set, const RationalVector& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

RationalVector pad(const RationalVector& v, std::size_t offset, std::size_t total) {
  RationalVector out = zero_vector(total);
  std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

GramForm dot_form(std::size_t rank) { return GramForm::identity(rank); }

std::vector<RationalVector> type_a_roots(std::size_t n) {
  std::vector<RationalVector> roots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      RationalVector r = zero_vector(n);
      r[i] = 1;
      r[j] = -1;
      roots.push_back(std::move(r));
    }
  }
  return roots;
}

std::vector<RationalVector> type_a_simple_roots(std::size_t n) {
  std::vector<RationalVector> simple;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    RationalVector r = zero_vector(n);
    r[i] = 1;
    r[i + 1] = -1;
    simple.push_back(std::move(r));
  }
  return simple;
}

}  // namespace

GroupData::GroupData(std::size_t rank, std::vector<RationalVector> roots, std::vector<RationalVector> simple_roots,
                     GramForm form, std::string label, std::vector<RationalVector> central_directions)
    : rank_(rank),
      roots_(std::move(roots)),
      simple_roots_(std::move(simple_roots)),
      form_(std::move(form)),
      label_(std::move(label)),
      central_directions_(std::move(central_directions)) {
  if (rank_ == 0) throw Error(ErrorKind::InvalidParameter, "group rank must be positive");
  if (form_.rank() != rank_) throw Error(ErrorKind::InvalidParameter, "form size does not match the group rank");
  auto check_len = [&](const RationalVector& v, const char* what) {
    if (v.size() != rank_) throw Error(ErrorKind::InvalidParameter, std::string(what) + " has the wrong length");
  };
  for (const auto& r : roots_) {
    check_len(r, "root");
    if (is_zero(r)) throw Error(ErrorKind::InvalidParameter, "zero root");
    if (!contains_vector(roots_, negated(r))) {
      throw Error(ErrorKind::InvalidParameter, "roots are not closed under negation: " + to_string(r));
    }
  }
  for (const auto& c : central_directions_) check_len(c, "central direction");
  for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
    check_len(simple_roots_[i], "simple root");
    if (!contains_vector(roots_, simple_roots_[i])) {
      throw Error(ErrorKind::InvalidParameter, "simple root is not a root: " + to_string(simple_roots_[i]));
    }
    for (const auto& r : roots_) {
      if (!contains_vector(roots_, reflect(r, i))) {
        throw Error(ErrorKind::InvalidParameter, "reflection in " + to_string(simple_roots_[i]) +
                                                     " does not preserve the root set");
      }
    }
    // s^T q s = q, checked on the coordinate basis.
    for (std::size_t a = 0; a < rank_; ++a) {
      const RationalVector sa = reflect(unit_vector(rank_, a), i);
      for (std::size_t b = a; b < rank_; ++b) {
        const RationalVector sb = reflect(unit_vector(rank_, b), i);
        if (form_.dot(sa, sb) != form_.matrix()[a][b]) {
          throw Error(ErrorKind::InvalidParameter, "form is not invariant under the reflection in " +
                                                       to_string(simple_roots_[i]));
        }
      }
    }
  }
}

RationalVector GroupData::reflect(const RationalVector& v, std::size_t i) const {
  const RationalVector& r = simple_roots_.at(i);
  const Rational coeff = 2 * form_.dot(v, r) / form_.dot(r, r);
  return sub(v, scaled(r, coeff));
}

RationalVector GroupData::quotient(const RationalVector& v) const {
  if (central_directions_.empty()) return v;
  return project_out_span(v, central_directions_, form_);
}

GroupData preset_torus(std::size_t rank) {
  if (rank == 0) throw Error(ErrorKind::InvalidParameter, "torus rank must be >= 1");
  return GroupData(rank, {}, {}, dot_form(rank), "torus(" + std::to_string(rank) + ")");
}

GroupData preset_gl(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "gl(n) needs n >= 1");
  return GroupData(n, type_a_roots(n), type_a_simple_roots(n), dot_form(n), "gl(" + std::to_string(n) + ")");
}

GroupData preset_sl(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "sl(n) needs n >= 1");
  RationalVector center(n, Rational(1));
  return GroupData(n, type_a_roots(n), type_a_simple_roots(n), dot_form(n), "sl(" + std::to_string(n) + ")",
                   {center});
}

GroupData preset_product(std::span<const GroupData> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidParameter, "product of no groups");
  std::size_t total = 0;
  for (const auto& f : factors) total += f.rank();
  std::vector<RationalVector> roots, simple, central;
  RationalMatrix form(total, zero_vector(total));
  std::string label;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& r : f.roots()) roots.push_back(pad(r, offset, total));
    for (const auto& r : f.simple_roots()) simple.push_back(pad(r, offset, total));
    for (const auto& c : f.central_directions()) central.push_back(pad(c, offset, total));
    for (std::size_t i = 0; i < f.rank(); ++i) {
      for (std::size_t j = 0; j < f.rank(); ++j) form[offset + i][offset + j] = f.form().matrix()[i][j];
    }
    label += (label.empty() ? "" : " x ") + f.label();
    offset += f.rank();
  }
  return GroupData(total, std::move(roots), std::move(simple), GramForm(std::move(form)), label, std::move(central));
}

RationalVector weyl_canonicalize(const RationalVector& v, const GroupData& g) {
  if (v.size() != g.rank()) throw Error(ErrorKind::InvalidParameter, "weyl_canonicalize: length mismatch");
  RationalVector cur = v;
  // Every step strictly raises the height of cur, so this terminates for a
  // finite Weyl group; the guard only catches malformed custom data.
  const std::size_t guard = 100000;
  for (std::size_t step = 0; step < guard; ++step) {
    bool moved = false;
    for (std::size_t i = 0; i < g.simple_roots().size(); ++i) {
      if (sgn(g.form().dot(cur, g.simple_roots()[i])) < 0) {
        cur = g.reflect(cur, i);
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
  throw Error(ErrorKind::InternalInconsistency, "weyl_canonicalize did not terminate");
}

RationalVector primitive_rescale(const RationalVector& v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "primitive_rescale of the zero vector");
  const mpz_class l = lcm_of_denominators(v);
  RationalVector ints = scaled(v, Rational(l));
  const mpz_class g = gcd_of_numerators(ints);
  return scaled(ints, Rational(mpz_class(1), g));
}

Rational negative_root_weight_sum(const RationalVector& beta, const GroupData& g) {
  Rational acc = 0;
  for (const auto& r : g.roots()) {
    const Rational w = g.form().dot(r, beta);
    if (sgn(w) < 0) acc += w;
  }
  return acc;
}

void validate(const TorusCharacter& chi, const GroupData& g) {
  if (chi.vector.size() != g.rank()) throw Error(ErrorKind::InvalidParameter, "character length does not match rank");
  if (chi.integral) {
    for (const auto& x : chi.vector) {
      if (x.get_den() != 1) {
        throw Error(ErrorKind::InvalidParameter, "group character must have integer entries: " + to_string(chi.vector));
      }
    }
  }
}

void validate(const LieCharacter& c, const GroupData& g) {
  auto check = [&](const RationalVector& v, const char* what) {
    if (v.size() != g.rank()) throw Error(ErrorKind::InvalidParameter, std::string(what) + " length does not match rank");
    for (const auto& r : g.roots()) {
      if (sgn(g.form().dot(v, r)) != 0) {
        throw Error(ErrorKind::InvalidParameter, std::string(what) + " " + to_string(v) +
                                                     " does not vanish on the root " + to_string(r));
      }
    }
  };
  check(c.base, "Lie character");
  if (c.direction) check(*c.direction, "Lie character direction");
}

}  // namespace knx
