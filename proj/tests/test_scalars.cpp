#include <random>

#include "doctest.h"
#include "knx/eps.hpp"
#include "knx/error.hpp"
#include "knx/linalg.hpp"
#include "knx/rational.hpp"

using namespace knx;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidParameter;
}

}  // namespace

TEST_CASE("parse_rational accepts integers and fractions and reduces") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("+2") == 2);
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(parse_rational("0/5") == 0);
  CHECK(parse_rational("-6/4").get_den() == 2);
  CHECK(parse_rational("-6/4").get_num() == -3);
  CHECK(parse_rational("123456789012345678901234567890") == Rational(mpz_class("123456789012345678901234567890")));
}

TEST_CASE("parse_rational rejects floats, whitespace and zero denominators") {
  for (const char* bad : {"1.5", "1e3", " 1", "1 ", "", "/2", "1/", "1/0", "--1", "1/-2", "abc", "0x10"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { (void)parse_rational(bad); }) == ErrorKind::Schema);
  }
}

TEST_CASE("rationals print as p/q or p") {
  CHECK(to_string(q(1, 2)) == "1/2");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK(to_string(q(0)) == "0");
  CHECK(to_string(make_vector({q(1), q(-1, 3)})) == "(1, -1/3)");
  for (long n = -20; n <= 20; ++n) {
    for (long d = 1; d <= 7; ++d) CHECK(parse_rational(to_string(q(n, d))) == q(n, d));
  }
}

TEST_CASE("vector helpers") {
  const RationalVector a = make_vector({q(1, 2), q(3)});
  const RationalVector b = make_vector({q(-1), q(1, 3)});
  CHECK(add(a, b) == make_vector({q(-1, 2), q(10, 3)}));
  CHECK(sub(a, b) == make_vector({q(3, 2), q(8, 3)}));
  CHECK(scaled(a, 2) == make_vector({q(1), q(6)}));
  CHECK(negated(b) == make_vector({q(1), q(-1, 3)}));
  CHECK(dot(a, b) == q(1, 2));
  CHECK(is_zero(zero_vector(3)));
  CHECK(unit_vector(3, 1) == make_vector({q(0), q(1), q(0)}));
  CHECK(lcm_of_denominators(make_vector({q(1, 4), q(1, 6), q(2)})) == 12);
  CHECK(gcd_of_numerators(make_vector({q(4), q(6), q(0)})) == 2);
}

TEST_CASE("linear solve, determinant and spans") {
  RationalMatrix a{{q(2), q(1)}, {q(1), q(3)}};
  CHECK(linalg::determinant(a) == 5);
  const auto x = linalg::solve(a, {{q(1)}, {q(2)}});
  REQUIRE(x);
  CHECK((*x)[0][0] == q(1, 5));
  CHECK((*x)[1][0] == q(3, 5));
  CHECK_FALSE(linalg::solve({{q(1), q(2)}, {q(2), q(4)}}, {{q(1)}, {q(1)}}));

  const std::vector<RationalVector> rows{make_vector({q(1), q(0)}), make_vector({q(2), q(0)})};
  CHECK(linalg::rank_of(rows, 2) == 1);
  CHECK(linalg::independent_subset(rows) == std::vector<std::size_t>{0});
  const auto basis = linalg::reduced_basis(rows, 2);
  CHECK(linalg::in_span(basis, make_vector({q(-5), q(0)})));
  CHECK_FALSE(linalg::in_span(basis, make_vector({q(0), q(1)})));
  const std::vector<RationalVector> other{make_vector({q(3), q(0)})};
  CHECK(linalg::reduced_basis(other, 2) == basis);
}

TEST_CASE("eps_sign follows the small negative eps rule") {
  CHECK(eps_sign({q(3), 0, 0}) == Sign::Positive);
  CHECK(eps_sign({0, q(2), 0}) == Sign::Negative);
  CHECK(eps_sign({0, 0, q(5)}) == Sign::Positive);
  CHECK(eps_sign({0, q(-2), q(-100)}) == Sign::Positive);
  CHECK(eps_sign({q(-1, 1000), q(1000), 0}) == Sign::Negative);
  CHECK(eps_sign({}) == Sign::Zero);
}

TEST_CASE("eps_sign agrees with numeric evaluation at small eps") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const EpsScalar x{q(coef(rng)), q(coef(rng)), q(coef(rng))};
    const int k = 20 + trial % 10;
    const Rational e1(-1, mpz_class(1) << k);
    const Rational e2(-1, mpz_class(1) << (k + 1));
    const int s1 = sgn(evaluate(x, e1));
    const int s2 = sgn(evaluate(x, e2));
    if (s1 != s2) continue;
    CHECK(static_cast<int>(eps_sign(x)) == s1);
    ++compared;
  }
  CHECK(compared > 900);
}

TEST_CASE("eps_sign is compatible with addition") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const EpsScalar x{q(coef(rng)), q(coef(rng)), q(coef(rng))};
    const EpsScalar y{q(coef(rng)), q(coef(rng)), q(coef(rng))};
    if (eps_sign(x) == Sign::Positive && eps_sign(y) == Sign::Positive) CHECK(eps_sign(x + y) == Sign::Positive);
    CHECK(eps_sign(-x) == static_cast<Sign>(-static_cast<int>(eps_sign(x))));
  }
}

TEST_CASE("products above eps^2 overflow") {
  const EpsScalar lin = EpsScalar::linear(1);
  CHECK((lin * lin) == EpsScalar{0, 0, 1});
  CHECK(kind_of([&] { (void)((lin * lin) * lin); }) == ErrorKind::DegreeOverflow);
  CHECK(((lin * lin) * EpsScalar::constant(3)) == EpsScalar{0, 0, 3});
}

TEST_CASE("pair expands u^T q v in eps") {
  const GramForm id = GramForm::identity(2);
  CHECK(pair(EpsVector::from_constant(make_vector({q(1), q(0)})), EpsVector::from_constant(make_vector({q(0), q(1)})),
             id)
            .is_zero());
  const EpsVector e = EpsVector::infinitesimal(make_vector({q(0), q(1)}));
  CHECK(pair(e, e, id) == EpsScalar{0, 0, 1});
  const EpsVector u = EpsVector::perturbed(make_vector({q(1), q(1)}), make_vector({q(0), q(1)}));
  CHECK(pair(u, EpsVector::from_constant(make_vector({q(1), q(0)})), id) == EpsScalar::constant(1));
}

TEST_CASE("GramForm validation") {
  CHECK(GramForm::identity(3).is_identity());
  CHECK(kind_of([] { GramForm(RationalMatrix{{0, 0}, {0, 0}}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { GramForm(RationalMatrix{{1, 2}, {0, 1}}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { GramForm(RationalMatrix{{1, 2}, {2, 1}}); }) == ErrorKind::InvalidParameter);
  const GramForm g(RationalMatrix{{2, -1}, {-1, 2}});
  CHECK_FALSE(g.is_identity());
  CHECK(g.dot(make_vector({q(1), q(0)}), make_vector({q(0), q(1)})) == -1);
  CHECK(is_positive_definite({{2, -1}, {-1, 2}}));
  CHECK_FALSE(is_positive_definite({{1, 0}, {0, -1}}));
}

TEST_CASE("project_out_span examples") {
  const GramForm id = GramForm::identity(2);
  const std::vector<RationalVector> s1{make_vector({q(1), q(1)})};
  CHECK(project_out_span(make_vector({q(0), q(1)}), s1, id) == make_vector({q(-1, 2), q(1, 2)}));
  CHECK(project_out_span(make_vector({q(1), q(1)}), {}, id) == make_vector({q(1), q(1)}));
  const std::vector<RationalVector> s2{make_vector({q(1), q(0)}), make_vector({q(2), q(0)})};
  CHECK(project_out_span(make_vector({q(1), q(0)}), s2, id) == make_vector({q(0), q(0)}));
}

TEST_CASE("project_out_span is orthogonal to the span and idempotent") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coef(-3, 3);
  const GramForm g(RationalMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&] { return make_vector({q(coef(rng)), q(coef(rng)), q(coef(rng))}); };
    std::vector<RationalVector> span;
    const int k = trial % 4;
    for (int i = 0; i < k; ++i) span.push_back(draw());
    const RationalVector v = draw();
    const RationalVector p = project_out_span(v, span, g);
    for (const auto& s : span) CHECK(g.dot(p, s) == 0);
    CHECK(project_out_span(p, span, g) == p);
  }
}
