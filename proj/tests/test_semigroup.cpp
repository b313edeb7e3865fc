#include <random>
#include <set>

#include "doctest.h"
#include "knx/error.hpp"
#include "knx/exactness.hpp"
#include "knx/kernels.hpp"
#include "knx/oracle.hpp"
#include "knx/semigroup.hpp"

using namespace knx;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

NumericalSemigroup sg(std::initializer_list<Rational> gens) {
  const std::vector<Rational> g(gens);
  return semigroup_from_generators(g);
}

// Naive bounded enumeration of sums of generators up to limit.
std::vector<bool> naive_members(const std::vector<std::uint64_t>& gens, std::uint64_t limit) {
  std::vector<bool> reach(limit + 1, false);
  reach[0] = true;
  for (std::uint64_t x = 1; x <= limit; ++x) {
    for (auto g : gens) {
      if (g <= x && reach[x - g]) {
        reach[x] = true;
        break;
      }
    }
  }
  return reach;
}

WeightSystem projective(std::size_t n) {
  WeightSystem ws;
  for (std::size_t i = 0; i <= n; ++i) ws.w_weights.push_back(make_vector({q(1)}));
  return ws;
}

}  // namespace

TEST_CASE("compute_shift on the gl(2) Cherednik strata") {
  const ExactnessProblem p = cherednik_preset(2);
  const ShiftData b1 = compute_shift(make_vector({q(1), q(0)}), p.weights, p.group);
  CHECK(b1.half_abs_sum == q(3, 2));
  CHECK(b1.n_minus_sum == -1);
  CHECK(b1.shift == q(1, 2));
  CHECK(b1.semigroup_generators == std::vector<Rational>{q(1)});
  const ShiftData b2 = compute_shift(make_vector({q(1), q(1)}), p.weights, p.group);
  CHECK(b2.half_abs_sum == 1);
  CHECK(b2.n_minus_sum == 0);
  CHECK(b2.shift == 1);
  CHECK(weight_sum_identity_holds(b1));
  CHECK(weight_sum_identity_holds(b2));
}

TEST_CASE("compute_shift on projective space") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const ShiftData d = compute_shift(make_vector({q(-1)}), projective(n), preset_torus(1));
    CHECK(d.shift == q(static_cast<long>(n + 1), 2));
    CHECK(d.semigroup_generators == std::vector<Rational>{q(1)});
  }
}

TEST_CASE("compute_shift errors") {
  // gl(2) acting on C^2 alone: the n^- weights are missing from T*W.
  const WeightSystem ws{{make_vector({q(1), q(0)}), make_vector({q(0), q(1)})}, WeightMode::Cotangent};
  try {
    (void)compute_shift(make_vector({q(3), q(1)}), ws, preset_gl(2));
    FAIL("expected SliceSubtractionFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SliceSubtractionFailure);
  }
  const WeightSystem raw{{make_vector({q(1), q(-1)})}, WeightMode::Raw};
  try {
    (void)compute_shift(make_vector({q(1), q(0)}), raw, preset_gl(2));
    FAIL("expected UnsupportedMode");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedMode);
  }
}

TEST_CASE("full_V strictness uses every weight of the space") {
  const ExactnessProblem p = cherednik_preset(2);
  const ShiftData slice = compute_shift(make_vector({q(2), q(1)}), p.weights, p.group, Strictness::Slice);
  const ShiftData full = compute_shift(make_vector({q(2), q(1)}), p.weights, p.group, Strictness::FullV);
  CHECK(slice.shift == full.shift);
  const std::set<Rational> s(slice.semigroup_generators.begin(), slice.semigroup_generators.end());
  const std::set<Rational> f(full.semigroup_generators.begin(), full.semigroup_generators.end());
  CHECK(std::includes(f.begin(), f.end(), s.begin(), s.end()));
}

TEST_CASE("semigroup_from_generators examples") {
  const auto one = sg({q(1)});
  CHECK(one.gaps().empty());
  CHECK(one.conductor() == 0);
  const auto s23 = sg({q(2), q(3)});
  CHECK(s23.gaps() == std::vector<std::uint64_t>{1});
  CHECK(s23.conductor() == 2);
  const auto s46 = sg({q(4), q(6)});
  CHECK(s46.content() == 2);
  CHECK(s46.gaps() == std::vector<std::uint64_t>{2});
  CHECK(s46.conductor() == 4);
  for (int m : {0, 4, 6, 8, 10, 12}) CHECK(s46.contains(m));
  for (int m : {1, 2, 3, 5, 7}) CHECK_FALSE(s46.contains(m));
  const auto half = sg({q(1, 2), q(3, 4)});
  CHECK(half.scale() == q(1, 4));
  CHECK(half.generators() == std::vector<std::uint64_t>{2, 3});
  const NumericalSemigroup trivial = semigroup_from_generators({});
  CHECK(trivial.is_trivial());
  CHECK(trivial.contains(0));
  CHECK_FALSE(trivial.contains(1));
  CHECK_THROWS_AS(sg({q(0)}), Error);
  CHECK_THROWS_AS(sg({q(-1)}), Error);
}

TEST_CASE("semigroup DP refuses oversized tables") {
  try {
    (void)sg({Rational(30011), Rational(30013)});
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("membership examples") {
  CHECK(membership(sg({q(1)}), q(1, 2), q(5, 2)));
  CHECK_FALSE(membership(sg({q(1)}), q(1, 2), q(1, 3)));
  CHECK_FALSE(membership(sg({q(2), q(3)}), 0, 1));
  CHECK(membership(sg({q(2), q(3)}), 0, 5));
  CHECK_FALSE(membership(sg({q(1)}), 1, q(1, 2)));
}

TEST_CASE("forbidden_set_description renders") {
  CHECK(forbidden_set_description(sg({q(1)}), q(1, 2)).render() == "1/2 + ℤ≥0");
  CHECK(forbidden_set_description(sg({q(1, 2)}), 1).render() == "1 + (1/2)ℤ≥0");
  CHECK(forbidden_set_description(sg({q(2), q(3)}), 0).render() == "ℤ≥0 minus {1}");
  CHECK(forbidden_set_description(semigroup_from_generators({}), q(3, 2)).render() == "{3/2}");
  const SetDescription d = forbidden_set_description(sg({q(4), q(6)}), 1);
  CHECK(d.render() == "1 + 2ℤ≥0 minus {3}");
}

TEST_CASE("DP membership equals naive bounded enumeration") {
  std::mt19937_64 rng(61);
  for (int set = 0; set < 50; ++set) {
    const std::size_t k = 1 + rng() % 4;
    std::vector<Rational> gens;
    std::vector<std::uint64_t> ints;
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t g = 1 + rng() % 20;
      ints.push_back(g);
      gens.push_back(Rational(static_cast<unsigned long>(g)));
    }
    const NumericalSemigroup s = semigroup_from_generators(gens);
    const auto naive = naive_members(ints, 200);
    for (std::uint64_t m = 0; m <= 200; ++m) {
      CAPTURE(m);
      CHECK(s.contains(static_cast<unsigned long>(m)) == naive[m]);
    }
  }
}

TEST_CASE("DP is identical under the scalar and AVX2 kernels") {
  std::mt19937_64 rng(62);
  for (int set = 0; set < 30; ++set) {
    std::vector<Rational> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(Rational(static_cast<long>(50 + rng() % 400)));
    kernels::force_isa(kernels::Isa::Scalar);
    const NumericalSemigroup a = semigroup_from_generators(gens);
    kernels::force_isa(kernels::Isa::Avx2);
    const NumericalSemigroup b = semigroup_from_generators(gens);
    kernels::reset_isa();
    CHECK(a.gaps() == b.gaps());
    CHECK(a.conductor() == b.conductor());
  }
}

TEST_CASE("set descriptions are sound pointwise") {
  std::mt19937_64 rng(63);
  for (int set = 0; set < 50; ++set) {
    std::vector<Rational> gens;
    std::vector<std::uint64_t> ints;
    const std::uint64_t den = 1 + rng() % 3;
    for (int i = 0; i < 3; ++i) {
      const std::uint64_t g = 1 + rng() % 12;
      ints.push_back(g);
      gens.push_back(q(static_cast<long>(g), static_cast<long>(den)));
    }
    const NumericalSemigroup s = semigroup_from_generators(gens);
    const Rational shift = q(static_cast<long>(rng() % 7) - 3, 2);
    const SetDescription d = forbidden_set_description(s, shift);
    for (auto gap : d.gaps) CHECK(gap < d.conductor);
    const std::uint64_t limit = s.conductor() + 3 * s.content();
    const auto naive = naive_members(ints, limit);
    for (std::uint64_t m = 0; m <= limit; ++m) {
      const Rational value = shift + q(static_cast<long>(m), static_cast<long>(den));
      CAPTURE(m);
      CHECK(d.contains(value) == naive[m]);
      CHECK(membership(s, shift, value) == naive[m]);
    }
    CHECK_FALSE(d.contains(shift - q(1, static_cast<long>(den))));
  }
}

TEST_CASE("witnesses re-verify") {
  const auto s = sg({q(1, 2), q(3, 4)});
  for (int k = 0; k < 40; ++k) {
    const Rational value = q(1, 3) + q(k, 4);
    const auto w = find_witness(s, q(1, 3), value);
    CHECK(w.has_value() == membership(s, q(1, 3), value));
    if (w) CHECK(w->verify());
  }
  const auto big = find_witness(sg({q(3), q(5)}), 0, Rational(mpz_class("1000000000000")));
  REQUIRE(big);
  CHECK(big->verify());
  Witness bad = *big;
  bad.counts[0] += 1;
  CHECK_FALSE(bad.verify());
}

TEST_CASE("pull_back, translated and union rendering") {
  const SetDescription base = forbidden_set_description(sg({q(1)}), q(3, 2));
  // value = 3/2 - t: t in -(3/2 + Z>=0) written as -3 - Z>=0 when base is 3/2.
  const SetDescription t = pull_back(base, q(-3, 2), -1);
  CHECK(t.render() == "-3 - ℤ≥0");
  CHECK(t.contains(-3));
  CHECK(t.contains(-7));
  CHECK_FALSE(t.contains(-2));
  CHECK(translated(t, q(1, 2)).render() == "-5/2 - ℤ≥0");
  CHECK_THROWS_AS(pull_back(base, 0, 0), Error);

  const SetDescription a = forbidden_set_description(sg({q(1)}), q(1, 2));
  const SetDescription b = forbidden_set_description(sg({q(1, 2)}), q(1, 2));
  const SetDescription c = forbidden_set_description(sg({q(1, 3)}), q(1, 2));
  CHECK(provably_contained(a, b));
  CHECK_FALSE(provably_contained(b, a));
  const std::vector<SetDescription> parts{a, b, c};
  CHECK(render_union(parts) == "1/2 + (1/2)ℤ≥0 ∪ 1/2 + (1/3)ℤ≥0");
  const std::vector<SetDescription> same{a, a};
  CHECK(render_union(same) == "1/2 + ℤ≥0");
  CHECK(render_union({}) == "{}");
  SetDescription all;
  all.all = true;
  const std::vector<SetDescription> with_all{a, all};
  CHECK(render_union(with_all) == "Q");
}

TEST_CASE("weight-sum identity, shift parity and equivalent form on random problems") {
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<int> num(-12, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactnessProblem p = random_sample(77, trial);
    for (const auto& st : enumerate_kn(p.weights, p.chi, p.group).strata) {
      const ShiftData d = compute_shift(st.beta, p.weights, p.group);
      const ShiftData m = compute_shift(negated(st.beta), p.weights, p.group);
      CHECK(weight_sum_identity_holds(d));
      CHECK(d.shift == m.shift);
      CHECK(d.semigroup_generators == m.semigroup_generators);
      const NumericalSemigroup s = semigroup_from_generators(d.semigroup_generators);
      for (int k = 0; k < 25; ++k) {
        const Rational c = q(num(rng), 1 + rng() % 4);
        CHECK(membership(s, d.shift, c) == membership_equivalent_form(d, s, c));
      }
    }
  }
}
