#include "knx/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "knx/error.hpp"
#include "knx/kernels.hpp"

namespace knx {
namespace {

constexpr std::uint64_t kMaxReachBits = std::uint64_t{1} << 28;

bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t k) { return (bits[k / 64] >> (k % 64)) & 1U; }

Rational sum_abs(const std::vector<Rational>& xs) {
  Rational acc = 0;
  for (const auto& x : xs) acc += abs(x);
  return acc;
}

// Integer quotient of an exact rational, if it is a nonnegative integer.
std::optional<mpz_class> nonnegative_integer(const Rational& x) {
  if (x.get_den() != 1 || sgn(x) < 0) return std::nullopt;
  return mpz_class(x.get_num());
}

std::uint64_t to_u64(const mpz_class& z) {
  if (!z.fits_ulong_p()) throw Error(ErrorKind::CapExceeded, "semigroup generator exceeds 64 bits");
  return z.get_ui();
}

}  // namespace

ShiftData compute_shift(const RationalVector& beta, const WeightSystem& ws, const GroupData& g, Strictness strictness) {
  validate(ws, g);
  if (beta.size() != g.rank()) throw Error(ErrorKind::InvalidParameter, "beta length does not match rank");
  if (ws.mode == WeightMode::Raw && !g.is_torus()) {
    throw Error(ErrorKind::UnsupportedMode, "raw mode needs a torus (n^- must be empty)");
  }
  const GramForm& q = g.form();
  ShiftData out;
  out.beta = beta;

  std::vector<Rational> w_pairings;
  for (const auto& a : ws.w_weights) w_pairings.push_back(q.dot(a, beta));
  out.space_weights = w_pairings;
  if (ws.mode == WeightMode::Cotangent) {
    out.half_abs_sum = sum_abs(w_pairings) / 2;
    for (const auto& x : w_pairings) out.space_weights.push_back(-x);
  } else {
    out.half_abs_sum = sum_abs(w_pairings) / 4;
  }
  out.n_minus_sum = negative_root_weight_sum(beta, g);
  out.shift = out.n_minus_sum + out.half_abs_sum;

  std::multiset<Rational> remaining(out.space_weights.begin(), out.space_weights.end());
  auto take = [&](const Rational& w) {
    auto it = remaining.find(w);
    if (it == remaining.end()) {
      throw Error(ErrorKind::SliceSubtractionFailure, "weight " + to_string(w) + " of T*n^- is missing from the space");
    }
    remaining.erase(it);
  };
  for (const auto& r : g.roots()) {
    const Rational w = q.dot(r, beta);
    if (sgn(w) < 0) {
      take(w);
      take(-w);
    }
  }
  out.slice_weights.assign(remaining.begin(), remaining.end());

  if (!weight_sum_identity_holds(out)) {
    throw Error(ErrorKind::InternalInconsistency, "weight-sum identity fails for beta " + to_string(beta));
  }

  const auto& source = strictness == Strictness::Slice ? out.slice_weights : out.space_weights;
  std::set<Rational> gens;
  for (const auto& w : source) {
    if (sgn(w) != 0) gens.insert(abs(w));
  }
  out.semigroup_generators.assign(gens.begin(), gens.end());
  return out;
}

bool weight_sum_identity_holds(const ShiftData& data) {
  return 4 * data.half_abs_sum == sum_abs(data.slice_weights) - 2 * data.n_minus_sum;
}

NumericalSemigroup semigroup_from_generators(std::span<const Rational> gens) {
  NumericalSemigroup s;
  std::set<Rational> distinct;
  for (const auto& g : gens) {
    if (sgn(g) <= 0) throw Error(ErrorKind::InvalidParameter, "semigroup generators must be positive");
    distinct.insert(g);
  }
  s.rational_generators_.assign(distinct.begin(), distinct.end());
  if (distinct.empty()) return s;

  const mpz_class lcm = lcm_of_denominators(s.rational_generators_);
  s.scale_ = Rational(mpz_class(1), lcm);
  mpz_class content = 0;
  for (const auto& g : s.rational_generators_) {
    const mpz_class as_int = mpz_class(g.get_num()) * (lcm / mpz_class(g.get_den()));
    s.generators_.push_back(to_u64(as_int));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), as_int.get_mpz_t());
  }
  s.content_ = to_u64(content);

  std::vector<std::uint64_t> reduced;
  for (auto g : s.generators_) reduced.push_back(g / s.content_);
  const std::uint64_t hmin = *std::min_element(reduced.begin(), reduced.end());
  const std::uint64_t hmax = *std::max_element(reduced.begin(), reduced.end());
  // Every integer above (hmin - 1)(hmax - 1) - 1 is representable once the
  // generators are coprime.
  const mpz_class bound = mpz_class(hmin - 1) * mpz_class(hmax - 1) + hmin + 1;
  if (bound > mpz_class(static_cast<unsigned long>(kMaxReachBits))) {
    throw Error(ErrorKind::CapExceeded, "semigroup DP table would exceed 2^28 entries");
  }
  s.reach_bits_ = bound.get_ui();
  s.reach_.assign((s.reach_bits_ + 63) / 64, 0);
  s.reach_[0] = 1;
  for (auto h : reduced) {
    for (std::uint64_t step = h; step < s.reach_bits_; step *= 2) kernels::shift_or(s.reach_, step);
  }
  for (std::uint64_t k = 0; k < s.reach_bits_; ++k) {
    if (!test_bit(s.reach_, k)) s.gaps_.push_back(k * s.content_);
  }
  s.conductor_ = s.gaps_.empty() ? 0 : s.gaps_.back() + s.content_;
  return s;
}

bool NumericalSemigroup::contains(const mpz_class& m) const {
  if (sgn(m) < 0) return false;
  if (is_trivial()) return m == 0;
  if (m % content_ != 0) return false;
  const mpz_class k = m / content_;
  if (k >= mpz_class(static_cast<unsigned long>(reach_bits_))) return true;
  return test_bit(reach_, k.get_ui());
}

std::optional<std::vector<mpz_class>> NumericalSemigroup::decompose(const mpz_class& m) const {
  if (!contains(m)) return std::nullopt;
  std::vector<mpz_class> counts(generators_.size(), 0);
  if (is_trivial()) return counts;
  mpz_class k = m / content_;
  const auto reduced = [&](std::size_t i) { return generators_[i] / content_; };
  const std::size_t imin = static_cast<std::size_t>(
      std::min_element(generators_.begin(), generators_.end()) - generators_.begin());
  const mpz_class limit(static_cast<unsigned long>(reach_bits_));
  if (k >= limit) {
    // Everything from the table end upward is a member; step down by the
    // smallest generator into the table.
    const mpz_class h(static_cast<unsigned long>(reduced(imin)));
    const mpz_class steps = (k - limit) / h + 1;
    counts[imin] += steps;
    k -= steps * h;
  }
  std::uint64_t rest = k.get_ui();
  while (rest > 0) {
    bool stepped = false;
    for (std::size_t i = generators_.size(); i-- > 0;) {
      const std::uint64_t h = reduced(i);
      if (h <= rest && test_bit(reach_, rest - h)) {
        rest -= h;
        counts[i] += 1;
        stepped = true;
        break;
      }
    }
    if (!stepped) throw Error(ErrorKind::InternalInconsistency, "semigroup backtrack failed");
  }
  return counts;
}

bool membership(const NumericalSemigroup& s, const Rational& shift, const Rational& value) {
  const Rational units = (value - shift) / s.scale();
  const auto m = nonnegative_integer(units);
  return m && s.contains(*m);
}

bool membership_equivalent_form(const ShiftData& data, const NumericalSemigroup& s, const Rational& value) {
  const Rational lhs = value - data.n_minus_sum / 2;
  const Rational offset = sum_abs(data.slice_weights) / 4;
  return membership(s, offset, lhs);
}

bool Witness::verify() const {
  Rational acc = shift;
  for (std::size_t i = 0; i < counts.size(); ++i) acc += Rational(counts[i]) * generators.at(i);
  return acc == value;
}

std::optional<Witness> find_witness(const NumericalSemigroup& s, const Rational& shift, const Rational& value) {
  const auto m = nonnegative_integer((value - shift) / s.scale());
  if (!m) return std::nullopt;
  auto counts = s.decompose(*m);
  if (!counts) return std::nullopt;
  Witness w{value, shift, {}, std::move(*counts)};
  for (auto g : s.generators()) w.generators.push_back(s.scale() * Rational(static_cast<unsigned long>(g)));
  return w;
}

bool SetDescription::contains(const Rational& x) const {
  if (empty) return false;
  if (all) return true;
  if (sgn(modulus) == 0) return x == offset;
  const auto k = nonnegative_integer((x - offset) / modulus);
  if (!k) return false;
  if (*k >= mpz_class(static_cast<unsigned long>(conductor))) return true;
  return !std::binary_search(gaps.begin(), gaps.end(), k->get_ui());
}

std::string SetDescription::render() const {
  if (empty) return "{}";
  if (all) return "Q";
  if (sgn(modulus) == 0) return "{" + to_string(offset) + "}";
  const Rational step = abs(modulus);
  const std::string ray = step == 1                ? "ℤ≥0"
                          : step.get_den() == 1 ? to_string(step) + "ℤ≥0"
                                                : "(" + to_string(step) + ")ℤ≥0";
  std::string out;
  if (sgn(offset) == 0) {
    out = (sgn(modulus) < 0 ? "-" : "") + ray;
  } else {
    out = to_string(offset) + (sgn(modulus) < 0 ? " - " : " + ") + ray;
  }
  if (!gaps.empty()) {
    out += " minus {";
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (i) out += ", ";
      out += to_string(Rational(offset + modulus * Rational(static_cast<unsigned long>(gaps[i]))));
    }
    out += "}";
  }
  return out;
}

SetDescription forbidden_set_description(const NumericalSemigroup& s, const Rational& shift) {
  SetDescription d;
  d.offset = shift;
  if (s.is_trivial()) return d;
  d.modulus = s.scale() * Rational(static_cast<unsigned long>(s.content()));
  for (auto g : s.gaps()) d.gaps.push_back(g / s.content());
  d.conductor = s.conductor() / s.content();
  return d;
}

SetDescription pull_back(const SetDescription& d, const Rational& base, const Rational& slope) {
  if (sgn(slope) == 0) throw Error(ErrorKind::InvalidParameter, "pull_back along a constant map");
  SetDescription out = d;
  out.offset = (d.offset - base) / slope;
  out.modulus = d.modulus / slope;
  return out;
}

SetDescription translated(const SetDescription& d, const Rational& delta) {
  SetDescription out = d;
  out.offset = d.offset + delta;
  return out;
}

bool provably_contained(const SetDescription& a, const SetDescription& b) {
  if (a.empty || b.all) return true;
  if (a.all || b.empty) return false;
  if (sgn(a.modulus) == 0) return b.contains(a.offset);
  if (sgn(b.modulus) == 0 || !a.gaps.empty() || !b.gaps.empty()) return false;
  if (!b.contains(a.offset)) return false;
  const Rational ratio = a.modulus / b.modulus;
  return sgn(ratio) > 0 && ratio.get_den() == 1;
}

std::string render_union(std::span<const SetDescription> parts) {
  std::vector<bool> keep(parts.size(), true);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      // Equal parts: keep the first.
      if (parts[i] == parts[j] && j > i) continue;
      if (provably_contained(parts[i], parts[j])) keep[i] = false;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!keep[i]) continue;
    if (!out.empty()) out += " ∪ ";
    out += parts[i].render();
  }
  return out.empty() ? "{}" : out;
}

}  // namespace knx
