#include "knx/exactness.hpp"

#include "knx/error.hpp"

namespace knx {

std::string_view to_string(VerdictStatus status) noexcept {
  switch (status) {
    case VerdictStatus::Certified: return "Certified";
    case VerdictStatus::Violated: return "Violated";
    case VerdictStatus::Parametric: return "Parametric";
  }
  return "Unknown";
}

std::vector<KNStratum> kept_strata(const ExactnessProblem& problem, bool* semistable_nonempty) {
  const GroupData& g = problem.group;
  validate(problem.weights, g);
  validate(problem.chi, g);
  validate(problem.c, g);
  if (problem.weights.mode == WeightMode::Raw && !g.is_torus()) {
    throw Error(ErrorKind::UnsupportedMode, "raw mode with a nonabelian group");
  }
  const KNResult result = enumerate_kn(problem.weights, problem.chi, g, {problem.orientation, problem.cap});
  if (semistable_nonempty) *semistable_nonempty = result.semistable_nonempty;

  std::vector<bool> dropped(result.strata.size(), false);
  for (const auto& d : problem.dropped_strata) {
    if (d.size() != g.rank()) throw Error(ErrorKind::InvalidParameter, "dropped stratum has the wrong length");
    const RationalVector key = weyl_canonicalize(d, g);
    bool matched = false;
    for (std::size_t i = 0; i < result.strata.size(); ++i) {
      if (result.strata[i].beta_dominant == key) {
        dropped[i] = true;
        matched = true;
      }
    }
    if (!matched) {
      throw Error(ErrorKind::InvalidParameter, "dropped stratum " + to_string(d) + " is not an enumerated stratum");
    }
  }
  std::vector<KNStratum> kept;
  for (std::size_t i = 0; i < result.strata.size(); ++i) {
    if (!dropped[i]) kept.push_back(result.strata[i]);
  }
  return kept;
}

StratumVerdict evaluate_stratum(const KNStratum& stratum, const ExactnessProblem& problem) {
  StratumVerdict v;
  v.stratum = stratum;
  v.shift = compute_shift(stratum.beta, problem.weights, problem.group, problem.strictness);
  v.semigroup = semigroup_from_generators(v.shift.semigroup_generators);
  v.c_of_beta = problem.group.form().dot(problem.c.base, stratum.beta);
  v.pass = !membership(v.semigroup, v.shift.shift, v.c_of_beta);
  if (!v.pass) {
    v.witness = find_witness(v.semigroup, v.shift.shift, v.c_of_beta);
    if (!v.witness || !v.witness->verify()) {
      throw Error(ErrorKind::InternalInconsistency, "violated stratum without a verifiable witness");
    }
  }
  return v;
}

ExactnessVerdict check(const ExactnessProblem& problem) {
  if (problem.c.direction) {
    throw Error(ErrorKind::UnsupportedMode, "check needs a fixed parameter; use forbidden for c with a direction");
  }
  ExactnessVerdict out;
  out.notes = problem.notes;
  for (const auto& st : kept_strata(problem, &out.semistable_nonempty)) {
    out.per_stratum.push_back(evaluate_stratum(st, problem));
    if (!out.per_stratum.back().pass) out.status = VerdictStatus::Violated;
  }
  return out;
}

ExactnessVerdict forbidden(const ExactnessProblem& problem) {
  if (!problem.c.direction) throw Error(ErrorKind::InvalidParameter, "forbidden needs c with a direction");
  ExactnessVerdict out;
  out.status = VerdictStatus::Parametric;
  out.notes = problem.notes;
  const GramForm& q = problem.group.form();
  for (const auto& st : kept_strata(problem, &out.semistable_nonempty)) {
    StratumVerdict v = evaluate_stratum(st, problem);
    v.witness.reset();
    const Rational slope = q.dot(*problem.c.direction, st.beta);
    const SetDescription in_value = forbidden_set_description(v.semigroup, v.shift.shift);
    if (sgn(slope) == 0) {
      v.constant_condition = true;
      v.locus = SetDescription{};
      if (in_value.contains(v.c_of_beta)) {
        v.locus.all = true;
      } else {
        v.locus.empty = true;
      }
      out.notes.push_back("stratum " + to_string(st.beta) + " pairs to zero with the direction; its condition is constant in t");
    } else {
      v.locus = pull_back(in_value, v.c_of_beta, slope);
    }
    out.forbidden_locus.push_back(v.locus);
    if (problem.translation) out.translated_locus.push_back(translated(v.locus, *problem.translation));
    out.per_stratum.push_back(std::move(v));
  }
  out.union_rendering = render_union(out.forbidden_locus);
  if (problem.translation) out.translated_union_rendering = render_union(out.translated_locus);
  return out;
}

ExactnessProblem cherednik_preset(std::size_t n, Orientation orientation) {
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "cherednik_preset needs n >= 1");
  WeightSystem ws;
  ws.mode = WeightMode::Cotangent;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector w = zero_vector(n);
      w[i] += 1;
      w[j] -= 1;
      ws.w_weights.push_back(std::move(w));
    }
  }
  for (std::size_t i = 0; i < n; ++i) ws.w_weights.push_back(unit_vector(n, i));
  const RationalVector ones(n, Rational(1));
  ExactnessProblem p{preset_gl(n), std::move(ws), TorusCharacter{ones, true}, LieCharacter{zero_vector(n), ones}};
  p.orientation = orientation;
  p.translation = make_rational(-1, 2);
  p.notes = {
      "t is the parameter c' of the rho-shifted comoment map: c' (1,...,1) = c (1,...,1) - rho with rho = -1/2 (1,...,1)",
      "translated locus is in c = c' - 1/2",
      "conventions that write -c for this c flip the sign of the translated locus; no flip is applied here",
  };
  return p;
}

}  // namespace knx
