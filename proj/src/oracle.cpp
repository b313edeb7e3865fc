#include "knx/oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "knx/error.hpp"

namespace knx {
namespace {

constexpr std::size_t kMaxOraclePoints = 21;

struct SupportPoint {
  std::uint32_t mask = 0;
  Rational norm;
  RationalVector point;
};

// Solves [[V^T Q V, 1], [1^T, 0]] (w, mu) = (0, 1) for the support by
// fraction-free Gaussian elimination. nullopt when the support is affinely
// dependent (the system is singular).
std::optional<std::vector<Rational>> kkt_weights(std::span<const RationalVector> pts,
                                                 std::span<const std::size_t> support, const GramForm& q) {
  const std::size_t k = support.size();
  const std::size_t s = k + 1;
  std::vector<std::vector<Rational>> rows(s, std::vector<Rational>(s + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = q.dot(pts[support[i]], pts[support[j]]);
    rows[i][k] = 1;
  }
  for (std::size_t j = 0; j < k; ++j) rows[k][j] = 1;
  rows[k][s] = 1;

  std::vector<std::vector<mpz_class>> a(s, std::vector<mpz_class>(s + 1));
  for (std::size_t i = 0; i < s; ++i) {
    const mpz_class l = lcm_of_denominators(rows[i]);
    for (std::size_t j = 0; j <= s; ++j) {
      a[i][j] = rows[i][j].get_num() * (l / rows[i][j].get_den());
    }
  }

  mpz_class prev = 1;
  for (std::size_t c = 0; c < s; ++c) {
    std::size_t p = c;
    while (p < s && a[p][c] == 0) ++p;
    if (p == s) return std::nullopt;
    std::swap(a[p], a[c]);
    for (std::size_t i = c + 1; i < s; ++i) {
      for (std::size_t j = c + 1; j <= s; ++j) {
        a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[c][c];
  }

  std::vector<Rational> x(s);
  for (std::size_t i = s; i-- > 0;) {
    Rational acc(a[i][s]);
    for (std::size_t j = i + 1; j < s; ++j) acc -= Rational(a[i][j]) * x[j];
    x[i] = acc / Rational(a[i][i]);
  }
  x.pop_back();  // drop the multiplier
  return x;
}

// Every feasible support of conv(pts): the closest point of its affine hull
// with nonnegative barycentric weights. Sorted by norm, then mask.
std::vector<SupportPoint> feasible_supports(std::span<const RationalVector> pts, const GramForm& q) {
  std::vector<SupportPoint> out;
  const std::size_t max_size = std::min(pts.size(), q.rank() + 1);
  for (std::size_t k = 1; k <= max_size; ++k) {
    for_each_combination(pts.size(), k, [&](std::span<const std::size_t> idx) {
      const auto w = kkt_weights(pts, idx, q);
      if (!w) return false;
      for (const auto& wi : *w) {
        if (sgn(wi) < 0) return false;
      }
      SupportPoint sp;
      sp.point = zero_vector(q.rank());
      for (std::size_t i = 0; i < k; ++i) {
        sp.mask |= std::uint32_t{1} << idx[i];
        for (std::size_t d = 0; d < q.rank(); ++d) sp.point[d] += (*w)[i] * pts[idx[i]][d];
      }
      sp.norm = q.norm2(sp.point);
      out.push_back(std::move(sp));
      return false;
    });
  }
  std::stable_sort(out.begin(), out.end(), [](const SupportPoint& a, const SupportPoint& b) {
    return a.norm < b.norm;
  });
  return out;
}

std::vector<RationalVector> oracle_points(const ExactnessProblem& problem) {
  std::vector<RationalVector> pts{zero_vector(problem.group.rank())};
  for (const auto& w : problem.weights.stratify_weights()) {
    RationalVector p = problem.group.quotient(w);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return pts;
}

std::string mask_string(std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t i = 0; i < 32; ++i) {
    if (!((mask >> i) & 1U)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

void validate(const OracleConfig& config) {
  if (config.epsilon_values.size() < 2) throw Error(ErrorKind::InvalidParameter, "oracle needs at least two eps values");
  for (const auto& e : config.epsilon_values) {
    if (sgn(e) >= 0) throw Error(ErrorKind::InvalidParameter, "oracle eps values must be negative");
  }
}

RationalVector numeric_min_norm(std::span<const RationalVector> vertices, const GramForm& q, std::size_t cap) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidParameter, "empty vertex set");
  if (vertices.size() > cap || vertices.size() > 32) throw Error(ErrorKind::CapExceeded, "too many vertices");
  const auto supports = feasible_supports(vertices, q);
  if (supports.empty()) throw Error(ErrorKind::InternalInconsistency, "no feasible support");
  return supports.front().point;
}

std::string OracleReport::summary() const {
  std::ostringstream os;
  os << (agree ? "agree" : "MISMATCH") << ": " << subsets_enumerated << " subsets, " << candidates_checked
     << " candidates, eps in {";
  for (std::size_t i = 0; i < epsilon_values.size(); ++i) os << (i ? ", " : "") << to_string(epsilon_values[i]);
  os << "}, strata main=" << main_strata.size() << " oracle=" << oracle_strata.size()
     << ", semistable main=" << (main_semistable ? "yes" : "no") << " oracle=" << (oracle_semistable ? "yes" : "no");
  return os.str();
}

OracleReport cross_check_enumeration(const ExactnessProblem& problem, const OracleConfig& config) {
  validate(config);
  const GroupData& g = problem.group;
  const GramForm& q = g.form();
  OracleReport report;
  report.epsilon_values = config.epsilon_values;

  const KNResult main = enumerate_kn(problem.weights, problem.chi, g, {problem.orientation, problem.cap});
  report.main_semistable = main.semistable_nonempty;
  for (const auto& st : main.strata) report.main_strata.push_back(st.beta_dominant);
  std::sort(report.main_strata.begin(), report.main_strata.end());

  const std::vector<RationalVector> base = oracle_points(problem);
  if (base.size() > kMaxOraclePoints) {
    throw Error(ErrorKind::CapExceeded, "oracle enumerates subsets of at most " + std::to_string(kMaxOraclePoints) +
                                            " points");
  }
  const RationalVector lambda = g.quotient(problem.chi.vector);
  const std::size_t n = base.size();
  const std::uint32_t rest_count = std::uint32_t{1} << (n - 1);

  // directions[e][mask >> 1]: closest point / eps for subset {0} + mask.
  std::vector<std::vector<RationalVector>> directions(config.epsilon_values.size());
  std::vector<std::vector<RationalVector>> closest(config.epsilon_values.size());
  for (std::size_t e = 0; e < config.epsilon_values.size(); ++e) {
    const Rational& eps = config.epsilon_values[e];
    std::vector<RationalVector> pts;
    for (const auto& p : base) pts.push_back(add(p, scaled(lambda, eps)));
    const auto supports = feasible_supports(pts, q);
    directions[e].resize(rest_count);
    closest[e].resize(rest_count);
    for (std::uint32_t r = 0; r < rest_count; ++r) {
      const std::uint32_t mask = (r << 1) | 1U;
      const auto it = std::find_if(supports.begin(), supports.end(),
                                   [&](const SupportPoint& sp) { return (sp.mask & ~mask) == 0; });
      if (it == supports.end()) throw Error(ErrorKind::InternalInconsistency, "subset without a feasible support");
      closest[e][r] = it->point;
      directions[e][r] = scaled(it->point, 1 / eps);
    }
  }
  report.subsets_enumerated = rest_count;

  std::set<RationalVector> oracle_set;
  for (std::uint32_t r = 0; r < rest_count; ++r) {
    const RationalVector& v = directions[0][r];
    bool stable = true;
    for (std::size_t e = 1; e < directions.size(); ++e) {
      if (directions[e][r] != v) {
        stable = false;
        report.mismatches.push_back("subset " + mask_string((r << 1) | 1U) + ": closest point is not eps * v (" +
                                    to_string(v) + " vs " + to_string(directions[e][r]) + ")");
      }
    }
    if (!stable) continue;
    if (is_zero(v)) {
      report.oracle_semistable = true;
      continue;
    }
    for (const auto& beta : oriented_betas(v, problem.orientation)) oracle_set.insert(weyl_canonicalize(beta, g));
  }
  report.oracle_strata.assign(oracle_set.begin(), oracle_set.end());

  if (report.main_semistable != report.oracle_semistable) {
    report.mismatches.push_back(std::string("semistable locus: enumerator says ") +
                                (report.main_semistable ? "nonempty" : "empty") + ", oracle says " +
                                (report.oracle_semistable ? "nonempty" : "empty"));
  }
  for (const auto& b : report.main_strata) {
    if (!oracle_set.count(b)) report.mismatches.push_back("stratum " + to_string(b) + " not found by the oracle");
  }
  const std::set<RationalVector> main_set(report.main_strata.begin(), report.main_strata.end());
  for (const auto& b : report.oracle_strata) {
    if (!main_set.count(b)) report.mismatches.push_back("stratum " + to_string(b) + " missed by the enumerator");
  }

  for (const auto& cand : main.candidates) {
    std::uint32_t mask = 0;
    for (std::size_t i : cand.vertices) {
      const auto it = std::find(base.begin(), base.end(), main.points.at(i));
      if (it == base.end()) {
        report.mismatches.push_back("candidate vertex " + to_string(main.points[i]) + " is not a weight");
        mask = 0;
        break;
      }
      mask |= std::uint32_t{1} << (it - base.begin());
    }
    if (!(mask & 1U)) continue;
    ++report.candidates_checked;
    const std::uint32_t r = mask >> 1;
    for (std::size_t e = 0; e < config.epsilon_values.size(); ++e) {
      const RationalVector symbolic = cand.min_point.evaluate(config.epsilon_values[e]);
      if (symbolic != closest[e][r]) {
        report.mismatches.push_back("candidate " + mask_string(mask) + " at eps " +
                                    to_string(config.epsilon_values[e]) + ": symbolic " + to_string(symbolic) +
                                    ", exhaustive " + to_string(closest[e][r]));
      }
    }
  }
  report.agree = report.mismatches.empty();
  return report;
}

ExactnessProblem random_problem(std::size_t rank, std::size_t weight_count, std::uint64_t seed) {
  if (rank == 0 || rank > 4) throw Error(ErrorKind::InvalidParameter, "random rank must be in [1, 4]");
  if (weight_count == 0 || weight_count > 8) throw Error(ErrorKind::InvalidParameter, "random weight count must be in [1, 8]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  auto draw_nonzero = [&] {
    RationalVector v(rank);
    do {
      for (auto& x : v) x = entry(rng);
    } while (is_zero(v));
    return v;
  };
  WeightSystem ws;
  ws.mode = WeightMode::Cotangent;
  for (std::size_t i = 0; i < weight_count; ++i) ws.w_weights.push_back(draw_nonzero());
  TorusCharacter chi{draw_nonzero(), true};
  return ExactnessProblem{preset_torus(rank), std::move(ws), std::move(chi), LieCharacter{zero_vector(rank), std::nullopt}};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ExactnessProblem random_sample(std::uint64_t base_seed, std::uint64_t index, std::size_t max_rank,
                               std::size_t max_weights) {
  const std::uint64_t seed = derive_seed(base_seed, index);
  const std::size_t rank = 1 + seed % max_rank;
  const std::size_t count = 1 + (seed >> 8) % max_weights;
  return random_problem(rank, count, seed);
}

}  // namespace knx
