#include "knx/convex.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "knx/error.hpp"
#include "knx/linalg.hpp"

namespace knx {
namespace {

void check_polytope(const Polytope& p, std::size_t cap, const char* op) {
  if (p.vertices.empty()) throw Error(ErrorKind::InvalidParameter, std::string(op) + ": empty polytope");
  if (p.vertices.size() > cap) {
    throw Error(ErrorKind::CapExceeded, std::string(op) + ": " + std::to_string(p.vertices.size()) +
                                            " vertices exceed the cap of " + std::to_string(cap));
  }
  const auto& lin = p.vertices.front().linear;
  for (const auto& v : p.vertices) {
    if (v.constant.size() != p.form.rank() || v.linear.size() != p.form.rank()) {
      throw Error(ErrorKind::InvalidParameter, std::string(op) + ": vertex length does not match the form");
    }
    if (v.linear != lin) {
      throw Error(ErrorKind::InvalidParameter, std::string(op) + ": vertex differences must be eps-free");
    }
  }
}

// Pairings among vertex constants and with the shared eps direction, so the
// Gram matrix of any support's difference vectors is assembled without
// recomputing forms.
struct PairingTable {
  RationalMatrix cc;
  RationalVector cl;

  explicit PairingTable(const Polytope& p) {
    const std::size_t m = p.vertices.size();
    const auto& lin = p.vertices.front().linear;
    cc.assign(m, RationalVector(m));
    cl.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        cc[i][j] = p.form.dot(p.vertices[i].constant, p.vertices[j].constant);
        cc[j][i] = cc[i][j];
      }
      cl[i] = p.form.dot(p.vertices[i].constant, lin);
    }
  }

  [[nodiscard]] RationalMatrix difference_gram(std::span<const std::size_t> idx) const {
    const std::size_t k = idx.size() - 1;
    const std::size_t b = idx[0];
    RationalMatrix gram(k, RationalVector(k));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = j; l < k; ++l) {
        gram[j][l] = cc[idx[j + 1]][idx[l + 1]] - cc[idx[j + 1]][b] - cc[b][idx[l + 1]] + cc[b][b];
        gram[l][j] = gram[j][l];
      }
    }
    return gram;
  }
};

bool any_negative(const std::vector<EpsScalar>& xs) {
  return std::any_of(xs.begin(), xs.end(), [](const EpsScalar& x) { return eps_sign(x) == Sign::Negative; });
}

std::vector<EpsScalar> barycentric(const RationalMatrix& sol) {
  std::vector<EpsScalar> coeffs(sol.size() + 1);
  EpsScalar rest = EpsScalar::constant(1);
  for (std::size_t j = 0; j < sol.size(); ++j) {
    coeffs[j + 1] = EpsScalar{sol[j][0], sol[j][1], 0};
    rest = rest - coeffs[j + 1];
  }
  coeffs[0] = rest;
  return coeffs;
}

}  // namespace

MinNormCertificate min_norm_point(const Polytope& p, std::size_t cap) {
  check_polytope(p, cap, "min_norm_point");
  const std::size_t m = p.vertices.size();
  const std::size_t max_support = std::min(m, p.form.rank() + 1);
  const PairingTable table(p);

  std::optional<MinNormCertificate> found;
  for (std::size_t size = 1; size <= max_support && !found; ++size) {
    for_each_combination(m, size, [&](std::span<const std::size_t> idx) {
      const std::size_t k = size - 1;
      const std::size_t b = idx[0];
      RationalMatrix sol;
      if (k > 0) {
        RationalMatrix rhs(k, RationalVector(2));
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t d = idx[j + 1];
          rhs[j][0] = table.cc[b][b] - table.cc[d][b];
          rhs[j][1] = table.cl[b] - table.cl[d];
        }
        auto solved = linalg::solve(table.difference_gram(idx), std::move(rhs));
        if (!solved) return false;  // affinely dependent
        sol = std::move(*solved);
      }
      auto coeffs = barycentric(sol);
      if (any_negative(coeffs)) return false;

      EpsVector point = p.vertices[b];
      for (std::size_t j = 0; j < k; ++j) {
        accumulate(point, coeffs[j + 1], sub(p.vertices[idx[j + 1]].constant, p.vertices[b].constant));
      }
      for (const auto& s : p.vertices) {
        if (eps_sign(pair(point, sub(s, point), p.form)) == Sign::Negative) return false;
      }
      found = MinNormCertificate{std::move(point), {idx.begin(), idx.end()}, std::move(coeffs)};
      return true;
    });
  }
  if (!found) throw Error(ErrorKind::InternalInconsistency, "min_norm_point: no support certified the optimum");
  return *found;
}

bool hull_contains(const EpsVector& point, const Polytope& p, std::size_t cap) {
  check_polytope(p, cap, "hull_contains");
  if (point.size() != p.form.rank()) throw Error(ErrorKind::InvalidParameter, "hull_contains: point length mismatch");
  const std::size_t m = p.vertices.size();
  const std::size_t max_support = std::min(m, p.form.rank() + 1);
  const PairingTable table(p);

  for (std::size_t size = 1; size <= max_support; ++size) {
    const bool hit = for_each_combination(m, size, [&](std::span<const std::size_t> idx) {
      const std::size_t k = size - 1;
      const std::size_t b = idx[0];
      const EpsVector target = sub(point, p.vertices[b]);
      if (k == 0) return target.is_zero();
      std::vector<RationalVector> diffs(k);
      RationalMatrix rhs(k, RationalVector(2));
      for (std::size_t j = 0; j < k; ++j) {
        diffs[j] = sub(p.vertices[idx[j + 1]].constant, p.vertices[b].constant);
        rhs[j][0] = p.form.dot(diffs[j], target.constant);
        rhs[j][1] = p.form.dot(diffs[j], target.linear);
      }
      auto sol = linalg::solve(table.difference_gram(idx), std::move(rhs));
      if (!sol) return false;
      auto coeffs = barycentric(*sol);
      if (any_negative(coeffs)) return false;
      EpsVector reached = EpsVector::from_constant(zero_vector(point.size()));
      for (std::size_t j = 0; j < k; ++j) accumulate(reached, coeffs[j + 1], diffs[j]);
      return reached == target;
    });
    if (hit) return true;
  }
  return false;
}

bool witnesses_compare(const EpsVector& point, const EpsVector& alternative, std::span<const EpsVector> sites,
                       const GramForm& q) {
  for (const auto& s : sites) {
    const EpsScalar diff = squared_distance(alternative, s, q) - squared_distance(point, s, q);
    if (eps_sign(diff) != Sign::Negative) return false;
  }
  return true;
}

}  // namespace knx
