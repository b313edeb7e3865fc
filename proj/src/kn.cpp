#include "knx/kn.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "knx/error.hpp"
#include "knx/linalg.hpp"

namespace knx {
namespace {

// Distinct perturbation-free points used for hull geometry. points[0] is the
// affine-cone weight alpha_0 = 0; representative[k] is the lowest index in
// [alpha_0, stratify_weights...] landing on points[k].
struct Geometry {
  std::vector<RationalVector> points;
  std::vector<std::size_t> representative;
};

Geometry build_geometry(const std::vector<RationalVector>& weights, const GroupData& g) {
  Geometry geo;
  geo.points.push_back(zero_vector(g.rank()));
  geo.representative.push_back(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    RationalVector p = g.quotient(weights[i]);
    if (std::find(geo.points.begin(), geo.points.end(), p) != geo.points.end()) continue;
    geo.points.push_back(std::move(p));
    geo.representative.push_back(i + 1);
  }
  return geo;
}

// Every subspace spanned by some subset of the points, as reduced bases, in
// breadth-first order from the zero subspace.
std::vector<RationalMatrix> enumerate_flats(const std::vector<RationalVector>& points, std::size_t dim) {
  std::vector<RationalMatrix> flats;
  std::set<RationalMatrix> seen;
  std::deque<RationalMatrix> queue;
  queue.emplace_back();
  seen.insert(RationalMatrix{});
  while (!queue.empty()) {
    RationalMatrix flat = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (linalg::in_span(flat, points[i])) continue;
      RationalMatrix rows = flat;
      rows.push_back(points[i]);
      RationalMatrix next = linalg::reduced_basis(rows, dim);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
    flats.push_back(std::move(flat));
  }
  return flats;
}

Polytope perturbed_hull(const std::vector<RationalVector>& points, const std::vector<std::size_t>& subset,
                        const RationalVector& lambda, const GramForm& q) {
  Polytope p{{}, q};
  p.vertices.reserve(subset.size());
  for (std::size_t i : subset) p.vertices.push_back(EpsVector::perturbed(points[i], lambda));
  return p;
}

}  // namespace

std::vector<RationalVector> WeightSystem::stratify_weights() const {
  if (mode == WeightMode::Raw) return w_weights;
  std::vector<RationalVector> out = w_weights;
  for (const auto& w : w_weights) out.push_back(negated(w));
  return out;
}

void validate(const WeightSystem& ws, const GroupData& g) {
  if (ws.w_weights.empty()) throw Error(ErrorKind::InvalidParameter, "weight system needs at least one weight");
  for (const auto& w : ws.w_weights) {
    if (w.size() != g.rank()) {
      throw Error(ErrorKind::InvalidParameter, "weight " + to_string(w) + " does not match rank " +
                                                   std::to_string(g.rank()));
    }
  }
}

std::vector<std::size_t> KNStratum::y_indices() const {
  std::vector<std::size_t> out = split.plus;
  out.insert(out.end(), split.zero.begin(), split.zero.end());
  std::sort(out.begin(), out.end());
  return out;
}

WeightSplit split_weights(const std::vector<RationalVector>& weights, const RationalVector& beta, const GramForm& q) {
  WeightSplit split;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int s = sgn(q.dot(weights[i], beta));
    (s > 0 ? split.plus : s < 0 ? split.minus : split.zero).push_back(i);
  }
  return split;
}

std::vector<RationalVector> oriented_betas(const RationalVector& v, Orientation orientation) {
  switch (orientation) {
    case Orientation::Negative: return {primitive_rescale(negated(v))};
    case Orientation::Positive: return {primitive_rescale(v)};
    case Orientation::Both: return {primitive_rescale(negated(v)), primitive_rescale(v)};
  }
  return {};
}

KNResult enumerate_kn(const WeightSystem& ws, const TorusCharacter& chi, const GroupData& g,
                      const KNOptions& options) {
  validate(ws, g);
  validate(chi, g);
  const GramForm& q = g.form();
  const auto weights = ws.stratify_weights();
  const Geometry geo = build_geometry(weights, g);
  if (geo.points.size() > options.cap) {
    throw Error(ErrorKind::CapExceeded, std::to_string(geo.points.size()) + " distinct weights (with alpha_0) exceed the cap of " +
                                            std::to_string(options.cap));
  }

  KNResult result;
  result.points = geo.points;
  result.lambda = g.quotient(chi.vector);
  const RationalVector& lambda = result.lambda;

  std::set<RationalVector> seen_dominant;
  for (const auto& flat : enumerate_flats(geo.points, g.rank())) {
    const RationalVector v = project_out_span(lambda, flat, q);
    std::vector<std::size_t> subset{0};
    for (std::size_t i = 1; i < geo.points.size(); ++i) {
      if (is_zero(v) || sgn(q.dot(v, geo.points[i])) <= 0) subset.push_back(i);
    }
    const Polytope hull = perturbed_hull(geo.points, subset, lambda, q);
    const EpsVector candidate = EpsVector::infinitesimal(v);
    const bool realized = hull_contains(candidate, hull, options.cap);
    MinNormCertificate cert = min_norm_point(hull, options.cap);
    if (realized != (cert.point == candidate)) {
      throw Error(ErrorKind::InternalInconsistency, "hull membership of " + to_string(candidate) +
                                                        " disagrees with the minimum-norm point " + to_string(cert.point));
    }
    result.candidates.push_back({subset, cert.point});

    const EpsVector& m = cert.point;
    if (m.is_zero()) {
      result.semistable_nonempty = true;
      continue;
    }
    if (!is_zero(m.constant)) continue;  // misses V

    std::vector<RationalVector> support_weights;
    for (std::size_t s : cert.support) support_weights.push_back(geo.points[subset[s]]);
    if (project_out_span(lambda, support_weights, q) != m.linear) {
      throw Error(ErrorKind::InternalInconsistency, "closest point " + to_string(m) +
                                                        " is not eps times the projection of lambda off its support");
    }
    const EpsScalar self = pair(m, m, q);
    for (std::size_t s : cert.support) {
      if (pair(m, hull.vertices[s], q) != self) {
        throw Error(ErrorKind::InternalInconsistency, "support weight does not pair with the closest point like the point itself");
      }
    }

    std::vector<std::size_t> defining;
    for (std::size_t s : cert.support) defining.push_back(geo.representative[subset[s]]);
    std::sort(defining.begin(), defining.end());

    for (auto& beta : oriented_betas(m.linear, options.orientation)) {
      RationalVector dominant = weyl_canonicalize(beta, g);
      if (!seen_dominant.insert(dominant).second) continue;
      KNStratum st;
      st.split = split_weights(weights, beta, q);
      st.beta = std::move(beta);
      st.beta_dominant = std::move(dominant);
      st.direction = m.linear;
      st.q_norm = q.norm2(m.linear);
      st.defining_subset = defining;
      result.strata.push_back(std::move(st));
    }
  }
  std::sort(result.strata.begin(), result.strata.end(), [](const KNStratum& a, const KNStratum& b) {
    if (a.q_norm != b.q_norm) return a.q_norm < b.q_norm;
    return a.beta_dominant < b.beta_dominant;
  });
  return result;
}

PointClassification classify_point(std::span<const std::size_t> support, const WeightSystem& ws,
                                   const TorusCharacter& chi, const GroupData& g, const KNOptions& options) {
  if (!g.is_torus()) throw Error(ErrorKind::NonabelianUnsupported, "classify_point needs a torus");
  validate(ws, g);
  validate(chi, g);
  const auto weights = ws.stratify_weights();
  const RationalVector lambda = g.quotient(chi.vector);
  Polytope hull{{EpsVector::infinitesimal(lambda)}, g.form()};
  for (std::size_t i : support) {
    if (i >= weights.size()) throw Error(ErrorKind::InvalidParameter, "support index out of range");
    hull.vertices.push_back(EpsVector::perturbed(g.quotient(weights[i]), lambda));
  }
  const MinNormCertificate cert = min_norm_point(hull, options.cap);
  PointClassification out;
  if (cert.point.is_zero()) {
    out.semistable = true;
    return out;
  }
  if (!is_zero(cert.point.constant)) {
    throw Error(ErrorKind::InternalInconsistency, "closest point of a hull containing alpha_0 is not infinitesimal");
  }
  const RationalVector beta = oriented_betas(cert.point.linear, options.orientation).front();
  const KNResult all = enumerate_kn(ws, chi, g, options);
  for (const auto& st : all.strata) {
    if (st.beta == beta) {
      out.stratum = st;
      return out;
    }
  }
  throw Error(ErrorKind::InternalInconsistency, "point direction " + to_string(beta) + " is not an enumerated stratum");
}

}  // namespace knx
