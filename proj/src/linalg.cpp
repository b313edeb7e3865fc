#include "knx/linalg.hpp"

#include <utility>

namespace knx::linalg {

std::optional<RationalMatrix> solve(RationalMatrix a, RationalMatrix b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    const Rational inv = 1 / a[col][col];
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Rational factor = a[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      for (std::size_t k = 0; k < b[row].size(); ++k) b[row][k] -= factor * b[col][k];
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    const Rational inv = 1 / a[row][row];
    for (auto& x : b[row]) x *= inv;
  }
  return b;
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (sgn(a[row][col]) == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  return det;
}

RationalMatrix reduced_basis(std::span<const RationalVector> rows, std::size_t dim) {
  RationalMatrix m(rows.begin(), rows.end());
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < dim && lead_row < m.size(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.size() && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[lead_row]);
    const Rational inv = 1 / m[lead_row][col];
    for (auto& x : m[lead_row]) x *= inv;
    for (std::size_t row = 0; row < m.size(); ++row) {
      if (row == lead_row || sgn(m[row][col]) == 0) continue;
      const Rational factor = m[row][col];
      for (std::size_t k = 0; k < dim; ++k) m[row][k] -= factor * m[lead_row][k];
    }
    ++lead_row;
  }
  m.resize(lead_row);
  return m;
}

bool in_span(const RationalMatrix& basis, const RationalVector& v) {
  RationalVector residual = v;
  for (const auto& row : basis) {
    std::size_t lead = 0;
    while (lead < row.size() && sgn(row[lead]) == 0) ++lead;
    if (lead == row.size()) continue;
    if (sgn(residual[lead]) == 0) continue;
    const Rational factor = residual[lead];
    for (std::size_t k = 0; k < row.size(); ++k) residual[k] -= factor * row[k];
  }
  return is_zero(residual);
}

std::size_t rank_of(std::span<const RationalVector> rows, std::size_t dim) {
  return reduced_basis(rows, dim).size();
}

std::vector<std::size_t> independent_subset(std::span<const RationalVector> rows) {
  std::vector<std::size_t> chosen;
  if (rows.empty()) return chosen;
  const std::size_t dim = rows.front().size();
  RationalMatrix basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (in_span(basis, rows[i])) continue;
    chosen.push_back(i);
    RationalMatrix extended = basis;
    extended.push_back(rows[i]);
    basis = reduced_basis(extended, dim);
  }
  return chosen;
}

}  // namespace knx::linalg
