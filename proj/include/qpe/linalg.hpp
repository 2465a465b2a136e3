#pragma once

#include <optional>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

namespace qpe {

/// Solve A x = b exactly by Gaussian elimination with partial (first nonzero)
/// pivoting; A rational and square, b with eps-polynomial entries. Returns
/// nullopt when A is singular.
inline std::optional<std::vector<EpsPoly>> solve_linear(
    std::vector<std::vector<Rat>> a, std::vector<EpsPoly> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat factor = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= b[col] * factor;
    }
  }
  std::vector<EpsPoly> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline std::optional<std::vector<Rat>> solve_linear(
    const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b) {
  std::vector<EpsPoly> pb(b.size());
  for (size_t i = 0; i < b.size(); ++i) pb[i] = EpsPoly(b[i]);
  auto sol = solve_linear(a, std::move(pb));
  if (!sol) return std::nullopt;
  std::vector<Rat> out(sol->size());
  for (size_t i = 0; i < sol->size(); ++i) out[i] = (*sol)[i].coeff(0);
  return out;
}

}  // namespace qpe
