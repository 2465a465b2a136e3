#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

// Linear rows over a shared variable table: rational coefficients on the
// left, eps-polynomials on the right. Every constraint the solvers consume
// (permutahedron facets, comparator gates, sequence pins) is one of these.

namespace qpe {

enum class Rel { kEq, kGe, kLe };

struct LinearRow {
  std::vector<std::pair<int, Rat>> coeffs;  // (variable id, coefficient)
  Rel rel = Rel::kGe;
  EpsPoly rhs;

  LinearRow() = default;
  LinearRow(std::vector<std::pair<int, Rat>> c, Rel r, EpsPoly b)
      : coeffs(std::move(c)), rel(r), rhs(std::move(b)) {}

  /// Exact evaluation at a numeric eps and a point given as a dense vector.
  bool satisfied(const std::vector<Rat>& x, const Rat& eps_value) const {
    Rat lhs(0);
    for (const auto& [v, c] : coeffs) lhs += c * x[static_cast<size_t>(v)];
    Rat r = rhs.eval(eps_value);
    switch (rel) {
      case Rel::kEq:
        return lhs == r;
      case Rel::kGe:
        return lhs >= r;
      case Rel::kLe:
        return lhs <= r;
    }
    return false;
  }
};

enum class BlockSource { kFacet, kNetwork };

/// A group of rows describing one perturbed simplex block, together with the
/// variables it introduced. The first `num_primary` entries of `vars` are the
/// block's coordinate variables; the rest are comparator wire variables.
struct ConstraintBlock {
  std::vector<int> vars;
  int num_primary = 0;
  std::vector<LinearRow> rows;
  BlockSource source = BlockSource::kFacet;
};

}  // namespace qpe
