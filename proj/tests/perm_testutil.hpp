#pragma once

#include <algorithm>
#include <vector>

#include "helpers.hpp"
#include "qpe/permutahedron.hpp"
#include "qpe/simplex.hpp"

// Permutahedron oracles for tests: membership through the convex hull of all
// m! vertex permutations (an LP feasibility problem independent of the facet
// description), random points in and around the polytope, and projection
// feasibility for the comparator-network formulation.

namespace qpe::testutil {

inline std::vector<std::vector<Rat>> vertex_permutations(const Rat& rho, int k,
                                                         int m,
                                                         const Rat& eps0) {
  std::vector<Rat> base = base_vector(rho, k, m, eps0);
  std::sort(base.begin(), base.end());
  std::vector<std::vector<Rat>> verts;
  do {
    verts.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return verts;
}

/// Hull membership: does some convex combination of the vertices equal x?
inline bool hull_member(const std::vector<std::vector<Rat>>& verts,
                        const std::vector<Rat>& x) {
  const int m = static_cast<int>(x.size());
  const int nv = static_cast<int>(verts.size());
  std::vector<LinearRow> rows;
  LinearRow mass;
  for (int j = 0; j < nv; ++j) mass.coeffs.emplace_back(j, Rat(1));
  mass.rel = Rel::kEq;
  mass.rhs = EpsPoly(Rat(1));
  rows.push_back(mass);
  for (int i = 0; i < m; ++i) {
    LinearRow row;
    for (int j = 0; j < nv; ++j)
      row.coeffs.emplace_back(j, verts[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    row.rel = Rel::kEq;
    row.rhs = EpsPoly(x[static_cast<size_t>(i)]);
    rows.push_back(row);
  }
  return lp_feasible_point(nv, rows).has_value();
}

/// Random point: a convex combination of vertices (a member), optionally
/// nudged off the polytope so both answers occur.
inline std::vector<Rat> random_polytope_point(Rng& rng, const Rat& rho, int k,
                                              int m, const Rat& eps0,
                                              bool perturb) {
  auto verts = vertex_permutations(rho, k, m, eps0);
  std::uniform_int_distribution<int> wdist(0, 6);
  std::vector<Rat> x(static_cast<size_t>(m), Rat(0));
  Rat total(0);
  std::vector<Rat> w(verts.size());
  for (size_t j = 0; j < verts.size(); ++j) {
    w[j] = wdist(rng);
    total += w[j];
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (size_t j = 0; j < verts.size(); ++j) {
    if (w[j] == 0) continue;
    for (int i = 0; i < m; ++i)
      x[static_cast<size_t>(i)] += (w[j] / total) * verts[j][static_cast<size_t>(i)];
  }
  if (perturb) {
    // Move mass between two coordinates; keeps the mass equality so the
    // interesting facets decide membership.
    std::uniform_int_distribution<int> cdist(0, m - 1);
    int c1 = cdist(rng), c2 = cdist(rng);
    if (c1 != c2) {
      Rat delta = rand_positive_rat(rng, 3, 4) * rat_pow(eps0, static_cast<unsigned long>(k + 1));
      x[static_cast<size_t>(c1)] += delta;
      x[static_cast<size_t>(c2)] -= delta;
    }
  }
  return x;
}

/// Is x in the projection of the network formulation's feasible set?
inline bool network_projection_member(const PermSpec& spec,
                                      const ComparatorNetwork& net,
                                      const std::vector<Rat>& x,
                                      const Rat& eps0) {
  const int m = spec.m;
  std::vector<int> primary(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) primary[static_cast<size_t>(i)] = i;
  int next_var = m;
  ConstraintBlock block = network_system(spec, net, primary, next_var);
  // Substitute the coordinates and evaluate eps exactly, keeping wire
  // variables free (nonnegative; wire values of sorted nonnegative inputs
  // are nonnegative, so this does not cut the projection).
  std::vector<LinearRow> rows;
  for (const LinearRow& row : block.rows) {
    LinearRow sub;
    sub.rel = row.rel;
    Rat rhs = row.rhs.eval(eps0);
    for (const auto& [v, c] : row.coeffs) {
      if (v < m)
        rhs -= c * x[static_cast<size_t>(v)];
      else
        sub.coeffs.emplace_back(v - m, c);
    }
    sub.rhs = EpsPoly(rhs);
    rows.push_back(std::move(sub));
  }
  return lp_feasible_point(next_var - m, rows).has_value();
}

}  // namespace qpe::testutil
