#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/constraints.hpp"
#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

// The eps-permutahedron: the convex hull of all permutations of the vector
//   ( rho - (eps^{k+1} + ... + eps^{k+m-1}), eps^{k+1}, ..., eps^{k+m-1} ).
// Realized either by its 2^m - 2 subset-sum facets plus one mass equality,
// or by a comparator-network extended formulation whose output wires are
// pinned to the sorted base vector.

namespace qpe {

class MassTooSmall : public std::runtime_error {
 public:
  explicit MassTooSmall(const std::string& w) : std::runtime_error(w) {}
};
class TooManyFacets : public std::runtime_error {
 public:
  explicit TooManyFacets(const std::string& w) : std::runtime_error(w) {}
};
class NetworkDoesNotSort : public std::runtime_error {
 public:
  explicit NetworkDoesNotSort(const std::string& w) : std::runtime_error(w) {}
};

/// Mass of a block: either a constant (standalone polytopes) or a reference
/// to another variable (a parent realization weight).
struct Mass {
  int var = -1;      // variable id when >= 0
  EpsPoly constant;  // used when var < 0

  static Mass of(EpsPoly c) { return Mass{-1, std::move(c)}; }
  static Mass of_var(int v) { return Mass{v, EpsPoly()}; }
  bool is_var() const { return var >= 0; }
};

struct PermSpec {
  Mass mass;
  int k = 0;  // exponent offset
  int m = 1;  // number of coordinates
};

inline int default_facet_threshold() { return 8; }

/// Base vector at a numeric eps. Requires rho >= eps^k.
inline std::vector<Rat> base_vector(const Rat& rho, int k, int m,
                                    const Rat& eps_value) {
  if (rho < rat_pow(eps_value, static_cast<unsigned long>(k)))
    throw MassTooSmall("mass " + to_string(rho) + " < eps^" + std::to_string(k));
  std::vector<Rat> p(static_cast<size_t>(m));
  Rat tail(0);
  for (int i = 2; i <= m; ++i) {
    p[static_cast<size_t>(i - 1)] =
        rat_pow(eps_value, static_cast<unsigned long>(k + i - 1));
    tail += p[static_cast<size_t>(i - 1)];
  }
  p[0] = rho - tail;
  return p;
}

/// Base vector with eps kept symbolic.
inline std::vector<EpsPoly> base_vector(const EpsPoly& rho, int k, int m) {
  if ((rho - EpsPoly::power(k)).sign() < 0)
    throw MassTooSmall("symbolic mass below eps^" + std::to_string(k));
  std::vector<EpsPoly> p(static_cast<size_t>(m));
  p[0] = rho - EpsPoly::tail_sum(k, m);
  for (int i = 2; i <= m; ++i)
    p[static_cast<size_t>(i - 1)] = EpsPoly::power(k + i - 1);
  return p;
}

/// Sum of the s smallest base-vector coordinates, as eps -> 0+:
/// eps^{k+m-s} + ... + eps^{k+m-1}. Valid for 1 <= s <= m-1.
inline EpsPoly smallest_tail_sum(int k, int m, int s) {
  EpsPoly acc;
  for (int t = m - s; t <= m - 1; ++t) acc += EpsPoly::power(k + t);
  return acc;
}

/// Rado facet description over the given coordinate variables: the mass
/// equality plus, for every nonempty proper subset S, a lower bound by the
/// sum of the |S| smallest base-vector entries.
inline ConstraintBlock facet_system(const PermSpec& spec,
                                    const std::vector<int>& primary,
                                    int facet_threshold = default_facet_threshold()) {
  const int m = spec.m;
  if (m > facet_threshold)
    throw TooManyFacets("m = " + std::to_string(m) + " exceeds facet threshold " +
                        std::to_string(facet_threshold));
  ConstraintBlock block;
  block.source = BlockSource::kFacet;
  block.vars = primary;
  block.num_primary = m;

  LinearRow massrow;
  for (int c = 0; c < m; ++c) massrow.coeffs.emplace_back(primary[static_cast<size_t>(c)], Rat(1));
  massrow.rel = Rel::kEq;
  if (spec.mass.is_var())
    massrow.coeffs.emplace_back(spec.mass.var, Rat(-1));
  else
    massrow.rhs = spec.mass.constant;
  block.rows.push_back(std::move(massrow));

  for (unsigned subset = 1; subset + 1 < (1u << m); ++subset) {
    LinearRow row;
    int size = 0;
    for (int c = 0; c < m; ++c)
      if (subset & (1u << c)) {
        row.coeffs.emplace_back(primary[static_cast<size_t>(c)], Rat(1));
        ++size;
      }
    row.rel = Rel::kGe;
    row.rhs = smallest_tail_sum(spec.k, m, size);
    block.rows.push_back(std::move(row));
  }
  return block;
}

/// A sorting network: ordered comparator gates (i, j), i < j, each routing
/// the min to wire i and the max to wire j.
struct ComparatorNetwork {
  int wires = 0;
  std::vector<std::pair<int, int>> gates;

  /// Zero-one principle: the network sorts iff it sorts all binary inputs.
  bool sorts_all_binary() const {
    if (wires > 20) throw std::invalid_argument("zero-one check too large");
    for (unsigned input = 0; input < (1u << wires); ++input) {
      std::vector<int> w(static_cast<size_t>(wires));
      for (int i = 0; i < wires; ++i) w[static_cast<size_t>(i)] = (input >> i) & 1u;
      for (auto [i, j] : gates)
        if (w[static_cast<size_t>(i)] > w[static_cast<size_t>(j)])
          std::swap(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)]);
      if (!std::is_sorted(w.begin(), w.end())) return false;
    }
    return true;
  }
};

/// Batcher odd-even mergesort network on m wires, O(m log^2 m) gates.
inline ComparatorNetwork batcher_network(int m) {
  if (m < 1) throw std::invalid_argument("network needs at least one wire");
  ComparatorNetwork net;
  net.wires = m;
  for (int p = 1; p < m; p *= 2)
    for (int k = p; k >= 1; k /= 2)
      for (int j = k % p; j <= m - 1 - k; j += 2 * k)
        for (int i = 0; i < std::min(k, m - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p))
            net.gates.emplace_back(i + j, i + j + k);
  return net;
}

/// Comparator-network extended formulation: per gate with inputs (a, b) and
/// outputs (lo, hi), the rows hi + lo = a + b, hi >= a, hi >= b; the final
/// wires are pinned to the base vector sorted ascending. The feasible set
/// projects onto the coordinate variables exactly as the facet system does.
///
/// `next_var` allocates wire variable ids and is advanced past them.
inline ConstraintBlock network_system(const PermSpec& spec,
                                      const ComparatorNetwork& net,
                                      const std::vector<int>& primary,
                                      int& next_var) {
  const int m = spec.m;
  if (net.wires != m)
    throw std::invalid_argument("network wire count != coordinate count");
  if (!net.sorts_all_binary())
    throw NetworkDoesNotSort("comparator network fails the zero-one test");

  ConstraintBlock block;
  block.source = BlockSource::kNetwork;
  block.vars = primary;
  block.num_primary = m;

  std::vector<int> wire(primary.begin(), primary.end());
  for (auto [i, j] : net.gates) {
    int a = wire[static_cast<size_t>(i)];
    int b = wire[static_cast<size_t>(j)];
    int lo = next_var++;
    int hi = next_var++;
    block.vars.push_back(lo);
    block.vars.push_back(hi);
    block.rows.push_back(LinearRow{
        {{hi, Rat(1)}, {lo, Rat(1)}, {a, Rat(-1)}, {b, Rat(-1)}}, Rel::kEq, EpsPoly()});
    block.rows.push_back(LinearRow{{{hi, Rat(1)}, {a, Rat(-1)}}, Rel::kGe, EpsPoly()});
    block.rows.push_back(LinearRow{{{hi, Rat(1)}, {b, Rat(-1)}}, Rel::kGe, EpsPoly()});
    wire[static_cast<size_t>(i)] = lo;
    wire[static_cast<size_t>(j)] = hi;
  }

  // Output pins, ascending: wire t carries the (t+1)-th smallest coordinate.
  for (int t = 0; t < m; ++t) {
    LinearRow pin;
    pin.rel = Rel::kEq;
    pin.coeffs.emplace_back(wire[static_cast<size_t>(t)], Rat(1));
    if (t < m - 1) {
      pin.rhs = EpsPoly::power(spec.k + m - 1 - t);
    } else if (spec.mass.is_var()) {
      pin.coeffs.emplace_back(spec.mass.var, Rat(-1));
      pin.rhs = -EpsPoly::tail_sum(spec.k, m);
    } else {
      pin.rhs = spec.mass.constant - EpsPoly::tail_sum(spec.k, m);
    }
    block.rows.push_back(std::move(pin));
  }
  return block;
}

/// Exact membership test at a numeric eps, per the facet description. The
/// binding subset-sum constraint for each cardinality s is the sum of the s
/// smallest coordinates of x, so sorted prefix sums decide all 2^m - 2
/// facets at once.
inline bool membership(const Rat& rho, int k, int m, const std::vector<Rat>& x,
                       const Rat& eps_value) {
  if (static_cast<int>(x.size()) != m)
    throw std::invalid_argument("point dimension != m");
  std::vector<Rat> alpha = base_vector(rho, k, m, eps_value);
  std::vector<Rat> xs = x;
  std::sort(xs.begin(), xs.end());
  std::sort(alpha.begin(), alpha.end());
  Rat xsum(0), asum(0);
  for (int s = 0; s < m - 1; ++s) {
    xsum += xs[static_cast<size_t>(s)];
    asum += alpha[static_cast<size_t>(s)];
    if (xsum < asum) return false;
  }
  Rat xtotal = std::accumulate(x.begin(), x.end(), Rat(0));
  return xtotal == rho;
}

}  // namespace qpe
