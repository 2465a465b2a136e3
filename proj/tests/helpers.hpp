#pragma once

#include <random>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

namespace qpe::testutil {

using Rng = std::mt19937_64;

inline Rat rand_rat(Rng& rng, int lo = -9, int hi = 9, int max_den = 9) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_rat(num(rng), den(rng));
}

inline Rat rand_positive_rat(Rng& rng, int hi = 9, int max_den = 9) {
  std::uniform_int_distribution<int> num(1, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_rat(num(rng), den(rng));
}

inline EpsPoly rand_poly(Rng& rng, int max_degree = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  int d = deg(rng);
  std::vector<Rat> c(static_cast<size_t>(d) + 1);
  for (auto& x : c) x = rand_rat(rng);
  return EpsPoly::from_coeffs(std::move(c));
}

inline EpsPoly rand_nonzero_poly(Rng& rng, int max_degree = 4) {
  for (;;) {
    EpsPoly p = rand_poly(rng, max_degree);
    if (!p.is_zero()) return p;
  }
}

inline EpsRat rand_eps_rat(Rng& rng, int max_degree = 4) {
  return EpsRat(rand_poly(rng, max_degree), rand_nonzero_poly(rng, max_degree));
}

}  // namespace qpe::testutil
