#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qpe/equilibrium.hpp"
#include "qpe/game.hpp"
#include "qpe/rational.hpp"

// The n-player path: per-infoset valuations, the delta-approximate selection
// operator and its 2m^2-fold iteration from the uniform point, floor
// retraction, the self-map over floored behavior profiles, and a damped
// search for its approximate fixed points with exact verification downstream.

namespace qpe {

class InfeasibleFloor : public std::runtime_error {
 public:
  explicit InfeasibleFloor(const std::string& w) : std::runtime_error(w) {}
};
class ContainmentViolated : public std::logic_error {
 public:
  explicit ContainmentViolated(const std::string& w) : std::logic_error(w) {}
};
class Underflow : public std::runtime_error {
 public:
  explicit Underflow(const std::string& w) : std::runtime_error(w) {}
};

template <typename T>
T value_pow(const T& base, int e) {
  if constexpr (std::is_same_v<T, double>)
    return std::pow(base, e);
  else
    return rat_pow(base, static_cast<unsigned long>(e));
}

/// eta_m(eps) = eps^m / m, the per-infoset probability floor.
template <typename T>
T eta(int m, const T& eps) {
  return value_pow(eps, m) / m;
}

/// Continuous selection: x for z <= 0, y for z >= delta, linear in between.
template <typename T>
T deltasel(const T& x, const T& y, const T& z, const T& delta) {
  if (z <= T(0)) return x;
  if (z >= delta) return y;
  T w = z / delta;
  return (T(1) - w) * x + w * y;
}

/// (P(x, v))_c = min over c' of deltasel(x_c, eps x_c', v_c' - v_c).
template <typename T>
std::vector<T> p_operator(const std::vector<T>& x, const std::vector<T>& v,
                          const T& delta, const T& eps) {
  const size_t m = x.size();
  std::vector<T> out(m);
  for (size_t c = 0; c < m; ++c) {
    T best = x[c];  // the c' = c term, where z = 0
    for (size_t cp = 0; cp < m; ++cp) {
      if (cp == c) continue;
      T scaled = eps * x[cp];
      T gap = v[cp] - v[c];
      T cand = deltasel(x[c], scaled, gap, delta);
      if (cand < best) best = cand;
    }
    out[c] = best;
  }
  return out;
}

/// x satisfies the delta-almost eps-proper property w.r.t. v.
template <typename T>
bool delta_almost_proper(const std::vector<T>& x, const std::vector<T>& v,
                         const T& delta, const T& eps) {
  for (size_t c = 0; c < x.size(); ++c)
    for (size_t cp = 0; cp < x.size(); ++cp)
      if (v[c] + delta <= v[cp] && !(x[c] <= eps * x[cp])) return false;
  return true;
}

/// 2m^2-fold application of the selection operator to the uniform point.
/// Requires eps <= 1/m. The result keeps every coordinate at least
/// eta_m(eps) and total mass at most 1; both are asserted.
template <typename T>
std::vector<T> iterate_p(const std::vector<T>& v, const T& delta, const T& eps) {
  const int m = static_cast<int>(v.size());
  if (m < 1) throw std::invalid_argument("empty valuation vector");
  if (!(eps > T(0)) || eps * m > T(1))
    throw std::invalid_argument("iteration needs 0 < eps <= 1/m");
  std::vector<T> y(static_cast<size_t>(m), T(1) / m);
  for (int it = 0; it < 2 * m * m; ++it) y = p_operator(y, v, delta, eps);

  T floor = eta(m, eps);
  T slack;
  if constexpr (std::is_same_v<T, double>)
    slack = floor * 1e-12;
  else
    slack = T(0);
  T total(0);
  for (const T& c : y) {
    if (c + slack < floor)
      throw ContainmentViolated("iterated point fell below the eta floor");
    total = total + c;
  }
  if (total > T(1) + slack)
    throw ContainmentViolated("iterated point has mass above one");
  return y;
}

/// Floors for the retraction and the domain of the self-map.
template <typename T>
struct FloorSpec {
  T eps;
  bool squared = true;  // floors use eta_m(eps^2) when set

  T floor_for(int m) const {
    return squared ? eta(m, T(eps * eps)) : eta(m, eps);
  }
};

/// Water-filling kernel: find t with sum_c max(b_c - t, floor) = 1 and map
/// each entry through, solving the piecewise-linear equation by sorted
/// breakpoints. Identity (t = 0) on rows already summing to 1 above the
/// floor.
template <typename T>
std::vector<T> retract_row(const std::vector<T>& row, const T& floor) {
  const int m = static_cast<int>(row.size());
  if (!(floor * m < T(1)))
    throw InfeasibleFloor("floors sum to at least one");
  // With exactly the top j entries above the floor,
  // t = (S_j + (m - j) * floor - 1) / j on the matching segment.
  std::vector<T> sorted = row;
  std::sort(sorted.begin(), sorted.end(), std::greater<T>());
  T t(0);
  T prefix(0);
  bool found = false;
  for (int j = 1; j <= m && !found; ++j) {
    prefix = prefix + sorted[static_cast<size_t>(j - 1)];
    T cand = (prefix + (m - j) * floor - T(1)) / j;
    T lo = j < m ? sorted[static_cast<size_t>(j)] - floor : T(0);
    if (lo < T(0)) lo = T(0);
    T hi = sorted[static_cast<size_t>(j - 1)] - floor;
    if (cand <= hi && cand >= lo) {
      t = cand;
      found = true;
    }
  }
  if (!found) t = (prefix - T(1)) / m;  // float drift fallback: all active
  if (t < T(0)) t = T(0);
  std::vector<T> out;
  out.reserve(static_cast<size_t>(m));
  for (const T& c : row) {
    T moved = c - t;
    out.push_back(moved < floor ? floor : moved);
  }
  return out;
}

/// Per-infoset floor retraction of a whole profile.
template <typename T>
BehaviorProfile<T> retract_to_floor(const GameTree& g,
                                    const BehaviorProfile<T>& b,
                                    const FloorSpec<T>& floors) {
  BehaviorProfile<T> out;
  out.local.resize(b.local.size());
  for (size_t h = 0; h < b.local.size(); ++h) {
    const int m = static_cast<int>(b.local[h].size());
    try {
      out.local[h] = retract_row(b.local[h], floors.floor_for(m));
    } catch (const InfeasibleFloor&) {
      throw InfeasibleFloor("floors sum to at least one at " +
                            detail::infoset_label(g, static_cast<InfosetId>(h)));
    }
  }
  return out;
}

/// Valuations of every action at every infoset under a fully mixed profile.
template <typename T>
std::vector<std::vector<T>> compute_valuations(const GameTree& g,
                                               const BehaviorProfile<T>& b) {
  std::vector<std::vector<T>> v(g.infosets.size());
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    int m = g.num_actions(static_cast<InfosetId>(h));
    v[h].reserve(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a)
      v[h].push_back(k_value(g, b, static_cast<InfosetId>(h), a));
  }
  return v;
}

/// The self-map: valuations, the iterated selection operator per infoset,
/// then per-infoset normalization.
template <typename T>
BehaviorProfile<T> f_map(const GameTree& g, const BehaviorProfile<T>& b,
                         const T& eps, const T& delta) {
  auto v = compute_valuations(g, b);
  BehaviorProfile<T> out;
  out.local.resize(g.infosets.size());
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    std::vector<T> y = iterate_p(v[h], delta, eps);
    T total(0);
    for (const T& c : y) total = total + c;
    for (T& c : y) c = c / total;
    out.local[h] = std::move(y);
  }
  return out;
}

template <typename T>
T profile_distance(const BehaviorProfile<T>& a, const BehaviorProfile<T>& b) {
  T best(0);
  for (size_t h = 0; h < a.local.size(); ++h)
    for (size_t c = 0; c < a.local[h].size(); ++c) {
      T d = a.local[h][c] - b.local[h][c];
      if (d < T(0)) d = -d;
      if (d > best) best = d;
    }
  return best;
}

enum class NumericMode { kFloat, kRational };

struct IterationConfig {
  double damping = 0.5;  // in (0, 1]
  int max_iters = 400;
  double tolerance = 1e-9;
  NumericMode mode = NumericMode::kFloat;
  int restarts = 8;
  unsigned long seed = 1;
};

/// Snap a float profile to exact rationals and renormalize per infoset.
inline BehaviorProfile<Rat> snap_profile(const BehaviorProfile<double>& b) {
  BehaviorProfile<Rat> out;
  out.local.resize(b.local.size());
  for (size_t h = 0; h < b.local.size(); ++h) {
    Rat total(0);
    for (double c : b.local[h]) total += rat_from_double(c);
    for (double c : b.local[h]) out.local[h].push_back(rat_from_double(c) / total);
  }
  return out;
}

template <typename T>
struct SearchOutcome {
  BehaviorProfile<T> profile;  // best iterate, inside the floored domain
  T residual;                  // | profile - F(profile) |_inf
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Damped iteration b <- (1 - lambda) b + lambda F(b) from the uniform
/// profile (and perturbed restarts), clamped to the floored domain each
/// step. Best-effort: the returned residual is reported, the downstream
/// exact verification is the arbiter.
template <typename T>
SearchOutcome<T> fixed_point_search(const GameTree& g, const T& eps,
                                    const T& delta,
                                    const IterationConfig& cfg) {
  if (!(cfg.tolerance > 0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(cfg.damping > 0) || cfg.damping > 1)
    throw std::invalid_argument("damping must be in (0, 1]");
  FloorSpec<T> floors{eps, true};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> noise(0.1, 1.0);

  SearchOutcome<T> best;
  bool have_best = false;
  T lambda = value_cast<T>(rat_from_double(cfg.damping));
  T tol = value_cast<T>(rat_from_double(cfg.tolerance));

  for (int restart = 0; restart <= cfg.restarts && !best.converged; ++restart) {
    BehaviorProfile<T> b = uniform_profile<T>(g);
    if (restart > 0) {
      for (auto& row : b.local) {
        T total(0);
        for (T& c : row) {
          c = c * value_cast<T>(rat_from_double(noise(rng)));
          total = total + c;
        }
        for (T& c : row) c = c / total;
      }
    }
    b = retract_to_floor(g, b, floors);
    for (int it = 0; it < cfg.max_iters; ++it) {
      BehaviorProfile<T> fb = f_map(g, b, eps, delta);
      T r = profile_distance(b, fb);
      if (!have_best || r < best.residual) {
        best.profile = b;
        best.residual = r;
        best.iterations = it;
        best.restarts_used = restart;
        have_best = true;
      }
      if (r <= tol) {
        best.converged = true;
        break;
      }
      BehaviorProfile<T> next = b;
      for (size_t h = 0; h < b.local.size(); ++h)
        for (size_t c = 0; c < b.local[h].size(); ++c)
          next.local[h][c] =
              (T(1) - lambda) * b.local[h][c] + lambda * fb.local[h][c];
      b = retract_to_floor(g, next, floors);
    }
  }
  return best;
}

struct MultiplayerRun {
  BehaviorProfile<Rat> profile;  // exact, after snapping and polish steps
  Rat residual;                  // exact |profile - F(profile)|_inf
  double search_residual = 0;    // residual reached by the damped search
  VerificationReport report;     // delta-almost check at (eps, delta)
  bool converged = false;
};

/// Search, then make the answer exact: snap the best float iterate to
/// rationals and apply the map a few times in exact arithmetic. Away from
/// valuation ties the iterated selection operator runs on pure selection
/// branches, so the map is locally constant and one exact application lands
/// on the exact fixed point; the exact verification is the arbiter either
/// way.
inline MultiplayerRun solve_multiplayer(const GameTree& g, const Rat& eps,
                                        const Rat& delta,
                                        const IterationConfig& cfg) {
  MultiplayerRun run;
  BehaviorProfile<Rat> candidate;
  if (cfg.mode == NumericMode::kFloat) {
    auto out = fixed_point_search(g, eps.get_d(), delta.get_d(), cfg);
    run.search_residual = out.residual;
    candidate = snap_profile(out.profile);
  } else {
    auto out = fixed_point_search(g, eps, delta, cfg);
    run.search_residual = out.residual.get_d();
    candidate = out.profile;
  }
  run.profile = candidate;
  run.residual = profile_distance(candidate, f_map(g, candidate, eps, delta));
  for (int polish = 0; polish < 3 && run.residual != 0; ++polish) {
    candidate = f_map(g, candidate, eps, delta);
    Rat r = profile_distance(candidate, f_map(g, candidate, eps, delta));
    if (r < run.residual) {
      run.profile = candidate;
      run.residual = r;
    }
  }
  run.converged = run.residual == 0 ||
                  run.residual <= rat_from_double(cfg.tolerance);
  run.report = verify_delta_almost(g, run.profile, eps, delta);
  return run;
}

/// (eps, delta) from a target gamma by repeated squaring: eps squares
/// gamma/2 q1 times, delta squares min(gamma/2, eps) q2 times.
template <typename T>
std::pair<T, T> schedule_eps_delta(const T& gamma, int q1, int q2) {
  if (!(gamma > T(0)) || !(gamma * 2 < T(1)))
    throw std::invalid_argument("gamma must be in (0, 1/2)");
  if (q1 < 0 || q2 < 0) throw std::invalid_argument("negative squaring count");
  if constexpr (!std::is_same_v<T, double>) {
    if (q1 > 20 || q2 > 20)
      throw Underflow("squaring count too large for exact arithmetic");
  }
  T eps = gamma / 2;
  for (int i = 0; i < q1; ++i) eps = eps * eps;
  T delta = std::min(T(gamma / 2), eps);
  for (int i = 0; i < q2; ++i) delta = delta * delta;
  if constexpr (std::is_same_v<T, double>) {
    if (!(eps > 0) || !(delta > 0) || !std::isnormal(eps) || !std::isnormal(delta))
      throw Underflow("schedule left the representable range");
  }
  return {eps, delta};
}

}  // namespace qpe
