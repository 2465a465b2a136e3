#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/equilibrium.hpp"
#include "qpe/game.hpp"
#include "qpe/lcp.hpp"
#include "qpe/sequence_form.hpp"
#include "qpe/simplex.hpp"

// Two-player pipelines over the perturbed polytopes: the best-response
// complementarity system solved by Lemke pivoting, and the zero-sum
// maximin linear program whose dual carries the opponent's plan.

namespace qpe {

class NotZeroSum : public std::runtime_error {
 public:
  explicit NotZeroSum(const std::string& w) : std::runtime_error(w) {}
};
class RayTermination : public std::runtime_error {
 public:
  explicit RayTermination(const std::string& w) : std::runtime_error(w) {}
};

namespace detail {

struct SplitRows {
  std::vector<LinearRow> eq, ge;
};

inline SplitRows split_rows(const PerturbedPolytope& poly) {
  SplitRows out;
  for (const LinearRow& row : poly.all_rows())
    (row.rel == Rel::kEq ? out.eq : out.ge).push_back(row);
  return out;
}

inline bool rows_satisfied_symbolically(const std::vector<LinearRow>& rows,
                                        const std::vector<EpsPoly>& x) {
  for (const LinearRow& row : rows) {
    EpsPoly lhs;
    for (const auto& [v, c] : row.coeffs) lhs += x[static_cast<size_t>(v)] * c;
    EpsPoly slack = lhs - row.rhs;
    if (row.rel == Rel::kEq ? !slack.is_zero() : slack.sign() < 0) return false;
  }
  return true;
}

}  // namespace detail

struct TwoPlayerAssembly {
  LcpInstance lcp;
  PerturbedPolytope poly1, poly2;
  PayoffMatrices payoffs;
  int x_offset = 0;  // player-1 variables at [x_offset, x_offset + n1)
  int y_offset = 0;
};

/// Complementary-slackness system of the two perturbed best-response LPs:
/// primal feasibility of both polytopes, dual feasibility of both sides,
/// and complementarity pairing each variable with its dual slack. Equality
/// multipliers are difference-split so every LCP variable is nonnegative;
/// eps appears only in q.
inline TwoPlayerAssembly assemble_lcp(const GameTree& g,
                                      PerturbedPolytope poly1,
                                      PerturbedPolytope poly2,
                                      PayoffMatrices payoffs) {
  if (g.num_players != 2)
    throw WrongPlayerCount("the complementarity pipeline needs 2 players");
  TwoPlayerAssembly out;
  out.poly1 = std::move(poly1);
  out.poly2 = std::move(poly2);
  out.payoffs = std::move(payoffs);

  // Shift each player's payoffs uniformly negative. Feasible plan pairs give
  // every leaf its full reach probability (x^T mass y = 1), so the shift is
  // a constant on the objective and preserves best responses, while negative
  // payoff matrices keep complementary pivoting off secondary rays.
  for (int p = 0; p < 2; ++p) {
    auto& mat = p == 0 ? out.payoffs.a : out.payoffs.b;
    Rat top(0);
    bool first = true;
    for (const Node& n : g.nodes) {
      if (n.kind != NodeKind::kLeaf) continue;
      if (first || n.payoffs[static_cast<size_t>(p)] > top) top = n.payoffs[static_cast<size_t>(p)];
      first = false;
    }
    Rat shift = top + 1;
    for (const auto& [key, w] : out.payoffs.mass) mat[key] -= shift * w;
  }

  detail::SplitRows r1 = detail::split_rows(out.poly1);
  detail::SplitRows r2 = detail::split_rows(out.poly2);
  const int n1 = out.poly1.num_vars;
  const int n2 = out.poly2.num_vars;
  const int e1 = static_cast<int>(r1.eq.size());
  const int i1 = static_cast<int>(r1.ge.size());
  const int e2 = static_cast<int>(r2.eq.size());
  const int i2 = static_cast<int>(r2.ge.size());
  const int dim = n1 + n2 + 2 * e1 + i1 + 2 * e2 + i2;

  out.x_offset = 0;
  out.y_offset = n1;
  const int p1pos = n1 + n2;
  const int p1neg = p1pos + e1;
  const int s1 = p1neg + e1;
  const int p2pos = s1 + i1;
  const int p2neg = p2pos + e2;
  const int s2 = p2neg + e2;

  LcpInstance& lcp = out.lcp;
  lcp.m.assign(static_cast<size_t>(dim), std::vector<Rat>(static_cast<size_t>(dim), Rat(0)));
  lcp.q.assign(static_cast<size_t>(dim), EpsPoly());
  lcp.tags.assign(static_cast<size_t>(dim), VarTag::kPlan);
  for (int v = 0; v < n1; ++v)
    lcp.tags[static_cast<size_t>(v)] =
        v < out.poly1.seq.num_sequences ? VarTag::kPlan : VarTag::kWire;
  for (int v = 0; v < n2; ++v)
    lcp.tags[static_cast<size_t>(n1 + v)] =
        v < out.poly2.seq.num_sequences ? VarTag::kPlan : VarTag::kWire;

  // Dual feasibility rows for x: E1^T(p+ - p-) - F1^T s - A y >= 0.
  for (const auto& [key, val] : out.payoffs.a)
    lcp.m[static_cast<size_t>(out.x_offset + key.first)]
         [static_cast<size_t>(out.y_offset + key.second)] -= val;
  for (int r = 0; r < e1; ++r)
    for (const auto& [v, c] : r1.eq[static_cast<size_t>(r)].coeffs) {
      lcp.m[static_cast<size_t>(out.x_offset + v)][static_cast<size_t>(p1pos + r)] += c;
      lcp.m[static_cast<size_t>(out.x_offset + v)][static_cast<size_t>(p1neg + r)] -= c;
    }
  for (int r = 0; r < i1; ++r)
    for (const auto& [v, c] : r1.ge[static_cast<size_t>(r)].coeffs)
      lcp.m[static_cast<size_t>(out.x_offset + v)][static_cast<size_t>(s1 + r)] -= c;

  // Dual feasibility rows for y: E2^T(p+ - p-) - F2^T s - B^T x >= 0.
  for (const auto& [key, val] : out.payoffs.b)
    lcp.m[static_cast<size_t>(out.y_offset + key.second)]
         [static_cast<size_t>(out.x_offset + key.first)] -= val;
  for (int r = 0; r < e2; ++r)
    for (const auto& [v, c] : r2.eq[static_cast<size_t>(r)].coeffs) {
      lcp.m[static_cast<size_t>(out.y_offset + v)][static_cast<size_t>(p2pos + r)] += c;
      lcp.m[static_cast<size_t>(out.y_offset + v)][static_cast<size_t>(p2neg + r)] -= c;
    }
  for (int r = 0; r < i2; ++r)
    for (const auto& [v, c] : r2.ge[static_cast<size_t>(r)].coeffs)
      lcp.m[static_cast<size_t>(out.y_offset + v)][static_cast<size_t>(s2 + r)] -= c;

  // Primal feasibility rows, paired with the dual variables.
  for (int r = 0; r < e1; ++r) {
    const LinearRow& row = r1.eq[static_cast<size_t>(r)];
    for (const auto& [v, c] : row.coeffs) {
      lcp.m[static_cast<size_t>(p1pos + r)][static_cast<size_t>(out.x_offset + v)] -= c;
      lcp.m[static_cast<size_t>(p1neg + r)][static_cast<size_t>(out.x_offset + v)] += c;
    }
    lcp.q[static_cast<size_t>(p1pos + r)] = row.rhs;
    lcp.q[static_cast<size_t>(p1neg + r)] = -row.rhs;
    lcp.tags[static_cast<size_t>(p1pos + r)] = VarTag::kEqDualPos;
    lcp.tags[static_cast<size_t>(p1neg + r)] = VarTag::kEqDualNeg;
  }
  for (int r = 0; r < i1; ++r) {
    const LinearRow& row = r1.ge[static_cast<size_t>(r)];
    for (const auto& [v, c] : row.coeffs)
      lcp.m[static_cast<size_t>(s1 + r)][static_cast<size_t>(out.x_offset + v)] += c;
    lcp.q[static_cast<size_t>(s1 + r)] = -row.rhs;
    lcp.tags[static_cast<size_t>(s1 + r)] = VarTag::kSlackDual;
  }
  for (int r = 0; r < e2; ++r) {
    const LinearRow& row = r2.eq[static_cast<size_t>(r)];
    for (const auto& [v, c] : row.coeffs) {
      lcp.m[static_cast<size_t>(p2pos + r)][static_cast<size_t>(out.y_offset + v)] -= c;
      lcp.m[static_cast<size_t>(p2neg + r)][static_cast<size_t>(out.y_offset + v)] += c;
    }
    lcp.q[static_cast<size_t>(p2pos + r)] = row.rhs;
    lcp.q[static_cast<size_t>(p2neg + r)] = -row.rhs;
    lcp.tags[static_cast<size_t>(p2pos + r)] = VarTag::kEqDualPos;
    lcp.tags[static_cast<size_t>(p2neg + r)] = VarTag::kEqDualNeg;
  }
  for (int r = 0; r < i2; ++r) {
    const LinearRow& row = r2.ge[static_cast<size_t>(r)];
    for (const auto& [v, c] : row.coeffs)
      lcp.m[static_cast<size_t>(s2 + r)][static_cast<size_t>(out.y_offset + v)] += c;
    lcp.q[static_cast<size_t>(s2 + r)] = -row.rhs;
    lcp.tags[static_cast<size_t>(s2 + r)] = VarTag::kSlackDual;
  }
  return out;
}

struct TwoPlayerSolution {
  std::vector<EpsPoly> plan1, plan2;  // realization weights incl. wires
  SymbolicEquilibrium equilibrium;
  int pivots = 0;
};

struct TwoPlayerOptions {
  int facet_threshold = default_facet_threshold();
  int max_pivots = 100000;
};

/// Full LCP path: perturbed polytopes, Lemke, symbolic plan extraction.
inline TwoPlayerSolution solve_two_player(const GameTree& g,
                                          const TwoPlayerOptions& opt = {}) {
  PerturbedPolytope poly1 = perturbed_constraints(g, 0, opt.facet_threshold);
  PerturbedPolytope poly2 = perturbed_constraints(g, 1, opt.facet_threshold);
  SequenceIndex s1 = poly1.seq, s2 = poly2.seq;
  TwoPlayerAssembly asmb =
      assemble_lcp(g, std::move(poly1), std::move(poly2), payoff_matrices(g, s1, s2));

  LemkeOptions lopt;
  lopt.max_pivots = opt.max_pivots;
  LcpResult res = lemke(asmb.lcp, {}, lopt);
  if (res.status == LcpStatus::kRay)
    throw RayTermination("complementary pivoting hit a secondary ray: " +
                         res.ray.note);
  if (res.status == LcpStatus::kIterationLimit)
    throw IterationLimit("complementary pivoting exceeded the pivot budget");

  TwoPlayerSolution sol;
  sol.pivots = res.pivots;
  sol.plan1.assign(res.z.begin() + asmb.x_offset,
                   res.z.begin() + asmb.x_offset + asmb.poly1.num_vars);
  sol.plan2.assign(res.z.begin() + asmb.y_offset,
                   res.z.begin() + asmb.y_offset + asmb.poly2.num_vars);
  if (!detail::rows_satisfied_symbolically(asmb.poly1.all_rows(), sol.plan1) ||
      !detail::rows_satisfied_symbolically(asmb.poly2.all_rows(), sol.plan2))
    throw std::logic_error("solver output violates the perturbed polytopes");
  sol.equilibrium = extract_behavior(g, {s1, s2}, {sol.plan1, sol.plan2});
  sol.equilibrium.provenance = SymbolicEquilibrium::Provenance::kLcp;
  return sol;
}

inline void require_zero_sum(const GameTree& g) {
  if (g.num_players != 2)
    throw WrongPlayerCount("zero-sum solving needs exactly 2 players");
  for (const Node& n : g.nodes)
    if (n.kind == NodeKind::kLeaf && n.payoffs[1] != -n.payoffs[0])
      throw NotZeroSum("leaf payoffs do not sum to zero");
}

struct ZeroSumSolution {
  std::vector<EpsPoly> plan1, plan2;
  EpsRat value;  // player 1's payoff, as a function of eps
  SymbolicEquilibrium equilibrium;
  int pivots = 0;
};

/// Maximin over player 1's perturbed polytope with the inner minimization
/// dualized: variables are player 1's plan plus the multipliers of player
/// 2's rows; player 2's plan is read off the duals of the coupling rows.
inline ZeroSumSolution solve_zero_sum(const GameTree& g,
                                      const TwoPlayerOptions& opt = {}) {
  require_zero_sum(g);
  PerturbedPolytope poly1 = perturbed_constraints(g, 0, opt.facet_threshold);
  PerturbedPolytope poly2 = perturbed_constraints(g, 1, opt.facet_threshold);
  PayoffMatrices pm = payoff_matrices(g, poly1.seq, poly2.seq);
  detail::SplitRows r1 = detail::split_rows(poly1);
  detail::SplitRows r2 = detail::split_rows(poly2);

  const int n1 = poly1.num_vars;
  const int n2 = poly2.num_vars;
  const int e2 = static_cast<int>(r2.eq.size());
  const int i2 = static_cast<int>(r2.ge.size());
  const int p2pos = n1, p2neg = n1 + e2, s2 = n1 + 2 * e2;
  const int nvars = n1 + 2 * e2 + i2;

  LpInstance lp;
  lp.num_vars = nvars;
  lp.maximize = true;
  lp.objective.assign(static_cast<size_t>(nvars), EpsPoly());
  for (int r = 0; r < e2; ++r) {
    lp.objective[static_cast<size_t>(p2pos + r)] = r2.eq[static_cast<size_t>(r)].rhs;
    lp.objective[static_cast<size_t>(p2neg + r)] = -r2.eq[static_cast<size_t>(r)].rhs;
  }
  for (int r = 0; r < i2; ++r)
    lp.objective[static_cast<size_t>(s2 + r)] = r2.ge[static_cast<size_t>(r)].rhs;

  // Coupling rows, one per player-2 variable:
  // E2^T(p+ - p-) + F2^T s - A^T x <= 0. Their duals are player 2's plan.
  std::vector<LinearRow> coupling(static_cast<size_t>(n2));
  for (int k = 0; k < n2; ++k) coupling[static_cast<size_t>(k)].rel = Rel::kLe;
  for (int r = 0; r < e2; ++r)
    for (const auto& [v, c] : r2.eq[static_cast<size_t>(r)].coeffs) {
      coupling[static_cast<size_t>(v)].coeffs.emplace_back(p2pos + r, c);
      coupling[static_cast<size_t>(v)].coeffs.emplace_back(p2neg + r, -c);
    }
  for (int r = 0; r < i2; ++r)
    for (const auto& [v, c] : r2.ge[static_cast<size_t>(r)].coeffs)
      coupling[static_cast<size_t>(v)].coeffs.emplace_back(s2 + r, c);
  for (const auto& [key, val] : pm.a)
    coupling[static_cast<size_t>(key.second)].coeffs.emplace_back(key.first, -val);
  for (auto& row : coupling) lp.rows.push_back(std::move(row));

  // Player 1's own feasibility.
  for (const LinearRow& row : poly1.all_rows()) lp.rows.push_back(row);

  SimplexOptions sopt;
  sopt.max_pivots = opt.max_pivots;
  LpSolution sol = solve_lp(lp, sopt);
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("maximin program is not solvable; assembly bug");

  ZeroSumSolution out;
  out.pivots = sol.pivots;
  out.value = EpsRat(sol.objective_value);
  out.plan1.assign(sol.x.begin(), sol.x.begin() + n1);
  out.plan2.resize(static_cast<size_t>(n2));
  for (int k = 0; k < n2; ++k) out.plan2[static_cast<size_t>(k)] = sol.duals[static_cast<size_t>(k)];
  if (!detail::rows_satisfied_symbolically(poly1.all_rows(), out.plan1) ||
      !detail::rows_satisfied_symbolically(poly2.all_rows(), out.plan2))
    throw std::logic_error("maximin output violates the perturbed polytopes");
  out.equilibrium =
      extract_behavior(g, {poly1.seq, poly2.seq}, {out.plan1, out.plan2});
  out.equilibrium.provenance = SymbolicEquilibrium::Provenance::kLp;
  return out;
}

}  // namespace qpe
