#pragma once

#include <string>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/game.hpp"
#include "qpe/sequence_form.hpp"

// Behavior-strategy equilibria with a symbolic eps: extraction from
// realization plans, the eps -> 0 limit, and exact verification of the
// defining inequalities at sampled numeric eps.

namespace qpe {

struct SymbolicEquilibrium {
  BehaviorProfile<EpsRat> symbolic;
  BehaviorProfile<Rat> limit;
  enum class Provenance { kLcp, kLp } provenance = Provenance::kLcp;
};

/// Behavior strategies from symbolic realization plans: each local
/// probability is the ratio of an action weight to its parent weight, then
/// the limit is taken per entry. Plans must be feasible for the perturbed
/// polytopes, whose eps-power floors keep every parent weight nonzero.
inline SymbolicEquilibrium extract_behavior(
    const GameTree& g, const std::vector<SequenceIndex>& indices,
    const std::vector<std::vector<EpsPoly>>& plans) {
  SymbolicEquilibrium eq;
  eq.symbolic.local.resize(g.infosets.size());
  eq.limit.local.resize(g.infosets.size());
  for (size_t p = 0; p < indices.size(); ++p) {
    const SequenceIndex& idx = indices[p];
    const std::vector<EpsPoly>& x = plans[p];
    for (InfosetId h : idx.infosets) {
      const EpsPoly& parent =
          x[static_cast<size_t>(idx.parent_seq[static_cast<size_t>(h)])];
      if (parent.is_zero())
        throw ZeroParentWeight("symbolic plan hits a zero parent weight at " +
                               detail::infoset_label(g, h));
      EpsRat total(0);
      for (int a = 0; a < g.num_actions(h); ++a) {
        EpsRat prob(x[static_cast<size_t>(idx.seq_of(h, a))], parent);
        eq.symbolic.local[static_cast<size_t>(h)].push_back(prob);
        eq.limit.local[static_cast<size_t>(h)].push_back(prob.limit_at_zero());
        total += prob;
      }
      if (!(total == EpsRat(1)))
        throw std::logic_error("local strategy does not sum to 1 at " +
                               detail::infoset_label(g, h));
    }
  }
  return eq;
}

/// Exact numeric profile at a given eps.
inline BehaviorProfile<Rat> eval_profile(const BehaviorProfile<EpsRat>& b,
                                         const Rat& eps0) {
  BehaviorProfile<Rat> out;
  out.local.resize(b.local.size());
  for (size_t h = 0; h < b.local.size(); ++h)
    for (const EpsRat& p : b.local[h]) out.local[h].push_back(p.eval_at(eps0));
  return out;
}

enum class VerifyKind { kQuasiProper, kDeltaAlmost, kNash };

struct Violation {
  PlayerId player = 0;
  InfosetId infoset = -1;  // -1 on whole-strategy (Nash) violations
  int action_c = -1;
  int action_cprime = -1;
  Rat value_c;       // K at c, or the profile payoff for Nash
  Rat value_cprime;  // K at c', or the best-response payoff for Nash
};

struct VerificationReport {
  VerifyKind kind = VerifyKind::kQuasiProper;
  bool pass = false;
  Rat eps0;
  Rat delta;
  int ratio_factor = 1;  // 1 checks b(c) <= eps b(c'), 2 the doubled bound
  std::vector<Violation> violations;
};

namespace detail {

/// Shared sweep: flag (c, c') pairs where the valuation trigger fires but
/// b(c) <= factor * eps0 * b(c') fails.
inline VerificationReport verify_ratio_condition(const GameTree& g,
                                                 const BehaviorProfile<Rat>& b,
                                                 const Rat& eps0,
                                                 const Rat& delta,
                                                 int ratio_factor,
                                                 VerifyKind kind) {
  if (!is_fully_mixed(g, b))
    throw NotFullyMixed("verification needs a fully mixed profile");
  VerificationReport report;
  report.kind = kind;
  report.eps0 = eps0;
  report.delta = delta;
  report.ratio_factor = ratio_factor;
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    InfosetId hid = static_cast<InfosetId>(h);
    int m = g.num_actions(hid);
    std::vector<Rat> k(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a) k[static_cast<size_t>(a)] = k_value(g, b, hid, a);
    for (int c = 0; c < m; ++c)
      for (int cp = 0; cp < m; ++cp) {
        if (c == cp) continue;
        bool triggered = kind == VerifyKind::kDeltaAlmost
                             ? k[static_cast<size_t>(c)] + delta <=
                                   k[static_cast<size_t>(cp)]
                             : k[static_cast<size_t>(c)] < k[static_cast<size_t>(cp)];
        if (!triggered) continue;
        if (b.at(hid, c) <= ratio_factor * eps0 * b.at(hid, cp)) continue;
        report.violations.push_back(Violation{g.infoset(hid).owner, hid, c, cp,
                                              k[static_cast<size_t>(c)],
                                              k[static_cast<size_t>(cp)]});
      }
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace detail

/// b(c) <= factor * eps0 * b(c') whenever K(c) < K(c'), exactly.
inline VerificationReport verify_eps_quasi_proper(const GameTree& g,
                                                  const BehaviorProfile<Rat>& b,
                                                  const Rat& eps0,
                                                  int ratio_factor = 1) {
  return detail::verify_ratio_condition(g, b, eps0, Rat(0), ratio_factor,
                                        VerifyKind::kQuasiProper);
}

/// Same ratio condition, triggered only by valuation gaps of at least delta.
inline VerificationReport verify_delta_almost(const GameTree& g,
                                              const BehaviorProfile<Rat>& b,
                                              const Rat& eps,
                                              const Rat& delta) {
  return detail::verify_ratio_condition(g, b, eps, delta, 1,
                                        VerifyKind::kDeltaAlmost);
}

/// No player gains by any pure deviation (best response by backward
/// induction on the sequence forest), exactly.
inline VerificationReport verify_nash(const GameTree& g,
                                      const BehaviorProfile<Rat>& b) {
  VerificationReport report;
  report.kind = VerifyKind::kNash;
  for (PlayerId p = 0; p < g.num_players; ++p) {
    Rat current = expected_payoff(g, b, p);
    Rat best = best_response_value(g, b, p);
    if (best > current)
      report.violations.push_back(Violation{p, -1, -1, -1, current, best});
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace qpe
