#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/constraints.hpp"
#include "qpe/game.hpp"
#include "qpe/permutahedron.hpp"

// Sequence-form machinery: per-player sequence indices, bilinear payoff
// matrices for two-player games, and the perturbed strategy polytopes in
// which each infoset's action weights live in an eps-permutahedron whose
// mass is the parent sequence weight.

namespace qpe {

class WrongPlayerCount : public std::runtime_error {
 public:
  explicit WrongPlayerCount(const std::string& w) : std::runtime_error(w) {}
};
class ZeroParentWeight : public std::runtime_error {
 public:
  explicit ZeroParentWeight(const std::string& w) : std::runtime_error(w) {}
};

/// One player's sequences: id 0 is the empty sequence and every action
/// occurrence (h, a) gets its own id, numbered in canonical infoset order.
struct SequenceIndex {
  PlayerId player = 0;
  int num_sequences = 1;
  std::vector<InfosetId> infosets;  // canonical order, owner's only

  /// Per infoset (global id): the owner's sequence leading to it, or -1 when
  /// the infoset belongs to someone else.
  std::vector<int> parent_seq;
  /// Per infoset (global id): id of the sequence for its first action.
  std::vector<int> first_seq;
  /// Per infoset (global id): k_h, the total action count along the own
  /// history to the infoset.
  std::vector<int> k_offset;
  /// Per sequence id > 0: the (infoset, action) pair it extends.
  std::vector<std::pair<InfosetId, int>> seq_action;

  int seq_of(InfosetId h, int action) const {
    return first_seq[static_cast<size_t>(h)] + action;
  }
};

inline SequenceIndex build_sequences(const GameTree& g, PlayerId player) {
  assert(g.validated);
  SequenceIndex idx;
  idx.player = player;
  idx.parent_seq.assign(g.infosets.size(), -1);
  idx.first_seq.assign(g.infosets.size(), -1);
  idx.k_offset.assign(g.infosets.size(), 0);
  idx.seq_action.emplace_back(-1, -1);  // placeholder for the empty sequence
  idx.infosets = g.infosets_of[static_cast<size_t>(player)];
  for (InfosetId h : idx.infosets) {
    auto hist = own_history(g, h);
    if (hist.empty()) {
      idx.parent_seq[static_cast<size_t>(h)] = 0;
      idx.k_offset[static_cast<size_t>(h)] = 0;
    } else {
      auto [ph, pa] = hist.back();
      idx.parent_seq[static_cast<size_t>(h)] = idx.seq_of(ph, pa);
      idx.k_offset[static_cast<size_t>(h)] =
          idx.k_offset[static_cast<size_t>(ph)] + g.num_actions(ph);
    }
    idx.first_seq[static_cast<size_t>(h)] = idx.num_sequences;
    for (int a = 0; a < g.num_actions(h); ++a) idx.seq_action.emplace_back(h, a);
    idx.num_sequences += g.num_actions(h);
  }
  return idx;
}

/// Sequence of `player` at leaf z: the last own action on the root path.
inline int leaf_sequence(const GameTree& g, const SequenceIndex& idx, NodeId z) {
  int seq = 0;
  for (auto [u, a] : root_path(g, z)) {
    const Node& n = g.node(u);
    if (n.kind == NodeKind::kDecision &&
        g.infoset(n.infoset).owner == idx.player)
      seq = idx.seq_of(n.infoset, a);
  }
  return seq;
}

/// Sparse sequence-form payoff matrices of a two-player game:
/// a[(s1, s2)] = sum of chance-weighted player-1 payoffs over the leaves with
/// those sequences, and likewise b for player 2. For realization plans x, y:
/// U_1 = x^T A y and U_2 = x^T B y. The mass matrix holds the chance weight
/// alone; x^T mass y = 1 for every feasible plan pair, which makes uniform
/// payoff shifts equilibrium-preserving.
struct PayoffMatrices {
  std::map<std::pair<int, int>, Rat> a, b, mass;
  int rows = 0, cols = 0;
};

inline PayoffMatrices payoff_matrices(const GameTree& g,
                                      const SequenceIndex& s1,
                                      const SequenceIndex& s2) {
  if (g.num_players != 2)
    throw WrongPlayerCount("sequence-form payoff matrices need 2 players, got " +
                           std::to_string(g.num_players));
  PayoffMatrices pm;
  pm.rows = s1.num_sequences;
  pm.cols = s2.num_sequences;
  for (size_t v = 0; v < g.nodes.size(); ++v) {
    const Node& n = g.nodes[v];
    if (n.kind != NodeKind::kLeaf) continue;
    Rat chance(1);
    int seq1 = 0, seq2 = 0;
    for (auto [u, a] : root_path(g, static_cast<NodeId>(v))) {
      const Node& un = g.node(u);
      if (un.kind == NodeKind::kChance)
        chance *= un.chance_probs[static_cast<size_t>(a)];
      else if (g.infoset(un.infoset).owner == 0)
        seq1 = s1.seq_of(un.infoset, a);
      else
        seq2 = s2.seq_of(un.infoset, a);
    }
    if (chance == 0) continue;
    pm.a[{seq1, seq2}] += chance * n.payoffs[0];
    pm.b[{seq1, seq2}] += chance * n.payoffs[1];
    pm.mass[{seq1, seq2}] += chance;
  }
  return pm;
}

/// One player's perturbed strategy polytope: variable 0..num_sequences-1 are
/// the realization weights (empty sequence pinned to 1), higher ids are
/// comparator wires, and each infoset contributes one permutahedron block
/// over its action sequences with mass equal to the parent sequence weight.
struct PerturbedPolytope {
  PlayerId player = 0;
  SequenceIndex seq;
  int num_vars = 0;
  LinearRow root_pin;
  std::vector<ConstraintBlock> blocks;  // canonical infoset order

  std::vector<LinearRow> all_rows() const {
    std::vector<LinearRow> rows{root_pin};
    for (const auto& blk : blocks)
      rows.insert(rows.end(), blk.rows.begin(), blk.rows.end());
    return rows;
  }
};

inline PerturbedPolytope perturbed_constraints(
    const GameTree& g, PlayerId player,
    int facet_threshold = default_facet_threshold()) {
  PerturbedPolytope poly;
  poly.player = player;
  poly.seq = build_sequences(g, player);
  poly.root_pin = LinearRow{{{0, Rat(1)}}, Rel::kEq, EpsPoly(Rat(1))};
  int next_var = poly.seq.num_sequences;
  for (InfosetId h : poly.seq.infosets) {
    int m = g.num_actions(h);
    PermSpec spec{Mass::of_var(poly.seq.parent_seq[static_cast<size_t>(h)]),
                  poly.seq.k_offset[static_cast<size_t>(h)], m};
    std::vector<int> primary(static_cast<size_t>(m));
    for (int a = 0; a < m; ++a)
      primary[static_cast<size_t>(a)] = poly.seq.seq_of(h, a);
    if (m <= facet_threshold)
      poly.blocks.push_back(facet_system(spec, primary, facet_threshold));
    else
      poly.blocks.push_back(
          network_system(spec, batcher_network(m), primary, next_var));
  }
  poly.num_vars = next_var;
  return poly;
}

/// Realization plan of a behavior strategy: multiply local probabilities
/// down the sequence tree.
template <typename T>
std::vector<T> behavior_to_realization(const GameTree& g,
                                       const SequenceIndex& idx,
                                       const BehaviorProfile<T>& b) {
  std::vector<T> x(static_cast<size_t>(idx.num_sequences), value_cast<T>(Rat(0)));
  x[0] = value_cast<T>(Rat(1));
  for (InfosetId h : idx.infosets) {
    const T& parent = x[static_cast<size_t>(idx.parent_seq[static_cast<size_t>(h)])];
    for (int a = 0; a < g.num_actions(h); ++a)
      x[static_cast<size_t>(idx.seq_of(h, a))] = parent * b.at(h, a);
  }
  return x;
}

/// Behavior strategy from a realization plan: the ratio of each action
/// weight to its infoset's parent weight. Defined only when no parent weight
/// is zero, which holds for every plan in the perturbed polytope.
template <typename T>
std::vector<std::vector<T>> realization_to_behavior(const GameTree& g,
                                                    const SequenceIndex& idx,
                                                    const std::vector<T>& x) {
  std::vector<std::vector<T>> local(g.infosets.size());
  for (InfosetId h : idx.infosets) {
    const T& parent = x[static_cast<size_t>(idx.parent_seq[static_cast<size_t>(h)])];
    if (parent == T(0))
      throw ZeroParentWeight("zero parent weight at " +
                             detail::infoset_label(g, h));
    auto& row = local[static_cast<size_t>(h)];
    row.reserve(static_cast<size_t>(g.num_actions(h)));
    for (int a = 0; a < g.num_actions(h); ++a)
      row.push_back(x[static_cast<size_t>(idx.seq_of(h, a))] / parent);
  }
  return local;
}

}  // namespace qpe
