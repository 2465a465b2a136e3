#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/eps.hpp"
#include "qpe/rational.hpp"

// Finite extensive-form games of perfect recall over exact rationals:
// tree + chance nodes + information sets + leaf payoffs, and the evaluation
// primitives built on them (reach probabilities, expected payoffs, own
// realization weights, and conditional best-response valuations).

namespace qpe {

using NodeId = int;
using InfosetId = int;
using PlayerId = int;  // 0-based internally; files use 1-based player numbers

enum class NodeKind { kChance, kDecision, kLeaf };

struct Node {
  NodeKind kind = NodeKind::kLeaf;
  NodeId parent = -1;
  std::vector<std::string> actions;  // outgoing edge labels, in order
  std::vector<NodeId> children;      // aligned with actions
  std::vector<Rat> chance_probs;     // chance nodes, aligned with actions
  InfosetId infoset = -1;            // decision nodes
  std::vector<Rat> payoffs;          // leaves, one entry per player
  std::string name;                  // optional, for diagnostics
  int src_line = -1, src_col = -1;   // set by the parser, -1 otherwise
};

struct InfoSet {
  PlayerId owner = 0;
  std::string name;
  std::vector<std::string> actions;  // C_h, order is significant
  std::vector<NodeId> members;
  int src_line = -1, src_col = -1;
};

struct GameTree {
  int num_players = 0;
  NodeId root = 0;
  std::vector<Node> nodes;
  std::vector<InfoSet> infosets;
  /// Per player, infoset ids in canonical order (depth-first discovery of the
  /// first member node). Filled in by validate().
  std::vector<std::vector<InfosetId>> infosets_of;
  bool validated = false;

  const Node& node(NodeId v) const { return nodes[static_cast<size_t>(v)]; }
  const InfoSet& infoset(InfosetId h) const {
    return infosets[static_cast<size_t>(h)];
  }
  int num_actions(InfosetId h) const {
    return static_cast<int>(infoset(h).actions.size());
  }
  int action_index(InfosetId h, const std::string& label) const {
    const auto& acts = infoset(h).actions;
    auto it = std::find(acts.begin(), acts.end(), label);
    return it == acts.end() ? -1 : static_cast<int>(it - acts.begin());
  }
};

class NotATree : public std::runtime_error {
 public:
  explicit NotATree(const std::string& w) : std::runtime_error(w) {}
};
class BadChanceDistribution : public std::runtime_error {
 public:
  explicit BadChanceDistribution(const std::string& w) : std::runtime_error(w) {}
};
class InconsistentInfoset : public std::runtime_error {
 public:
  explicit InconsistentInfoset(const std::string& w) : std::runtime_error(w) {}
};
class ImperfectRecall : public std::runtime_error {
 public:
  explicit ImperfectRecall(const std::string& w) : std::runtime_error(w) {}
};
class MalformedGame : public std::runtime_error {
 public:
  explicit MalformedGame(const std::string& w) : std::runtime_error(w) {}
};
class ConditionalOnNullSet : public std::runtime_error {
 public:
  explicit ConditionalOnNullSet(const std::string& w) : std::runtime_error(w) {}
};
class NotFullyMixed : public std::runtime_error {
 public:
  explicit NotFullyMixed(const std::string& w) : std::runtime_error(w) {}
};
class ActionNotInInfoset : public std::runtime_error {
 public:
  explicit ActionNotInInfoset(const std::string& w) : std::runtime_error(w) {}
};

/// Local strategies for every infoset: local[h][a] is the probability of the
/// a-th action of infoset h. T is double, Rat, or EpsRat.
template <typename T>
struct BehaviorProfile {
  std::vector<std::vector<T>> local;

  const T& at(InfosetId h, int a) const {
    return local[static_cast<size_t>(h)][static_cast<size_t>(a)];
  }
  T& at(InfosetId h, int a) {
    return local[static_cast<size_t>(h)][static_cast<size_t>(a)];
  }
};

/// Convert an exact rational into the arithmetic type of a computation.
template <typename T>
T value_cast(const Rat& q) {
  if constexpr (std::is_same_v<T, double>)
    return q.get_d();
  else
    return T(q);
}

template <typename T>
BehaviorProfile<T> uniform_profile(const GameTree& g) {
  BehaviorProfile<T> b;
  b.local.resize(g.infosets.size());
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    int m = static_cast<int>(g.infosets[h].actions.size());
    b.local[h].assign(static_cast<size_t>(m), value_cast<T>(Rat(1, m)));
  }
  return b;
}

template <typename T>
bool is_fully_mixed(const GameTree& g, const BehaviorProfile<T>& b) {
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    if (b.local[h].size() != g.infosets[h].actions.size()) return false;
    for (const T& p : b.local[h])
      if (!(p > T(0))) return false;
  }
  return true;
}

namespace detail {

inline std::string at_source(int line, int col) {
  if (line < 0) return "";
  return " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
}

inline std::string node_label(const GameTree& g, NodeId v) {
  const Node& n = g.node(v);
  std::string base = n.name.empty() ? "node #" + std::to_string(v)
                                    : "node '" + n.name + "'";
  return base + at_source(n.src_line, n.src_col);
}

inline std::string infoset_label(const GameTree& g, InfosetId h) {
  const InfoSet& s = g.infoset(h);
  std::string base = s.name.empty() ? "infoset #" + std::to_string(h)
                                    : "infoset '" + s.name + "'";
  return base + at_source(s.src_line, s.src_col);
}

}  // namespace detail

/// Root path of v as (node, action index taken at that node) pairs, root first.
inline std::vector<std::pair<NodeId, int>> root_path(const GameTree& g,
                                                     NodeId v) {
  std::vector<std::pair<NodeId, int>> path;
  NodeId cur = v;
  while (g.node(cur).parent >= 0) {
    NodeId par = g.node(cur).parent;
    const Node& pn = g.node(par);
    auto it = std::find(pn.children.begin(), pn.children.end(), cur);
    assert(it != pn.children.end());
    path.emplace_back(par, static_cast<int>(it - pn.children.begin()));
    cur = par;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

/// The owner's (infoset, action index) pairs on the root path to any member
/// of h. Well-defined under perfect recall.
inline std::vector<std::pair<InfosetId, int>> own_history(const GameTree& g,
                                                          InfosetId h) {
  const InfoSet& s = g.infoset(h);
  std::vector<std::pair<InfosetId, int>> hist;
  for (auto [v, a] : root_path(g, s.members.front())) {
    const Node& n = g.node(v);
    if (n.kind == NodeKind::kDecision && g.infoset(n.infoset).owner == s.owner)
      hist.emplace_back(n.infoset, a);
  }
  return hist;
}

/// True iff h2 = h1 or h1 appears in h2's own history.
inline bool weakly_follows(const GameTree& g, InfosetId h2, InfosetId h1) {
  if (h2 == h1) return true;
  for (auto [h, a] : own_history(g, h2))
    if (h == h1) return true;
  return false;
}

/// Structural and probabilistic checks; on success returns the game with the
/// canonical per-player infoset order filled in.
///
/// Perfect recall is checked by comparing, for all members of every infoset,
/// the owner's sequence of (infoset, action) pairs along the root path.
inline GameTree validate(GameTree g) {
  const size_t nn = g.nodes.size();
  if (g.num_players < 1) throw MalformedGame("player count must be >= 1");
  if (nn == 0) throw NotATree("game has no nodes");
  if (g.root < 0 || static_cast<size_t>(g.root) >= nn)
    throw NotATree("root id out of range");

  // Tree shape: child lists are consistent with parent pointers and every
  // node is reached exactly once from the root.
  std::vector<int> seen(nn, 0);
  std::vector<NodeId> stack{g.root};
  if (g.node(g.root).parent != -1) throw NotATree("root has a parent");
  size_t visited = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (v < 0 || static_cast<size_t>(v) >= nn)
      throw NotATree("child id out of range at " + detail::node_label(g, v));
    if (seen[static_cast<size_t>(v)]++)
      throw NotATree(detail::node_label(g, v) + " is reached twice");
    ++visited;
    const Node& n = g.node(v);
    if (n.children.size() != n.actions.size())
      throw MalformedGame(detail::node_label(g, v) +
                          ": child/action count mismatch");
    for (NodeId c : n.children) {
      if (c < 0 || static_cast<size_t>(c) >= nn)
        throw NotATree("child id out of range under " + detail::node_label(g, v));
      if (g.node(c).parent != v)
        throw NotATree(detail::node_label(g, c) +
                       " has inconsistent parent pointer");
      stack.push_back(c);
    }
    switch (n.kind) {
      case NodeKind::kLeaf:
        if (!n.children.empty())
          throw MalformedGame(detail::node_label(g, v) + ": leaf with children");
        if (static_cast<int>(n.payoffs.size()) != g.num_players)
          throw MalformedGame(detail::node_label(g, v) +
                              ": payoff vector length != player count");
        break;
      case NodeKind::kChance: {
        if (n.children.empty())
          throw MalformedGame(detail::node_label(g, v) + ": childless chance node");
        if (n.chance_probs.size() != n.children.size())
          throw MalformedGame(detail::node_label(g, v) +
                              ": probability/child count mismatch");
        Rat total(0);
        for (const Rat& p : n.chance_probs) {
          if (p < 0)
            throw BadChanceDistribution(detail::node_label(g, v) +
                                        ": negative probability");
          total += p;
        }
        if (total != 1)
          throw BadChanceDistribution(detail::node_label(g, v) +
                                      ": probabilities sum to " + to_string(total));
        break;
      }
      case NodeKind::kDecision: {
        if (n.infoset < 0 ||
            static_cast<size_t>(n.infoset) >= g.infosets.size())
          throw MalformedGame(detail::node_label(g, v) + ": bad infoset id");
        break;
      }
    }
  }
  if (visited != nn)
    throw NotATree(std::to_string(nn - visited) +
                   " node(s) unreachable from the root");

  // Depth-first preorder positions, used to canonicalize member lists.
  std::vector<int> preorder(nn, -1);
  {
    int counter = 0;
    std::vector<NodeId> dfs{g.root};
    while (!dfs.empty()) {
      NodeId v = dfs.back();
      dfs.pop_back();
      preorder[static_cast<size_t>(v)] = counter++;
      const Node& n = g.node(v);
      for (size_t i = n.children.size(); i-- > 0;) dfs.push_back(n.children[i]);
    }
  }

  // Infoset consistency: owner range, nonempty membership, member/back
  // references, and identical action lists on every member. Members are
  // stored in depth-first order.
  std::vector<std::vector<NodeId>> members_found(g.infosets.size());
  for (size_t v = 0; v < nn; ++v)
    if (g.nodes[v].kind == NodeKind::kDecision)
      members_found[static_cast<size_t>(g.nodes[v].infoset)].push_back(
          static_cast<NodeId>(v));
  for (auto& mem : members_found)
    std::sort(mem.begin(), mem.end(), [&](NodeId a, NodeId b) {
      return preorder[static_cast<size_t>(a)] < preorder[static_cast<size_t>(b)];
    });
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    InfoSet& s = g.infosets[h];
    if (s.owner < 0 || s.owner >= g.num_players)
      throw InconsistentInfoset(detail::infoset_label(g, static_cast<int>(h)) +
                                ": owner out of range");
    if (s.actions.empty())
      throw InconsistentInfoset(detail::infoset_label(g, static_cast<int>(h)) +
                                ": empty action set");
    for (size_t i = 0; i < s.actions.size(); ++i)
      for (size_t j = i + 1; j < s.actions.size(); ++j)
        if (s.actions[i] == s.actions[j])
          throw InconsistentInfoset(
              detail::infoset_label(g, static_cast<int>(h)) +
              ": duplicate action '" + s.actions[i] + "'");
    s.members = members_found[h];
    if (s.members.empty())
      throw InconsistentInfoset(detail::infoset_label(g, static_cast<int>(h)) +
                                ": no member nodes");
    for (NodeId v : s.members)
      if (g.node(v).actions != s.actions)
        throw InconsistentInfoset(
            detail::infoset_label(g, static_cast<int>(h)) + ": " +
            detail::node_label(g, v) + " has a different action list");
  }

  // Perfect recall.
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    const InfoSet& s = g.infosets[h];
    std::optional<std::vector<std::pair<InfosetId, int>>> ref;
    for (NodeId v : s.members) {
      std::vector<std::pair<InfosetId, int>> hist;
      for (auto [u, a] : root_path(g, v)) {
        const Node& n = g.node(u);
        if (n.kind == NodeKind::kDecision &&
            g.infoset(n.infoset).owner == s.owner)
          hist.emplace_back(n.infoset, a);
      }
      if (!ref)
        ref = std::move(hist);
      else if (*ref != hist)
        throw ImperfectRecall(detail::infoset_label(g, static_cast<int>(h)) +
                              ": members disagree on the owner's history (" +
                              detail::node_label(g, v) + ")");
    }
  }

  // Canonical infoset order: depth-first discovery of first member nodes.
  g.infosets_of.assign(static_cast<size_t>(g.num_players), {});
  std::vector<bool> infoset_seen(g.infosets.size(), false);
  std::vector<NodeId> dfs{g.root};
  while (!dfs.empty()) {
    NodeId v = dfs.back();
    dfs.pop_back();
    const Node& n = g.node(v);
    if (n.kind == NodeKind::kDecision &&
        !infoset_seen[static_cast<size_t>(n.infoset)] &&
        g.infoset(n.infoset).members.front() == v) {
      infoset_seen[static_cast<size_t>(n.infoset)] = true;
      g.infosets_of[static_cast<size_t>(g.infoset(n.infoset).owner)].push_back(
          n.infoset);
    }
    for (size_t i = n.children.size(); i-- > 0;) dfs.push_back(n.children[i]);
  }
  assert(std::all_of(infoset_seen.begin(), infoset_seen.end(),
                     [](bool s) { return s; }));

  g.validated = true;
  return g;
}

/// rho_b(v): probability that v is reached under profile b (chance and all
/// players' behavior probabilities along the root path).
template <typename T>
T reach_probability(const GameTree& g, const BehaviorProfile<T>& b, NodeId v) {
  T p = value_cast<T>(Rat(1));
  for (auto [u, a] : root_path(g, v)) {
    const Node& n = g.node(u);
    if (n.kind == NodeKind::kChance)
      p = p * value_cast<T>(n.chance_probs[static_cast<size_t>(a)]);
    else if (n.kind == NodeKind::kDecision)
      p = p * b.at(n.infoset, a);
  }
  return p;
}

template <typename T>
T infoset_reach(const GameTree& g, const BehaviorProfile<T>& b, InfosetId h) {
  T total = value_cast<T>(Rat(0));
  for (NodeId v : g.infoset(h).members) total = total + reach_probability(g, b, v);
  return total;
}

namespace detail {

template <typename T>
T subtree_expectation(const GameTree& g, const BehaviorProfile<T>& b,
                      PlayerId player, NodeId v) {
  const Node& n = g.node(v);
  switch (n.kind) {
    case NodeKind::kLeaf:
      return value_cast<T>(n.payoffs[static_cast<size_t>(player)]);
    case NodeKind::kChance: {
      T acc = value_cast<T>(Rat(0));
      for (size_t i = 0; i < n.children.size(); ++i)
        acc = acc + value_cast<T>(n.chance_probs[i]) *
                        subtree_expectation(g, b, player, n.children[i]);
      return acc;
    }
    case NodeKind::kDecision: {
      T acc = value_cast<T>(Rat(0));
      for (size_t i = 0; i < n.children.size(); ++i)
        acc = acc + b.at(n.infoset, static_cast<int>(i)) *
                        subtree_expectation(g, b, player, n.children[i]);
      return acc;
    }
  }
  return value_cast<T>(Rat(0));
}

}  // namespace detail

/// U_i(b), the expected payoff of `player` under the full profile b.
template <typename T>
T expected_payoff(const GameTree& g, const BehaviorProfile<T>& b,
                  PlayerId player) {
  return detail::subtree_expectation(g, b, player, g.root);
}

/// U_ih(b): expected payoff conditional on reaching h. Requires rho_b(h) > 0.
template <typename T>
T conditional_payoff(const GameTree& g, const BehaviorProfile<T>& b,
                     PlayerId player, InfosetId h) {
  T total = infoset_reach(g, b, h);
  if (!(total > T(0)))
    throw ConditionalOnNullSet("conditional payoff at unreached " +
                               detail::infoset_label(g, h));
  T acc = value_cast<T>(Rat(0));
  for (NodeId v : g.infoset(h).members)
    acc = acc + reach_probability(g, b, v) *
                    detail::subtree_expectation(g, b, player, v);
  return acc / total;
}

/// rho_{b_i}(h): the owner's own realization weight of infoset h, the
/// product of the owner's behavior probabilities along the (unique) own
/// history; 1 for a first-move infoset.
template <typename T>
T own_realization_weight(const GameTree& g, const BehaviorProfile<T>& b,
                         InfosetId h) {
  T p = value_cast<T>(Rat(1));
  for (auto [h2, a] : own_history(g, h)) p = p * b.at(h2, a);
  return p;
}

/// rho_{b_i}(c) = rho_{b_i}(h) * b_ih(c).
template <typename T>
T own_realization_weight(const GameTree& g, const BehaviorProfile<T>& b,
                         InfosetId h, int action) {
  return own_realization_weight(g, b, h) * b.at(h, action);
}

/// b with h's owner overridden: pure on `action` at h itself, following the
/// continuation at every infoset weakly following h, unchanged elsewhere.
template <typename T>
BehaviorProfile<T> override_profile(const GameTree& g,
                                    const BehaviorProfile<T>& b, InfosetId h,
                                    const BehaviorProfile<T>& continuation,
                                    int action) {
  if (action < 0 || action >= g.num_actions(h))
    throw ActionNotInInfoset("action index " + std::to_string(action) +
                             " not in " + detail::infoset_label(g, h));
  PlayerId owner = g.infoset(h).owner;
  BehaviorProfile<T> out = b;
  for (size_t h2 = 0; h2 < g.infosets.size(); ++h2) {
    if (g.infosets[h2].owner != owner) continue;
    InfosetId hid = static_cast<InfosetId>(h2);
    if (hid == h) {
      for (size_t a = 0; a < out.local[h2].size(); ++a)
        out.local[h2][a] =
            value_cast<T>(Rat(static_cast<int>(a) == action ? 1 : 0));
    } else if (weakly_follows(g, hid, h)) {
      out.local[h2] = continuation.local[h2];
    }
  }
  return out;
}

namespace detail {

/// Best-response machinery shared by the conditional valuations and the Nash
/// deviation check: maximizes the owner's expected payoff over pure
/// continuations, with all other players and chance fixed to b. Works on the
/// owner's sequence forest, so choices are coordinated across nodes of the
/// same infoset.
template <typename T>
class OwnBestResponse {
 public:
  OwnBestResponse(const GameTree& g, const BehaviorProfile<T>& b,
                  PlayerId owner)
      : g_(g), b_(b), owner_(owner) {
    seq_terminal_.push_back(value_cast<T>(Rat(0)));  // sequence 0 = root
    seq_children_.emplace_back();
  }

  /// Accumulate the subtree below node v; `weight` multiplies chance and
  /// opponent probabilities only, and `seq` is the owner's current sequence.
  void walk(NodeId v, T weight, int seq) {
    const Node& n = g_.node(v);
    switch (n.kind) {
      case NodeKind::kLeaf:
        seq_terminal_[static_cast<size_t>(seq)] =
            seq_terminal_[static_cast<size_t>(seq)] +
            weight * value_cast<T>(n.payoffs[static_cast<size_t>(owner_)]);
        return;
      case NodeKind::kChance:
        for (size_t i = 0; i < n.children.size(); ++i)
          walk(n.children[i], weight * value_cast<T>(n.chance_probs[i]), seq);
        return;
      case NodeKind::kDecision: {
        if (g_.infoset(n.infoset).owner != owner_) {
          for (size_t i = 0; i < n.children.size(); ++i)
            walk(n.children[i],
                 weight * b_.at(n.infoset, static_cast<int>(i)), seq);
          return;
        }
        int base = own_infoset_base(n.infoset, seq);
        for (size_t i = 0; i < n.children.size(); ++i)
          walk(n.children[i], weight, base + static_cast<int>(i));
        return;
      }
    }
  }

  /// Max over pure continuations of the accumulated weighted payoff.
  T value() const {
    std::vector<char> done(seq_terminal_.size(), 0);
    std::vector<T> memo(seq_terminal_.size(), value_cast<T>(Rat(0)));
    return eval(0, done, memo);
  }

 private:
  // First action-sequence id of infoset h under parent sequence `seq`,
  // creating the infoset's sequences on first visit. Perfect recall
  // guarantees the parent sequence is the same on every visit.
  int own_infoset_base(InfosetId h, int seq) {
    auto [it, inserted] = infoset_base_.try_emplace(h, 0);
    if (inserted) {
      int base = static_cast<int>(seq_terminal_.size());
      it->second = base;
      int m = g_.num_actions(h);
      for (int a = 0; a < m; ++a) {
        seq_terminal_.push_back(value_cast<T>(Rat(0)));
        seq_children_.emplace_back();
      }
      seq_children_[static_cast<size_t>(seq)].push_back(h);
      infoset_parent_[h] = seq;
    } else {
      assert(infoset_parent_[h] == seq &&
             "perfect recall violated: infoset visited under two sequences");
    }
    return it->second;
  }

  T eval(int seq, std::vector<char>& done, std::vector<T>& memo) const {
    if (done[static_cast<size_t>(seq)]) return memo[static_cast<size_t>(seq)];
    T acc = seq_terminal_[static_cast<size_t>(seq)];
    for (InfosetId h : seq_children_[static_cast<size_t>(seq)]) {
      int base = infoset_base_.at(h);
      int m = g_.num_actions(h);
      T best = eval(base, done, memo);
      for (int a = 1; a < m; ++a) {
        T alt = eval(base + a, done, memo);
        if (alt > best) best = alt;
      }
      acc = acc + best;
    }
    done[static_cast<size_t>(seq)] = 1;
    memo[static_cast<size_t>(seq)] = acc;
    return acc;
  }

  const GameTree& g_;
  const BehaviorProfile<T>& b_;
  PlayerId owner_;
  std::vector<T> seq_terminal_;             // weighted payoff mass per sequence
  std::vector<std::vector<InfosetId>> seq_children_;
  std::map<InfosetId, int> infoset_base_;
  std::map<InfosetId, int> infoset_parent_;
};

}  // namespace detail

/// K_i^{h,c}(b): the best conditional payoff at h when committing to the
/// c-th action at h and optimizing all of the owner's later play, everyone
/// else fixed to b. Beliefs over h's members are proportional to chance and
/// opponent reach weights (the owner's own weight is constant across h by
/// perfect recall and cancels).
template <typename T>
T k_value(const GameTree& g, const BehaviorProfile<T>& b, InfosetId h,
          int action) {
  if (!is_fully_mixed(g, b))
    throw NotFullyMixed("conditional valuation needs a fully mixed profile");
  if (action < 0 || action >= g.num_actions(h))
    throw ActionNotInInfoset("action index " + std::to_string(action) +
                             " not in " + detail::infoset_label(g, h));
  const InfoSet& s = g.infoset(h);
  std::vector<T> co;
  co.reserve(s.members.size());
  T total = value_cast<T>(Rat(0));
  for (NodeId v : s.members) {
    T w = value_cast<T>(Rat(1));
    for (auto [u, a] : root_path(g, v)) {
      const Node& n = g.node(u);
      if (n.kind == NodeKind::kChance)
        w = w * value_cast<T>(n.chance_probs[static_cast<size_t>(a)]);
      else if (n.kind == NodeKind::kDecision &&
               g.infoset(n.infoset).owner != s.owner)
        w = w * b.at(n.infoset, a);
    }
    co.push_back(w);
    total = total + w;
  }
  if (!(total > T(0)))
    throw ConditionalOnNullSet("valuation at chance-unreachable " +
                               detail::infoset_label(g, h));

  detail::OwnBestResponse<T> br(g, b, s.owner);
  for (size_t i = 0; i < s.members.size(); ++i) {
    NodeId v = s.members[i];
    // Commit to `action` at h itself; the walk starts below that edge.
    br.walk(g.node(v).children[static_cast<size_t>(action)], co[i], 0);
  }
  return br.value() / total;
}

/// Max over the player's pure strategies b'_i of U_i(b / b'_i).
template <typename T>
T best_response_value(const GameTree& g, const BehaviorProfile<T>& b,
                      PlayerId player) {
  detail::OwnBestResponse<T> br(g, b, player);
  br.walk(g.root, value_cast<T>(Rat(1)), 0);
  return br.value();
}

}  // namespace qpe
