#include <catch2/catch_amalgamated.hpp>

#include "game_testutil.hpp"
#include "helpers.hpp"
#include "qpe/game_io.hpp"
#include "qpe/sequence_form.hpp"

using namespace qpe;
using qpe::testutil::Rng;

namespace {

const char* kPennies =
    "(game :players 2"
    " (decision :player 1 :infoset A :actions (h t)"
    "  (h (decision :player 2 :infoset X :actions (h t)"
    "   (h (leaf (1 -1))) (t (leaf (-1 1)))))"
    "  (t (decision :player 2 :infoset X :actions (h t)"
    "   (h (leaf (-1 1))) (t (leaf (1 -1)))))))";

}  // namespace

TEST_CASE("sequence counts") {
  // Two sequential infosets of two actions each: 1 + 2 + 2 sequences.
  GameTree g = parse_game(
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b)"
      "  (a (decision :player 1 :infoset B :actions (c d)"
      "   (c (leaf (0 0))) (d (leaf (1 0)))))"
      "  (b (leaf (2 0)))))").game;
  SequenceIndex s1 = build_sequences(g, 0);
  CHECK(s1.num_sequences == 5);
  // The player who never moves has only the empty sequence.
  SequenceIndex s2 = build_sequences(g, 1);
  CHECK(s2.num_sequences == 1);

  GameTree pennies = parse_game(kPennies).game;
  CHECK(build_sequences(pennies, 0).num_sequences == 3);
  CHECK(build_sequences(pennies, 1).num_sequences == 3);
}

TEST_CASE("sequence offsets follow the own history") {
  GameTree g = parse_game(
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b c)"
      "  (a (decision :player 1 :infoset B :actions (x y)"
      "   (x (leaf (0 0))) (y (leaf (1 0)))))"
      "  (b (leaf (2 0)))"
      "  (c (leaf (3 0)))))").game;
  SequenceIndex s = build_sequences(g, 0);
  CHECK(s.k_offset[0] == 0);
  CHECK(s.k_offset[1] == 3);  // after the three-action root infoset
  CHECK(s.parent_seq[1] == s.seq_of(0, 0));
}

TEST_CASE("payoff matrices on matching pennies") {
  GameTree g = parse_game(kPennies).game;
  SequenceIndex s1 = build_sequences(g, 0), s2 = build_sequences(g, 1);
  PayoffMatrices pm = payoff_matrices(g, s1, s2);
  // Four action-pair entries, all +-1 for player 1.
  CHECK(pm.a.size() == 4);
  CHECK(pm.a.at({s1.seq_of(0, 0), s2.seq_of(1, 0)}) == 1);
  CHECK(pm.a.at({s1.seq_of(0, 0), s2.seq_of(1, 1)}) == -1);
  CHECK(pm.b.at({s1.seq_of(0, 0), s2.seq_of(1, 0)}) == -1);
}

TEST_CASE("chance weights scale payoff entries") {
  GameTree g = parse_game(
      "(game :players 2 (chance"
      " (l 1/3 (leaf (6 0)))"
      " (r 2/3 (decision :player 1 :infoset A :actions (a b)"
      "  (a (leaf (0 0))) (b (leaf (3 3)))))))").game;
  SequenceIndex s1 = build_sequences(g, 0), s2 = build_sequences(g, 1);
  PayoffMatrices pm = payoff_matrices(g, s1, s2);
  CHECK(pm.a.at({0, 0}) == 2);  // 6 * 1/3 at the empty-sequence pair
  CHECK(pm.a.at({s1.seq_of(0, 1), 0}) == 2);  // 3 * 2/3
}

TEST_CASE("bilinear identity against the tree evaluation") {
  Rng rng(3131301);
  testutil::GameGenConfig cfg;
  cfg.num_players = 2;
  for (int trial = 0; trial < 10; ++trial) {
    GameTree g = testutil::random_game(rng, cfg);
    SequenceIndex s1 = build_sequences(g, 0), s2 = build_sequences(g, 1);
    PayoffMatrices pm = payoff_matrices(g, s1, s2);
    for (int p = 0; p < 20; ++p) {
      auto b = testutil::random_mixed_profile(rng, g);
      auto x = behavior_to_realization(g, s1, b);
      auto y = behavior_to_realization(g, s2, b);
      Rat u1(0), u2(0);
      for (const auto& [key, val] : pm.a)
        u1 += val * x[static_cast<size_t>(key.first)] * y[static_cast<size_t>(key.second)];
      for (const auto& [key, val] : pm.b)
        u2 += val * x[static_cast<size_t>(key.first)] * y[static_cast<size_t>(key.second)];
      CHECK(u1 == expected_payoff(g, b, 0));
      CHECK(u2 == expected_payoff(g, b, 1));
    }
  }
}

TEST_CASE("perturbed polytope blocks") {
  GameTree g = parse_game(
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b c)"
      "  (a (decision :player 1 :infoset B :actions (x y)"
      "   (x (leaf (0 0))) (y (leaf (1 0)))))"
      "  (b (leaf (2 0)))"
      "  (c (leaf (3 0)))))").game;
  PerturbedPolytope poly = perturbed_constraints(g, 0);
  REQUIRE(poly.blocks.size() == 2);
  // Root block: 3 actions, offset 0, mass = empty sequence variable.
  const ConstraintBlock& root = poly.blocks[0];
  CHECK(root.num_primary == 3);
  CHECK(root.rows.size() == 1 + 6);
  // Follower block: the binary infoset reduces to the box-plus-mass system
  // {x_x >= e^{k+1}, x_y >= e^{k+1}, x_x + x_y = parent} with k = 3.
  const ConstraintBlock& sub = poly.blocks[1];
  REQUIRE(sub.rows.size() == 3);
  CHECK(sub.rows[0].rel == Rel::kEq);
  CHECK(sub.rows[0].coeffs.back().first == poly.seq.seq_of(0, 0));
  CHECK(sub.rows[0].coeffs.back().second == -1);
  CHECK(sub.rows[1].rhs == EpsPoly::power(4));
  CHECK(sub.rows[2].rhs == EpsPoly::power(4));

  // Root pin fixes the empty sequence to one.
  CHECK(poly.root_pin.coeffs ==
        std::vector<std::pair<int, Rat>>{{0, Rat(1)}});
  CHECK(poly.root_pin.rhs == EpsPoly(Rat(1)));
}

TEST_CASE("feasible perturbed plans satisfy conservation exactly") {
  Rng rng(3131302);
  testutil::GameGenConfig cfg;
  cfg.num_players = 2;
  for (int trial = 0; trial < 8; ++trial) {
    GameTree g = testutil::random_game(rng, cfg);
    for (PlayerId p = 0; p < 2; ++p) {
      PerturbedPolytope poly = perturbed_constraints(g, p);
      // A fully mixed behavior plan is feasible for the unperturbed
      // conservation rows; check it satisfies every equality row (the
      // permutahedron mass rows subsume conservation).
      auto b = testutil::random_mixed_profile(rng, g);
      auto x = behavior_to_realization(g, poly.seq, b);
      for (InfosetId h : poly.seq.infosets) {
        Rat sum(0);
        for (int a = 0; a < g.num_actions(h); ++a)
          sum += x[static_cast<size_t>(poly.seq.seq_of(h, a))];
        CHECK(sum == x[static_cast<size_t>(poly.seq.parent_seq[static_cast<size_t>(h)])]);
      }
    }
  }
}

TEST_CASE("plan and behavior conversions round-trip") {
  GameTree g = parse_game(
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (a (leaf (1))) (b (leaf (0)))))").game;
  SequenceIndex s = build_sequences(g, 0);
  BehaviorProfile<Rat> b;
  b.local = {{make_rat(2, 3), make_rat(1, 3)}};
  auto x = behavior_to_realization(g, s, b);
  CHECK(x == std::vector<Rat>{Rat(1), make_rat(2, 3), make_rat(1, 3)});
  auto back = realization_to_behavior(g, s, x);
  CHECK(back[0] == b.local[0]);

  // Symbolic plans divide through: (1, 1-e, e) -> (1-e, e).
  std::vector<EpsRat> sx{EpsRat(1),
                         EpsRat(EpsPoly::from_coeffs({Rat(1), Rat(-1)})),
                         EpsRat(EpsPoly::power(1))};
  auto sb = realization_to_behavior(g, s, sx);
  CHECK(sb[0][0] == EpsRat(EpsPoly::from_coeffs({Rat(1), Rat(-1)})));
  CHECK(sb[0][1] == EpsRat(EpsPoly::power(1)));

  // Zero parent weight is an error.
  std::vector<Rat> zero{Rat(1), Rat(0), Rat(0)};
  GameTree g2 = parse_game(
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (a (decision :player 1 :infoset B :actions (c d)"
      "  (c (leaf (0))) (d (leaf (1)))))"
      " (b (leaf (2)))))").game;
  SequenceIndex s2 = build_sequences(g2, 0);
  std::vector<Rat> plan{Rat(1), Rat(0), Rat(1), Rat(0), Rat(0)};
  CHECK_THROWS_AS(realization_to_behavior(g2, s2, plan), ZeroParentWeight);

  // Round trip on random games, fully mixed.
  Rng rng(3131303);
  testutil::GameGenConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    GameTree rg = testutil::random_game(rng, cfg);
    auto rb = testutil::random_mixed_profile(rng, rg);
    for (PlayerId p = 0; p < rg.num_players; ++p) {
      SequenceIndex si = build_sequences(rg, p);
      auto plan2 = behavior_to_realization(rg, si, rb);
      auto back2 = realization_to_behavior(rg, si, plan2);
      for (InfosetId h : si.infosets)
        CHECK(back2[static_cast<size_t>(h)] == rb.local[static_cast<size_t>(h)]);
    }
  }
}

TEST_CASE("wrong player count is rejected") {
  GameTree g = parse_game("(game :players 1 (leaf (1)))").game;
  SequenceIndex s = build_sequences(g, 0);
  CHECK_THROWS_AS(payoff_matrices(g, s, s), WrongPlayerCount);
}
