#include <catch2/catch_amalgamated.hpp>

#include "game_testutil.hpp"
#include "helpers.hpp"
#include "qpe/game.hpp"
#include "qpe/game_io.hpp"

using namespace qpe;
using qpe::testutil::Rng;

namespace {

GameTree load(const std::string& text) { return parse_game(text).game; }

// Single decision, two actions with leaf payoffs (3) and (1).
const char* kOneShot31 =
    "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
    " (a (leaf (3))) (b (leaf (1)))))";

// Root choice, R leads to a second own infoset with payoffs (0, 5).
const char* kTwoLevel =
    "(game :players 1 (decision :player 1 :infoset A :actions (L R)"
    " (L (leaf (1)))"
    " (R (decision :player 1 :infoset B :actions (x y)"
    "   (x (leaf (0))) (y (leaf (5)))))))";

BehaviorProfile<Rat> profile_of(const GameTree& g,
                                std::vector<std::vector<Rat>> rows) {
  BehaviorProfile<Rat> b;
  b.local = std::move(rows);
  REQUIRE(b.local.size() == g.infosets.size());
  return b;
}

}  // namespace

TEST_CASE("validate accepts a minimal game") {
  GameTree g = load(kOneShot31);
  CHECK(g.validated);
  CHECK(g.infosets.size() == 1);
  CHECK(g.infosets_of[0] == std::vector<InfosetId>{0});
}

TEST_CASE("validate rejects a bad chance distribution") {
  const char* text =
      "(game :players 1 (chance (h 1/2 (leaf (0))) (t 1/3 (leaf (1)))))";
  CHECK_THROWS_AS(load(text), BadChanceDistribution);
}

TEST_CASE("validate rejects imperfect recall") {
  // The player moves, then both outcomes land in one infoset of the same
  // player: members disagree on the own history.
  const char* text =
      "(game :players 1 (decision :player 1 :infoset A :actions (l r)"
      " (l (decision :player 1 :infoset B :actions (x y)"
      "   (x (leaf (0))) (y (leaf (0)))))"
      " (r (decision :player 1 :infoset B :actions (x y)"
      "   (x (leaf (0))) (y (leaf (0)))))))";
  CHECK_THROWS_AS(load(text), ImperfectRecall);
}

TEST_CASE("reach probabilities multiply along the root path") {
  GameTree g = load(
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (a (chance (h 1/2 (leaf (0))) (t 1/2 (leaf (2)))))"
      " (b (leaf (7)))))");
  auto b = profile_of(g, {{make_rat(2, 5), make_rat(3, 5)}});
  CHECK(reach_probability(g, b, g.root) == 1);
  // Leaf 0 sits below action a (prob 2/5) then chance h (prob 1/2).
  NodeId chance = g.node(g.root).children[0];
  NodeId leaf0 = g.node(chance).children[0];
  CHECK(reach_probability(g, b, leaf0) == make_rat(1, 5));
}

TEST_CASE("expected payoff and conditional payoff") {
  GameTree coin = load(
      "(game :players 1 (chance (h 1/2 (leaf (0))) (t 1/2 (leaf (2)))))");
  BehaviorProfile<Rat> empty;
  empty.local.resize(coin.infosets.size());
  CHECK(expected_payoff(coin, empty, 0) == 1);

  GameTree single = load("(game :players 1 (leaf (4)))");
  BehaviorProfile<Rat> none;
  none.local.resize(0);
  CHECK(expected_payoff(single, none, 0) == 4);

  // Conditioning on an infoset reached with probability zero fails.
  GameTree g = load(
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (a (leaf (1)))"
      " (b (decision :player 1 :infoset B :actions (x y)"
      "   (x (leaf (0))) (y (leaf (5)))))))");
  auto b = profile_of(g, {{Rat(1), Rat(0)}, {make_rat(1, 2), make_rat(1, 2)}});
  CHECK_THROWS_AS(conditional_payoff(g, b, 0, 1), ConditionalOnNullSet);
}

TEST_CASE("own realization weights") {
  GameTree g = load(kTwoLevel);
  auto b = profile_of(g, {{make_rat(1, 3), make_rat(2, 3)},
                          {make_rat(1, 2), make_rat(1, 2)}});
  CHECK(own_realization_weight(g, b, 0) == 1);            // first infoset
  CHECK(own_realization_weight(g, b, 0, 0) == make_rat(1, 3));
  CHECK(own_realization_weight(g, b, 1) == make_rat(2, 3));
  CHECK(own_realization_weight(g, b, 1, 0) == make_rat(1, 3));  // 2/3 * 1/2
}

TEST_CASE("conditional valuations on one-shot games") {
  GameTree g = load(kOneShot31);
  auto b = profile_of(g, {{make_rat(1, 2), make_rat(1, 2)}});
  CHECK(k_value(g, b, 0, 0) == 3);
  CHECK(k_value(g, b, 0, 1) == 1);

  auto pointmass = profile_of(g, {{Rat(1), Rat(0)}});
  CHECK_THROWS_AS(k_value(g, pointmass, 0, 0), NotFullyMixed);
}

TEST_CASE("valuation maximizes over own future play") {
  GameTree g = load(kTwoLevel);
  // Whatever the current local strategy at B, committing to R is worth 5.
  for (int num : {1, 5, 9}) {
    auto b = profile_of(g, {{make_rat(1, 2), make_rat(1, 2)},
                            {make_rat(num, 10), make_rat(10 - num, 10)}});
    CHECK(k_value(g, b, 0, 1) == 5);
    CHECK(k_value(g, b, 0, 0) == 1);
  }
}

TEST_CASE("override profile") {
  GameTree g = load(kTwoLevel);
  auto b = profile_of(g, {{make_rat(1, 3), make_rat(2, 3)},
                          {make_rat(1, 4), make_rat(3, 4)}});
  BehaviorProfile<Rat> cont = b;
  cont.local[1] = {Rat(1), Rat(0)};

  SECTION("pure action at the infoset itself") {
    auto out = override_profile(g, b, 0, cont, 1);
    CHECK(out.at(0, 0) == 0);
    CHECK(out.at(0, 1) == 1);
    CHECK(out.at(1, 0) == 1);  // follower replaced
  }
  SECTION("identity continuation changes only h") {
    auto out = override_profile(g, b, 0, b, 0);
    CHECK(out.at(0, 0) == 1);
    CHECK(out.local[1] == b.local[1]);
  }
  SECTION("bad action index") {
    CHECK_THROWS_AS(override_profile(g, b, 0, cont, 7), ActionNotInInfoset);
  }
  SECTION("unrelated infosets untouched") {
    auto out = override_profile(g, b, 1, cont, 0);
    CHECK(out.local[0] == b.local[0]);  // A does not follow B
    CHECK(out.at(1, 0) == 1);
  }
}

TEST_CASE("reach probabilities sum to one over leaves") {
  Rng rng(4202501);
  testutil::GameGenConfig cfg;
  for (int trial = 0; trial < 25; ++trial) {
    GameTree g = testutil::random_game(rng, cfg);
    auto b = testutil::random_mixed_profile(rng, g);
    Rat total(0);
    for (size_t v = 0; v < g.nodes.size(); ++v)
      if (g.nodes[v].kind == NodeKind::kLeaf)
        total += reach_probability(g, b, static_cast<NodeId>(v));
    CHECK(total == 1);
    // rho_b(h) matches the member sum and factors exactly.
    for (size_t h = 0; h < g.infosets.size(); ++h) {
      Rat sum(0);
      for (NodeId v : g.infoset(static_cast<InfosetId>(h)).members)
        sum += reach_probability(g, b, v);
      CHECK(sum == infoset_reach(g, b, static_cast<InfosetId>(h)));
    }
  }
}

TEST_CASE("reach factors into chance, own and others") {
  Rng rng(4202502);
  testutil::GameGenConfig cfg;
  GameTree g = testutil::random_game(rng, cfg);
  auto b = testutil::random_mixed_profile(rng, g);
  for (size_t v = 0; v < g.nodes.size(); ++v) {
    if (g.nodes[v].kind != NodeKind::kLeaf) continue;
    for (int p = 0; p < g.num_players; ++p) {
      Rat chance(1), own(1), others(1);
      for (auto [u, a] : root_path(g, static_cast<NodeId>(v))) {
        const Node& n = g.node(u);
        if (n.kind == NodeKind::kChance)
          chance *= n.chance_probs[static_cast<size_t>(a)];
        else if (g.infoset(n.infoset).owner == p)
          own *= b.at(n.infoset, a);
        else
          others *= b.at(n.infoset, a);
      }
      CHECK(chance * own * others ==
            reach_probability(g, b, static_cast<NodeId>(v)));
    }
  }
}

TEST_CASE("valuation equals brute force over pure continuations") {
  Rng rng(4202503);
  testutil::GameGenConfig cfg;
  cfg.max_depth = 4;
  cfg.max_nodes = 40;
  int games = 0;
  while (games < 20) {
    GameTree g = testutil::random_game(rng, cfg);
    bool small = true;
    for (int p = 0; p < g.num_players; ++p)
      if (testutil::count_owner_decision_nodes(g, p) > 12) small = false;
    if (!small) continue;
    ++games;
    auto b = testutil::random_mixed_profile(rng, g);
    for (size_t h = 0; h < g.infosets.size(); ++h) {
      for (int a = 0; a < g.num_actions(static_cast<InfosetId>(h)); ++a) {
        Rat dp = k_value(g, b, static_cast<InfosetId>(h), a);
        Rat brute =
            testutil::k_value_bruteforce(g, b, static_cast<InfosetId>(h), a);
        REQUIRE(dp == brute);
      }
    }
  }
}

TEST_CASE("valuation dominates the current continuation") {
  Rng rng(4202504);
  testutil::GameGenConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    GameTree g = testutil::random_game(rng, cfg);
    auto b = testutil::random_mixed_profile(rng, g);
    for (size_t h = 0; h < g.infosets.size(); ++h) {
      InfosetId hid = static_cast<InfosetId>(h);
      PlayerId owner = g.infoset(hid).owner;
      for (int a = 0; a < g.num_actions(hid); ++a) {
        BehaviorProfile<Rat> mod = override_profile(g, b, hid, b, a);
        Rat current = conditional_payoff(g, mod, owner, hid);
        CHECK(k_value(g, b, hid, a) >= current);
      }
    }
  }
}
