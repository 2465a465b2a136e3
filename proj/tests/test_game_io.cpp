#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "game_testutil.hpp"
#include "helpers.hpp"
#include "qpe/game_io.hpp"

using namespace qpe;
using qpe::testutil::Rng;

TEST_CASE("minimal game parses") {
  ParsedGame pg = parse_game("(game :players 1 (leaf (3)))");
  CHECK(pg.game.nodes.size() == 1);
  CHECK(pg.game.node(pg.game.root).payoffs[0] == 3);
  CHECK(pg.doc.version == 1);
}

TEST_CASE("decimal probabilities are rejected with a location") {
  const char* text =
      "(game :players 1\n  (chance (h 0.5 (leaf (0))) (t 1/2 (leaf (1)))))";
  try {
    parse_game(text);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 1);
    CHECK(std::string(e.what()).find("rational") != std::string::npos);
  }
}

TEST_CASE("grammar errors carry locations") {
  try {
    parse_game("(game :players 2 (leaf (1)))");  // payoff arity wrong
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(parse_game("(game :players 1 (decide))"), SyntaxError);
  CHECK_THROWS_AS(parse_game(""), SyntaxError);
  CHECK_THROWS_AS(parse_game("(game (leaf (1)))"), SyntaxError);
}

TEST_CASE("decision children must match the declared actions") {
  const char* swapped =
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (b (leaf (0))) (a (leaf (1)))))";
  CHECK_THROWS_AS(parse_game(swapped), SyntaxError);
  const char* missing =
      "(game :players 1 (decision :player 1 :infoset A :actions (a b)"
      " (a (leaf (0)))))";
  CHECK_THROWS_AS(parse_game(missing), SyntaxError);
}

TEST_CASE("serialize then parse is the identity on random games") {
  Rng rng(8891001);
  testutil::GameGenConfig cfg;
  for (int trial = 0; trial < 15; ++trial) {
    GameTree g = testutil::random_game(rng, cfg);
    std::string text = serialize(g);
    ParsedGame pg = parse_game(text);
    CHECK(serialize(pg.game) == text);  // idempotent canonical form
    CHECK(pg.game.nodes.size() == g.nodes.size());
    CHECK(pg.game.infosets.size() == g.infosets.size());
  }
}

TEST_CASE("comments and chance ids round-trip") {
  const char* text =
      "; a tiny game\n"
      "(game :version 1 :players 1\n"
      "  (chance :id start\n"
      "    (h 1/2 (leaf (1)))\n"
      "    (t 1/2 (leaf (0)))))";
  ParsedGame pg = parse_game(text);
  CHECK(pg.game.node(pg.game.root).name == "start");
  std::string canon = serialize(pg.game, pg.doc);
  CHECK(parse_game(canon).game.node(0).name == "start");
  CHECK(serialize(parse_game(canon).game, pg.doc) == canon);
}

TEST_CASE("corpus files round-trip through the canonical form") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator("games")) {
    if (entry.path().extension() != ".qpef") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    ParsedGame pg = parse_game(ss.str());
    std::string canon = serialize(pg.game, pg.doc);
    ParsedGame again = parse_game(canon);
    CHECK(serialize(again.game, again.doc) == canon);
    ++seen;
  }
  CHECK(seen >= 14);
}

TEST_CASE("canonical game form matches the golden bytes") {
  std::ifstream in("games/matching_pennies.qpef", std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  ParsedGame pg = parse_game(ss.str());
  std::ifstream golden("tests/golden/matching_pennies.canonical.qpef",
                       std::ios::binary);
  std::ostringstream gs;
  gs << golden.rdbuf();
  CHECK(serialize(pg.game, pg.doc) == gs.str());
}

TEST_CASE("validation errors carry source locations") {
  const char* bad =
      "(game :players 1\n"
      "  (chance :id flip\n"
      "    (h 1/2 (leaf (0)))\n"
      "    (t 1/3 (leaf (1)))))";
  try {
    parse_game(bad);
    FAIL("expected BadChanceDistribution");
  } catch (const BadChanceDistribution& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("profiles parse against a game") {
  GameTree g = parse_game(
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b)"
      "  (a (decision :player 2 :infoset X :actions (x y)"
      "   (x (leaf (1 -1))) (y (leaf (-1 1)))))"
      "  (b (decision :player 2 :infoset X :actions (x y)"
      "   (x (leaf (-1 1))) (y (leaf (1 -1)))))))").game;
  auto b = parse_profile(
      "(profile (strategy :player 1 :infoset A (a 1/2) (b 1/2))"
      " (strategy :player 2 :infoset X (x 1/3) (y 2/3)))", g);
  CHECK(b.at(0, 0) == make_rat(1, 2));
  CHECK(b.at(1, 1) == make_rat(2, 3));

  CHECK_THROWS_AS(parse_profile(
      "(profile (strategy :player 1 :infoset A (a 1/2) (b 1/3))"
      " (strategy :player 2 :infoset X (x 1/3) (y 2/3)))", g),
      SyntaxError);  // does not sum to one
  CHECK_THROWS_AS(parse_profile(
      "(profile (strategy :player 1 :infoset A (a 1/2) (b 1/2)))", g),
      SyntaxError);  // player 2 uncovered

  std::string text = serialize_profile(g, b);
  auto b2 = parse_profile(text, g);
  CHECK(b2.local == b.local);
}
