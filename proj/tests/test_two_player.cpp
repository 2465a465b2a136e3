#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qpe/game_io.hpp"
#include "qpe/two_player.hpp"

using namespace qpe;

namespace {

const char* kPennies =
    "(game :players 2"
    " (decision :player 1 :infoset A :actions (h t)"
    "  (h (decision :player 2 :infoset X :actions (h t)"
    "   (h (leaf (1 -1))) (t (leaf (-1 1)))))"
    "  (t (decision :player 2 :infoset X :actions (h t)"
    "   (h (leaf (-1 1))) (t (leaf (1 -1)))))))";

// 3x3 bimatrix with a unique proper equilibrium at the first action pair;
// the second pair is a perfect equilibrium that properness eliminates.
const char* kProper3x3 =
    "(game :players 2"
    " (decision :player 1 :infoset R :actions (r1 r2 r3)"
    "  (r1 (decision :player 2 :infoset C :actions (c1 c2 c3)"
    "   (c1 (leaf (1 1))) (c2 (leaf (0 0))) (c3 (leaf (-9 -9)))))"
    "  (r2 (decision :player 2 :infoset C :actions (c1 c2 c3)"
    "   (c1 (leaf (0 0))) (c2 (leaf (0 0))) (c3 (leaf (-7 -7)))))"
    "  (r3 (decision :player 2 :infoset C :actions (c1 c2 c3)"
    "   (c1 (leaf (-9 -9))) (c2 (leaf (-7 -7))) (c3 (leaf (-7 -7)))))))";

void check_verified(const GameTree& g, const SymbolicEquilibrium& eq) {
  for (Rat eps0 : {make_rat(1, 100), make_rat(1, 10000)}) {
    auto prof = eval_profile(eq.symbolic, eps0);
    auto rep = verify_eps_quasi_proper(g, prof, eps0, 2);
    CHECK(rep.pass);
  }
  CHECK(verify_nash(g, eq.limit).pass);
}

}  // namespace

TEST_CASE("matching pennies by complementary pivoting") {
  GameTree g = parse_game(kPennies).game;
  TwoPlayerSolution sol = solve_two_player(g);
  for (size_t h = 0; h < g.infosets.size(); ++h) {
    EpsRat total(0);
    for (const auto& p : sol.equilibrium.symbolic.local[h]) total += p;
    CHECK(total == EpsRat(1));  // identically in eps
    for (const auto& p : sol.equilibrium.limit.local[h])
      CHECK(p == make_rat(1, 2));
  }
  // Symmetric under the action swap.
  CHECK(sol.equilibrium.symbolic.local[0][0] == sol.equilibrium.symbolic.local[0][1]);
  check_verified(g, sol.equilibrium);
}

TEST_CASE("unique proper equilibrium is selected") {
  GameTree g = parse_game(kProper3x3).game;
  TwoPlayerSolution sol = solve_two_player(g);
  CHECK(sol.equilibrium.limit.local[0] ==
        std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  CHECK(sol.equilibrium.limit.local[1] ==
        std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  check_verified(g, sol.equilibrium);
}

TEST_CASE("weakly dominated actions get limit probability zero") {
  const char* weakdom =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (T B)"
      "  (T (decision :player 2 :infoset X :actions (l r)"
      "   (l (leaf (1 1))) (r (leaf (1 1)))))"
      "  (B (decision :player 2 :infoset X :actions (l r)"
      "   (l (leaf (1 1))) (r (leaf (0 0)))))))";
  GameTree g = parse_game(weakdom).game;
  TwoPlayerSolution sol = solve_two_player(g);
  CHECK(sol.equilibrium.limit.local[0][1] == 0);  // B abandoned
  check_verified(g, sol.equilibrium);
}

TEST_CASE("own infosets below own actions carry offset floors") {
  const char* twostep =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b)"
      "  (a (decision :player 2 :infoset X :actions (x y)"
      "   (x (decision :player 1 :infoset B :actions (u v)"
      "    (u (leaf (3 0))) (v (leaf (0 3)))))"
      "   (y (leaf (2 2)))))"
      "  (b (leaf (1 4)))))";
  GameTree g = parse_game(twostep).game;
  TwoPlayerSolution sol = solve_two_player(g);
  check_verified(g, sol.equilibrium);
}

TEST_CASE("chance nodes flow through the pipeline") {
  const char* withchance =
      "(game :players 2 (chance"
      " (l 1/3 (decision :player 1 :infoset A :actions (a b)"
      "  (a (leaf (2 -1))) (b (leaf (0 1)))))"
      " (r 2/3 (decision :player 1 :infoset A :actions (a b)"
      "  (a (decision :player 2 :infoset X :actions (x y)"
      "   (x (leaf (1 2))) (y (leaf (4 0)))))"
      "  (b (leaf (0 5)))))))";
  GameTree g = parse_game(withchance).game;
  TwoPlayerSolution sol = solve_two_player(g);
  check_verified(g, sol.equilibrium);
}

TEST_CASE("assembled dimension matches the hand count") {
  // Player 1: root infoset (2 actions) and a follower (2 actions): 5
  // sequences, facet blocks of sizes (1 eq + 2 ge) each, plus the root pin:
  // vars 5, eq 3, ge 4. Player 2: one binary infoset: vars 3, eq 2, ge 2.
  const char* twostep =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (a b)"
      "  (a (decision :player 2 :infoset X :actions (x y)"
      "   (x (decision :player 1 :infoset B :actions (u v)"
      "    (u (leaf (3 0))) (v (leaf (0 3)))))"
      "   (y (leaf (2 2)))))"
      "  (b (leaf (1 4)))))";
  GameTree g = parse_game(twostep).game;
  PerturbedPolytope p1 = perturbed_constraints(g, 0);
  PerturbedPolytope p2 = perturbed_constraints(g, 1);
  SequenceIndex s1 = p1.seq, s2 = p2.seq;
  TwoPlayerAssembly asmb = assemble_lcp(g, std::move(p1), std::move(p2),
                                        payoff_matrices(g, s1, s2));
  int expected = (5 + 4 + 2 * 3) + (3 + 2 + 2 * 2);
  CHECK(asmb.lcp.dim() == expected);
}

TEST_CASE("single-point polytopes solve trivially") {
  // Both players have a single action each: the plans are forced.
  const char* forced =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (only)"
      "  (only (decision :player 2 :infoset X :actions (sole)"
      "   (sole (leaf (7 -7)))))))";
  GameTree g = parse_game(forced).game;
  TwoPlayerSolution sol = solve_two_player(g);
  CHECK(sol.equilibrium.limit.local[0][0] == 1);
  CHECK(sol.equilibrium.limit.local[1][0] == 1);
}

TEST_CASE("network blocks solve through both pipelines") {
  // Forcing every block through the comparator-network formulation must not
  // change the verified outcome.
  TwoPlayerOptions opt;
  opt.facet_threshold = 1;
  GameTree g = parse_game(kProper3x3).game;
  TwoPlayerSolution sol = solve_two_player(g, opt);
  CHECK(sol.equilibrium.limit.local[0] ==
        std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  check_verified(g, sol.equilibrium);

  GameTree zs = parse_game(kPennies).game;
  ZeroSumSolution z = solve_zero_sum(zs, opt);
  CHECK(z.value.limit_at_zero() == 0);
  check_verified(zs, z.equilibrium);
}

TEST_CASE("zero-sum value on matching pennies") {
  GameTree g = parse_game(kPennies).game;
  ZeroSumSolution zs = solve_zero_sum(g);
  CHECK(zs.value.limit_at_zero() == 0);
  for (size_t h = 0; h < g.infosets.size(); ++h)
    for (const auto& p : zs.equilibrium.limit.local[h])
      CHECK(p == make_rat(1, 2));
  check_verified(g, zs.equilibrium);
}

TEST_CASE("zero-sum value of a forced game") {
  const char* forced =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (only)"
      "  (only (decision :player 2 :infoset X :actions (sole)"
      "   (sole (leaf (7 -7)))))))";
  GameTree g = parse_game(forced).game;
  ZeroSumSolution zs = solve_zero_sum(g);
  CHECK(zs.value.limit_at_zero() == 7);
}

TEST_CASE("zero-sum 2x2 with known minimax value") {
  // Rows (2,0) / (0,1): the mixed value is 2/3.
  const char* g22 =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (r1 r2)"
      "  (r1 (decision :player 2 :infoset X :actions (c1 c2)"
      "   (c1 (leaf (2 -2))) (c2 (leaf (0 0)))))"
      "  (r2 (decision :player 2 :infoset X :actions (c1 c2)"
      "   (c1 (leaf (0 0))) (c2 (leaf (1 -1)))))))";
  GameTree g = parse_game(g22).game;
  ZeroSumSolution zs = solve_zero_sum(g);
  CHECK(zs.value.limit_at_zero() == make_rat(2, 3));
  check_verified(g, zs.equilibrium);
}

TEST_CASE("zero-sum perfect information matches backward induction") {
  const char* pi =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (L R)"
      "  (L (decision :player 2 :infoset XL :actions (l r)"
      "   (l (leaf (3 -3))) (r (leaf (-1 1)))))"
      "  (R (decision :player 2 :infoset XR :actions (l r)"
      "   (l (leaf (2 -2))) (r (leaf (5 -5)))))))";
  GameTree g = parse_game(pi).game;
  ZeroSumSolution zs = solve_zero_sum(g);
  // Backward induction: L -> min(3, -1) = -1; R -> min(2, 5) = 2; max = 2.
  CHECK(zs.value.limit_at_zero() == 2);
  check_verified(g, zs.equilibrium);
}

TEST_CASE("general-sum games are rejected by the zero-sum path") {
  const char* notzs =
      "(game :players 2 (decision :player 1 :infoset A :actions (a b)"
      " (a (leaf (1 1))) (b (leaf (0 0)))))";
  GameTree g = parse_game(notzs).game;
  CHECK_THROWS_AS(solve_zero_sum(g), NotZeroSum);
}
