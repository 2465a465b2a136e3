// Build a small game from text, solve it symbolically, and print the
// equilibrium with its eps -> 0 limit.

#include <iostream>

#include "qpe/game_io.hpp"
#include "qpe/two_player.hpp"

int main() {
  const char* text =
      "(game :players 2"
      " (decision :player 1 :infoset A :actions (up down)"
      "  (up (decision :player 2 :infoset X :actions (left right)"
      "   (left (leaf (2 1))) (right (leaf (0 0)))))"
      "  (down (decision :player 2 :infoset X :actions (left right)"
      "   (left (leaf (0 0))) (right (leaf (1 2)))))))";

  qpe::GameTree game = qpe::parse_game(text).game;
  qpe::TwoPlayerSolution sol = qpe::solve_two_player(game);

  for (size_t h = 0; h < game.infosets.size(); ++h) {
    const qpe::InfoSet& s = game.infosets[h];
    for (size_t a = 0; a < s.actions.size(); ++a) {
      const qpe::EpsRat& prob = sol.equilibrium.symbolic.local[h][a];
      std::cout << "player " << (s.owner + 1) << " " << s.name << " "
                << s.actions[a] << " = " << prob.str() << "  -> "
                << qpe::to_string(sol.equilibrium.limit.local[h][a]) << "\n";
    }
  }

  auto report = qpe::verify_nash(game, sol.equilibrium.limit);
  std::cout << "limit is a Nash equilibrium: " << (report.pass ? "yes" : "no")
            << "\n";
  return report.pass ? 0 : 1;
}
