// Print the two realizations of the same perturbed block: the exponential
// facet description and the comparator-network extended formulation.

#include <iostream>

#include "qpe/permutahedron.hpp"

namespace {

void print_block(const qpe::ConstraintBlock& block) {
  for (const auto& row : block.rows) {
    bool first = true;
    for (const auto& [var, coeff] : row.coeffs) {
      std::cout << (first ? "" : " + ") << qpe::to_string(coeff) << "*x" << var;
      first = false;
    }
    std::cout << (row.rel == qpe::Rel::kEq ? " = " : " >= ") << row.rhs.str()
              << "\n";
  }
}

}  // namespace

int main() {
  const int m = 4, k = 1;
  qpe::PermSpec spec{qpe::Mass::of(qpe::EpsPoly(qpe::Rat(1))), k, m};
  std::vector<int> primary{0, 1, 2, 3};

  std::cout << "facet description (2^m - 2 subset bounds):\n";
  print_block(qpe::facet_system(spec, primary));

  std::cout << "\ncomparator-network formulation:\n";
  qpe::ComparatorNetwork net = qpe::batcher_network(m);
  std::cout << net.gates.size() << " gates on " << net.wires << " wires\n";
  int next_var = m;
  print_block(qpe::network_system(spec, net, primary, next_var));
  return 0;
}
