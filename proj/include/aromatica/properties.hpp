#pragma once

// Exhaustive identity checks over small operations: operadic associativity
// and equivariance, the pre-Lie and right-module identities, the tadpole
// cocycle identity, Jacobi, and the cyclic-brace symmetrization.

#include <string>
#include <vector>

namespace aromatica {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  bool pass = false;
  std::string detail;  // first counterexample when failing
};

PropertyResult check_prelie_identity();
PropertyResult check_module_identity();
PropertyResult check_jacobi();
PropertyResult check_tadpole_cocycle();
PropertyResult check_cyclic_brace_symmetrization(int max_n = 5);
PropertyResult check_sequential_associativity();
PropertyResult check_parallel_associativity();
PropertyResult check_equivariance();

std::vector<PropertyResult> run_property_checks();

}  // namespace aromatica
