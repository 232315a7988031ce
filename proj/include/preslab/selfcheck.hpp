#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace preslab {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;   // largest violation observed (0 when structural)
  double limit = 0.0;   // allowance the suite checked against
  std::string detail;
};

// Randomized invariant suites over the registered benchmark systems:
// metric axioms, basis normalization, histogram mass, cocycle determinant and
// submultiplicativity, weight normalization, pressure shift/Lipschitz/
// monotonicity/convexity, constrained-mass monotonicity, oracle consistency.
std::vector<SuiteResult> run_selfcheck(std::uint64_t seed);

}  // namespace preslab
