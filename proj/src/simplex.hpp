#pragma once

#include <vector>

#include "rational.hpp"

namespace dofbc {

struct LinearProgram {
  // maximize c.x subject to A x <= b, x >= 0. Every b_i must be >= 0 so the
  // origin is a feasible starting basis.
  std::vector<Rational> c;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
};

struct SimplexSolution {
  Rational value;
  std::vector<Rational> x;
};

// Exact rational primal simplex with Bland's rule (anti-cycling). Throws
// DomainError on malformed input and InfeasibleError if the LP is unbounded.
SimplexSolution simplex_maximize(const LinearProgram& lp);

}  // namespace dofbc
