#pragma once

#include <vector>

#include "ochoice/rational.hpp"

namespace ochoice {

// Exact-rational linear programs in equality form:
//   optimize c.x  subject to  A x = b, x >= 0.
// Two-phase dense simplex with Bland's smallest-index rule, so every pivot
// is exact and cycling is impossible. Scales only to desk-size problems.

enum class LpSense { Max, Min };

struct LpProblem {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LpSolution {
  bool feasible = false;
  Rational objective;
  std::vector<Rational> x;     // primal optimum
  std::vector<Rational> y;     // duals, one per original row (0 on redundant rows)
  std::vector<int> basis;      // optimal basis columns
};

// Throws Errc::Internal on an unbounded program (callers here only pose
// bounded ones) and after solving re-checks the certificate by substitution:
// A x = b, x >= 0, c.x = y.b, and y A - c signed for optimality.
LpSolution solve_lp(const LpProblem& problem, LpSense sense);

} // namespace ochoice
