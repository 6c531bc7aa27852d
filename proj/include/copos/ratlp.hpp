#ifndef COPOS_RATLP_HPP
#define COPOS_RATLP_HPP

#include <vector>

#include "copos/rational.hpp"

namespace copos {

// Exact-rational linear programming in standard form:
//   minimize c^T x  subject to  A x = b,  x >= 0.
// Two-phase simplex with Bland's rule, so termination is guaranteed and the
// returned vertex is deterministic for a given problem.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
    std::vector<std::vector<Rational>> a;  // m x n
    std::vector<Rational> b;               // m
    std::vector<Rational> c;               // n
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational objective;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace copos

#endif
