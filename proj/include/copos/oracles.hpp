#ifndef COPOS_ORACLES_HPP
#define COPOS_ORACLES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "copos/signomial.hpp"
#include "copos/sonc.hpp"

namespace copos {

// Independent closed-form and brute-force oracles, for tests and
// cross-validation. Exposed by the CLI only behind `dev-oracles`.

// Coefficients of c0 + c1 x1^2 + c2 x2^2 + c3 x1^2 x2^2 - c4 x1 x2.
struct SquareSupportCoeffs {
    double c0, c1, c2, c3, c4;
};

// The two nonnegative roots (t_minus, t_plus) of the eliminated quartic for
// the square support; t* equals t_plus.
std::pair<double, double> square_tstar(const SquareSupportCoeffs& c);

// Theta / d for a full-dimensional circuit.
double circuit_tstar(const CircuitPolynomial& circuit);

struct GridMinResult {
    double value = 0.0;
    std::vector<double> point;
};

// Log-uniform sampling over a positive box followed by Newton refinement of
// the best samples on the log-coordinate gradient.
GridMinResult grid_min(const Signomial& f, const std::vector<std::pair<double, double>>& box,
                       int samples, std::uint64_t seed = 0x5eed);

// Enumerates every covering of conv(a_plus) by interior-disjoint full
// simplices with vertices in a_plus (all triangulations included) and reports
// whether each one has a cell containing a_minus. Test oracle only;
// hard-capped at n <= 3 and #a_plus <= 8.
bool brute_force_nonseparable(const SignedSupport& support);

}  // namespace copos

#endif
