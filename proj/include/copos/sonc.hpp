#ifndef COPOS_SONC_HPP
#define COPOS_SONC_HPP

#include <optional>
#include <string>
#include <vector>

#include "copos/krawczyk.hpp"
#include "copos/lattice.hpp"
#include "copos/signomial.hpp"
#include "copos/tracker.hpp"

namespace copos {

// A circuit signomial: positive coefficients on affinely independent points,
// at most one negative term inside their hull. Coefficients are exact.
struct CircuitPolynomial {
    std::vector<LatticePoint> positive_points;
    std::vector<Rational> positive_coeffs;
    std::optional<std::pair<LatticePoint, Rational>> negative_point;  // (b, d) with d > 0
};

// Nonnegative solution of the simplex-combination system over Lambda(A+, D);
// the entries sum to one exactly.
struct DeltaSolution {
    std::vector<Rational> delta;
    std::vector<int> support_j;  // indices with delta > 0
};

struct SoncCertificate {
    std::vector<CircuitPolynomial> circuits;
    Signomial target;
    double residual = 0.0;                // max coefficient mismatch of the circuit sum
    std::vector<double> per_circuit_margin;  // theta - d per circuit (0 for pure-positive ones)
    std::vector<std::string> warnings;
    std::optional<double> t_star;
    std::optional<Interval> t_interval;
};

// Theta = prod (c_i / lambda_i)^(lambda_i), evaluated in log space.
double circuit_number(const CircuitPolynomial& circuit);

// True iff there is no negative term, or d <= Theta (1 + 1e-12).
bool is_circuit_copositive(const CircuitPolynomial& circuit);

// Splits a signomial whose positive support is affinely independent and which
// is singular at the all-ones point into one circuit per negative point.
std::vector<CircuitPolynomial> extended_circuit_decomposition(const Signomial& f);

// Exact phase-1 simplex (Bland's rule) for the delta system; `c_signed` holds
// signed rational coefficients in the support's canonical order and must make
// the all-ones point an exact singular zero.
DeltaSolution solve_delta(const SimplexFamily& family, const SignedSupport& support,
                          const std::vector<Rational>& c_signed);

struct SoncOptions {
    std::optional<HeightFunction> heights;  // default: uniform 1
    TrackerConfig tracker;
    bool force_near_boundary = false;  // emit a certificate despite an inconclusive verdict
};

SoncCertificate sonc_certificate(const Signomial& f, const SoncOptions& options = {});

struct VerifyReport {
    bool pass = false;
    double residual = 0.0;
    int failed_circuit = -1;  // index of the first non-copositive circuit, -1 if none
    std::string details;
};

// Recomputes the coefficient-wise sum and every circuit-number test from the
// certificate data alone.
VerifyReport verify_certificate(const SoncCertificate& cert);

}  // namespace copos

#endif
