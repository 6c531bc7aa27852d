#ifndef COPOS_SIGNOMIAL_HPP
#define COPOS_SIGNOMIAL_HPP

#include <optional>
#include <vector>

#include "copos/lattice.hpp"
#include "copos/rational.hpp"

namespace copos {

// A signomial with integer exponents: positive coefficients on a_plus,
// negative on a_minus. Coefficients are stored signed, aligned with the
// support's canonical point order. `exact` mirrors the coefficients as
// rationals for the exact subroutines.
struct Signomial {
    SignedSupport support;
    std::vector<double> coeff;
    std::optional<std::vector<Rational>> exact;

    static Signomial from_terms(int ambient_dim,
                                const std::vector<std::pair<LatticePoint, double>>& terms);
    static Signomial from_exact_terms(int ambient_dim,
                                      const std::vector<std::pair<LatticePoint, Rational>>& terms);

    int dim() const { return support.ambient_dim; }
    int num_terms() const { return support.num_points(); }
    // Nonsigned (absolute) coefficient of the i-th canonical point.
    double nonsigned(int i) const { return coeff[i] < 0 ? -coeff[i] : coeff[i]; }
    Rational exact_coeff(int i) const;  // signed; falls back to the exact binary64 value
};

double evaluate(const Signomial& f, const std::vector<double>& x);

enum class Precheck { TriviallyCopositive, TriviallyNegative, NeedsCriterion };

Precheck sign_precheck(const Signomial& f);

Signomial truncate(const Signomial& f, const Face& gamma);

// q(w) = f(x_star * w); same signed support, coefficient of a scaled by x_star^a.
Signomial rescale_to_one(const Signomial& f, const std::vector<double>& x_star);

// Height function over the canonical point order: zero on a_plus, >= 1 on a_minus.
struct HeightFunction {
    std::vector<int> h;

    static HeightFunction uniform(const SignedSupport& support, int level = 1);
    static HeightFunction from_minus_levels(const SignedSupport& support, const std::vector<int>& levels);
    int at(int i) const { return h[i]; }
};

// The critical system F(c,x) = C (c * x^A) in matrix form, canonical order.
struct CriticalSystem {
    int n = 0;  // number of variables
    int m = 0;  // number of support points
    std::vector<LatticePoint> points;            // columns, canonical order
    std::vector<std::vector<long long>> c_rows;  // C = A-hat * diag(sigma), (n+1) x m
    std::vector<int> heights;                    // h per column
    std::vector<double> c;                       // nonsigned coefficients
};

CriticalSystem build_critical_system(const Signomial& f, const HeightFunction& h);

// Residual of F(c_eff, x) for an explicit effective coefficient vector
// (nonsigned, canonical order) at a positive point x.
std::vector<double> critical_residual(const CriticalSystem& sys, const std::vector<double>& c_eff,
                                      const std::vector<double>& x);

}  // namespace copos

#endif
