#ifndef COPOS_HOMOTOPY_HPP
#define COPOS_HOMOTOPY_HPP

#include <Eigen/Dense>
#include <vector>

#include "copos/signomial.hpp"

namespace copos {

// The parameter homotopy H(s,(t,x)) = F((s c + (1-s) c_hat) * t^h, x),
// evaluated in logarithmic coordinates tau = log t, y = log x, where every
// term becomes coefficient * exp(h_a tau + <a, y>). Positivity of (t,x) is
// then automatic and large exponents stay well conditioned.
struct ParameterHomotopy {
    CriticalSystem sys;
    std::vector<double> c_target;  // nonsigned
    std::vector<double> c_start;   // nonsigned; zero entries allowed

    int dim() const { return sys.n + 1; }  // unknowns (tau, y)
};

struct HomotopyEval {
    std::vector<double> residual;  // n+1
    bool overflow = false;
};

struct HomotopyJacobian {
    Eigen::MatrixXd j;     // (n+1) x (n+1), columns (tau, y_1..y_n)
    Eigen::VectorXd dh_ds;  // n+1
    bool overflow = false;
};

HomotopyEval eval_homotopy(const ParameterHomotopy& ph, double s, double tau,
                           const std::vector<double>& y);
HomotopyJacobian jac_homotopy(const ParameterHomotopy& ph, double s, double tau,
                              const std::vector<double>& y);

// Start coefficients of the paper's construction: positive convex coordinates
// of the first a_minus point with respect to a_plus (exact LP maximizing the
// smallest coordinate), weight one on that point, zero on the remaining
// a_minus points. The support must be full dimensional with the first minus
// point interior to conv(a_plus).
std::vector<Rational> starting_coefficients(const SignedSupport& support);

ParameterHomotopy make_parameter_homotopy(const Signomial& f, const HeightFunction& h);

}  // namespace copos

#endif
