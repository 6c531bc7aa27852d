#include "copos/homotopy.hpp"

#include <cmath>
#include <stdexcept>

#include "copos/detail/numeric.hpp"
#include "copos/ratlp.hpp"

namespace copos {

using detail::CompensatedSum;

namespace {

// Raw exponentials exp(h_a tau + <a,y>) per column; false on overflow.
bool term_exps(const ParameterHomotopy& ph, double tau, const std::vector<double>& y,
               std::vector<double>* exps) {
    const auto& sys = ph.sys;
    exps->resize(sys.m);
    for (int a = 0; a < sys.m; ++a) {
        double u = sys.heights[a] * tau;
        for (int j = 0; j < sys.n; ++j) u += static_cast<double>(sys.points[a][j]) * y[j];
        double w = std::exp(u);
        if (!std::isfinite(w)) return false;
        (*exps)[a] = w;
    }
    return true;
}

}  // namespace

HomotopyEval eval_homotopy(const ParameterHomotopy& ph, double s, double tau,
                           const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != ph.sys.n)
        throw std::invalid_argument("eval_homotopy: dimension mismatch");
    HomotopyEval out;
    std::vector<double> w;
    if (!term_exps(ph, tau, y, &w)) {
        out.overflow = true;
        return out;
    }
    out.residual.resize(ph.sys.n + 1);
    for (int i = 0; i <= ph.sys.n; ++i) {
        CompensatedSum acc;
        for (int a = 0; a < ph.sys.m; ++a) {
            double ca = s * ph.c_target[a] + (1.0 - s) * ph.c_start[a];
            acc.add(static_cast<double>(ph.sys.c_rows[i][a]) * ca * w[a]);
        }
        double v = acc.value();
        if (!std::isfinite(v)) {
            out.overflow = true;
            return out;
        }
        out.residual[i] = v;
    }
    return out;
}

HomotopyJacobian jac_homotopy(const ParameterHomotopy& ph, double s, double tau,
                              const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != ph.sys.n)
        throw std::invalid_argument("jac_homotopy: dimension mismatch");
    HomotopyJacobian out;
    const auto& sys = ph.sys;
    std::vector<double> w;
    if (!term_exps(ph, tau, y, &w)) {
        out.overflow = true;
        return out;
    }
    out.j.resize(sys.n + 1, sys.n + 1);
    out.dh_ds.resize(sys.n + 1);
    bool finite = true;
    for (int i = 0; i <= sys.n; ++i) {
        for (int col = 0; col <= sys.n; ++col) {
            CompensatedSum acc;
            for (int a = 0; a < sys.m; ++a) {
                double ca = s * ph.c_target[a] + (1.0 - s) * ph.c_start[a];
                double g = col == 0 ? static_cast<double>(sys.heights[a])
                                    : static_cast<double>(sys.points[a][col - 1]);
                acc.add(static_cast<double>(sys.c_rows[i][a]) * ca * w[a] * g);
            }
            out.j(i, col) = acc.value();
            finite = finite && std::isfinite(out.j(i, col));
        }
        CompensatedSum acc;
        for (int a = 0; a < sys.m; ++a)
            acc.add(static_cast<double>(sys.c_rows[i][a]) * (ph.c_target[a] - ph.c_start[a]) * w[a]);
        out.dh_ds(i) = acc.value();
        finite = finite && std::isfinite(out.dh_ds(i));
    }
    out.overflow = !finite;
    return out;
}

std::vector<Rational> starting_coefficients(const SignedSupport& support) {
    if (support.minus.empty())
        throw std::invalid_argument("starting_coefficients: a_minus is empty");
    const int n = support.ambient_dim;
    if (support.affine_dim() != n)
        throw std::invalid_argument("starting_coefficients: support is not full dimensional");
    const int k = support.num_plus();
    const LatticePoint& b1 = support.minus[0];

    // maximize m  s.t.  lambda_i - m - s_i = 0, sum lambda = 1,
    //                   sum lambda_i a_i = b1, all vars >= 0
    int nv = k + 1 + k;  // lambda, m, slacks
    LpProblem lp;
    int rows = k + 1 + n;
    lp.a.assign(rows, std::vector<Rational>(nv, Rational(0)));
    lp.b.assign(rows, Rational(0));
    lp.c.assign(nv, Rational(0));
    lp.c[k] = -1;
    for (int i = 0; i < k; ++i) {
        lp.a[i][i] = 1;
        lp.a[i][k] = -1;
        lp.a[i][k + 1 + i] = -1;
    }
    for (int i = 0; i < k; ++i) lp.a[k][i] = 1;
    lp.b[k] = 1;
    for (int d = 0; d < n; ++d) {
        for (int i = 0; i < k; ++i) lp.a[k + 1 + d][i] = Rational(support.plus[i][d]);
        lp.b[k + 1 + d] = Rational(b1[d]);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal || -sol.objective <= 0)
        throw std::invalid_argument(
            "starting_coefficients: first a_minus point is not interior to conv(a_plus)");

    std::vector<Rational> c_hat(support.num_points(), Rational(0));
    for (int i = 0; i < k; ++i) c_hat[i] = sol.x[i];
    // weight 1 on b1, zero on the remaining minus points
    int b1_index = support.index_of(b1);
    c_hat[b1_index] = 1;
    return c_hat;
}

ParameterHomotopy make_parameter_homotopy(const Signomial& f, const HeightFunction& h) {
    ParameterHomotopy ph;
    ph.sys = build_critical_system(f, h);
    ph.c_target = ph.sys.c;
    auto c_hat = starting_coefficients(f.support);
    ph.c_start.resize(c_hat.size());
    for (std::size_t i = 0; i < c_hat.size(); ++i) ph.c_start[i] = to_double(c_hat[i]);
    return ph;
}

}  // namespace copos
