#include "copos/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "copos/detail/numeric.hpp"
#include "copos/ratlp.hpp"

namespace copos {

using detail::int_pow;

std::pair<double, double> square_tstar(const SquareSupportCoeffs& c) {
    if (!(c.c0 > 0 && c.c1 > 0 && c.c2 > 0 && c.c3 > 0 && c.c4 > 0))
        throw std::invalid_argument("square_tstar: coefficients must be positive");
    double root = std::sqrt(c.c0 * c.c1 * c.c2 * c.c3);
    double t1 = (4.0 * (c.c0 * c.c3 + c.c1 * c.c2) + 8.0 * root) / (c.c4 * c.c4);
    double t2 = (4.0 * (c.c0 * c.c3 + c.c1 * c.c2) - 8.0 * root) / (c.c4 * c.c4);
    if (t2 < 0) t2 = 0;  // AM-GM guarantees t2 >= 0 up to rounding
    return {std::sqrt(t2), std::sqrt(t1)};
}

double circuit_tstar(const CircuitPolynomial& circuit) {
    if (!circuit.negative_point) throw std::invalid_argument("circuit_tstar: no negative term");
    return circuit_number(circuit) / to_double(circuit.negative_point->second);
}

GridMinResult grid_min(const Signomial& f, const std::vector<std::pair<double, double>>& box,
                       int samples, std::uint64_t seed) {
    const int n = f.dim();
    if (static_cast<int>(box.size()) != n) throw std::invalid_argument("grid_min: box dimension mismatch");
    for (const auto& [lo, hi] : box)
        if (!(lo > 0) || !(hi >= lo)) throw std::invalid_argument("grid_min: box must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sample_log = [&](int j) {
        double llo = std::log(box[j].first), lhi = std::log(box[j].second);
        return llo + (lhi - llo) * unif(rng);
    };

    struct Candidate {
        double value;
        std::vector<double> logx;
    };
    std::vector<Candidate> best;
    auto consider = [&](Candidate&& c) {
        best.push_back(std::move(c));
        std::sort(best.begin(), best.end(),
                  [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
        if (best.size() > 10) best.resize(10);
    };

    std::vector<double> x(n);
    for (int s = 0; s < samples; ++s) {
        Candidate c;
        c.logx.resize(n);
        for (int j = 0; j < n; ++j) {
            c.logx[j] = sample_log(j);
            x[j] = std::exp(c.logx[j]);
        }
        c.value = evaluate(f, x);
        consider(std::move(c));
    }

    // Newton on the log-coordinate gradient of g(y) = f(exp(y)):
    // grad = sum c_a a e^{<a,y>}, hess = sum c_a a a^T e^{<a,y>}.
    auto grad_hess = [&](const std::vector<double>& y, Eigen::VectorXd* g, Eigen::MatrixXd* hs) {
        g->setZero(n);
        hs->setZero(n, n);
        for (int i = 0; i < f.num_terms(); ++i) {
            const LatticePoint& a = f.support.point(i);
            double u = 0.0;
            for (int j = 0; j < n; ++j) u += a[j] * y[j];
            double w = f.coeff[i] * std::exp(u);
            for (int j = 0; j < n; ++j) {
                (*g)(j) += w * a[j];
                for (int l = 0; l < n; ++l) (*hs)(j, l) += w * a[j] * a[l];
            }
        }
    };

    GridMinResult out;
    out.value = std::numeric_limits<double>::infinity();
    Eigen::VectorXd g(n);
    Eigen::MatrixXd hs(n, n);
    for (auto& cand : best) {
        std::vector<double> y = cand.logx;
        for (int it = 0; it < 20; ++it) {
            grad_hess(y, &g, &hs);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(hs);
            if (!lu.isInvertible()) break;
            Eigen::VectorXd step = lu.solve(-g);
            if (!step.allFinite()) break;
            // keep refinements inside (a slightly padded copy of) the box
            bool ok = true;
            for (int j = 0; j < n; ++j) {
                double next = y[j] + step(j);
                if (next < std::log(box[j].first) - 2.0 || next > std::log(box[j].second) + 2.0)
                    ok = false;
            }
            if (!ok) break;
            for (int j = 0; j < n; ++j) y[j] += step(j);
            if (step.lpNorm<Eigen::Infinity>() < 1e-14) break;
        }
        std::vector<double> xx(n);
        for (int j = 0; j < n; ++j) xx[j] = std::exp(y[j]);
        double v = evaluate(f, xx);
        double v_raw = cand.value;
        if (std::min(v, v_raw) < out.value) {
            if (v <= v_raw) {
                out.value = v;
                out.point = xx;
            } else {
                out.value = v_raw;
                out.point.resize(n);
                for (int j = 0; j < n; ++j) out.point[j] = std::exp(cand.logx[j]);
            }
        }
    }
    return out;
}

namespace {

using RatVec = std::vector<Rational>;

Rational simplex_volume_scaled(const std::vector<LatticePoint>& pts) {
    // |det| of the difference matrix (d! times the volume)
    int d = static_cast<int>(pts.size()) - 1;
    std::vector<RatVec> m(d, RatVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = Rational(pts[i + 1][j] - pts[0][j]);
    Rational det(1);
    for (int c = 0; c < d; ++c) {
        int piv = -1;
        for (int r = c; r < d; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return Rational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < d; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int j = c; j < d; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det < 0 ? -det : det;
}

// Do the open simplices interior-intersect? Max-min LP over common points.
bool interiors_meet(const std::vector<LatticePoint>& a, const std::vector<LatticePoint>& b, int d) {
    int ka = static_cast<int>(a.size()), kb = static_cast<int>(b.size());
    // vars: lambda (ka), mu (kb), m, slacks (ka + kb)
    int nv = ka + kb + 1 + ka + kb;
    int rows = ka + kb + 2 + d;
    LpProblem lp;
    lp.a.assign(rows, std::vector<Rational>(nv, Rational(0)));
    lp.b.assign(rows, Rational(0));
    lp.c.assign(nv, Rational(0));
    lp.c[ka + kb] = -1;  // maximize m
    int row = 0;
    for (int i = 0; i < ka; ++i, ++row) {
        lp.a[row][i] = 1;
        lp.a[row][ka + kb] = -1;
        lp.a[row][ka + kb + 1 + i] = -1;
    }
    for (int i = 0; i < kb; ++i, ++row) {
        lp.a[row][ka + i] = 1;
        lp.a[row][ka + kb] = -1;
        lp.a[row][ka + kb + 1 + ka + i] = -1;
    }
    for (int i = 0; i < ka; ++i) lp.a[row][i] = 1;
    lp.b[row++] = 1;
    for (int i = 0; i < kb; ++i) lp.a[row][ka + i] = 1;
    lp.b[row++] = 1;
    for (int j = 0; j < d; ++j, ++row) {
        for (int i = 0; i < ka; ++i) lp.a[row][i] = Rational(a[i][j]);
        for (int i = 0; i < kb; ++i) lp.a[row][ka + i] = Rational(-b[i][j]);
    }
    LpSolution sol = solve_lp(lp);
    return sol.status == LpStatus::Optimal && -sol.objective > 0;
}

bool simplex_contains(const std::vector<LatticePoint>& pts, const LatticePoint& q) {
    auto lambda = barycentric_coordinates(pts, q);
    for (const auto& l : lambda)
        if (l < 0) return false;
    return true;
}

}  // namespace

bool brute_force_nonseparable(const SignedSupport& support) {
    if (support.minus.empty())
        throw std::invalid_argument("brute_force_nonseparable: a_minus is empty");
    if (support.ambient_dim > 3 || support.num_plus() > 8)
        throw std::invalid_argument("brute_force_nonseparable: size cap exceeded (n <= 3, #a_plus <= 8)");

    int d = support.affine_dim();
    if (affine_dim(support.plus) != d) return false;  // fails interiority

    auto [map, reduced] = reduce_to_full_dim(support);
    (void)map;
    const auto& plus = reduced.plus;
    const auto& minus = reduced.minus;
    d = reduced.ambient_dim;

    // Strict interiority of a_minus in conv(a_plus): every minus point must
    // have an all-positive convex representation. One LP per point keeps the
    // oracle independent of the arrangement code it cross-checks.
    {
        for (const auto& b : minus) {
            int k = static_cast<int>(plus.size());
            LpProblem lp;
            int nv = k + 1 + k;
            int rows = k + 1 + d;
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
            for (int j = 0; j < d; ++j) {
                for (int i = 0; i < k; ++i) lp.a[k + 1 + j][i] = Rational(plus[i][j]);
                lp.b[k + 1 + j] = Rational(b[j]);
            }
            LpSolution sol = solve_lp(lp);
            if (sol.status != LpStatus::Optimal || -sol.objective <= 0) return false;
        }
    }

    // candidate cells: all full-dimensional simplices on a_plus
    struct Cell {
        std::vector<int> idx;
        std::vector<LatticePoint> pts;
        Rational vol;
        bool holds_minus;
    };
    std::vector<Cell> cells;
    {
        std::vector<int> stack;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(stack.size()) == d + 1) {
                Cell c;
                c.idx = stack;
                for (int i : stack) c.pts.push_back(plus[i]);
                c.vol = simplex_volume_scaled(c.pts);
                if (c.vol != 0) {
                    c.holds_minus = true;
                    for (const auto& b : minus) c.holds_minus = c.holds_minus && simplex_contains(c.pts, b);
                    cells.push_back(std::move(c));
                }
                return;
            }
            for (int i = start; i < static_cast<int>(plus.size()); ++i) {
                stack.push_back(i);
                rec(i + 1);
                stack.pop_back();
            }
        };
        rec(0);
    }

    const int nc = static_cast<int>(cells.size());
    std::vector<std::vector<bool>> compatible(nc, std::vector<bool>(nc, false));
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            bool disjoint = !interiors_meet(cells[i].pts, cells[j].pts, d);
            compatible[i][j] = compatible[j][i] = disjoint;
        }

    std::vector<Rational> suffix(nc + 1, Rational(0));
    for (int i = nc - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + cells[i].vol;

    // The hull volume equals the largest total volume of a pairwise
    // interior-disjoint family (any triangulation attains it). Branch and
    // bound over index-increasing families.
    Rational total(0);
    {
        std::vector<int> chosen;
        std::function<void(int, Rational)> fill = [&](int start, Rational vol) {
            if (vol > total) total = vol;
            if (vol + suffix[start] <= total) return;
            for (int i = start; i < nc; ++i) {
                bool ok = true;
                for (int c : chosen) ok = ok && compatible[c][i];
                if (!ok) continue;
                chosen.push_back(i);
                fill(i + 1, vol + cells[i].vol);
                chosen.pop_back();
            }
        };
        fill(0, Rational(0));
    }
    if (total == 0) return false;

    // Enumerate all exact coverings; each must have a cell containing a_minus.
    bool all_have_cell = true;
    std::vector<int> chosen;
    std::function<void(int, Rational, bool)> enumerate = [&](int start, Rational vol, bool has_cell) {
        if (!all_have_cell) return;
        if (vol == total) {
            if (!has_cell) all_have_cell = false;
            return;
        }
        if (vol + suffix[start] < total) return;
        for (int i = start; i < nc && all_have_cell; ++i) {
            if (vol + cells[i].vol > total) continue;
            bool ok = true;
            for (int c : chosen) ok = ok && compatible[c][i];
            if (!ok) continue;
            chosen.push_back(i);
            enumerate(i + 1, vol + cells[i].vol, has_cell || cells[i].holds_minus);
            chosen.pop_back();
        }
    };
    enumerate(0, Rational(0), false);
    return all_have_cell;
}

}  // namespace copos
