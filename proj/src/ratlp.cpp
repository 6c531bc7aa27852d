#include "copos/ratlp.hpp"

#include <stdexcept>

namespace copos {

namespace {

// Dense tableau simplex. Rows carry [coefficients | rhs]; `basis[i]` is the
// variable owning row i. The cost row is kept in reduced form.
struct Tableau {
    std::vector<std::vector<Rational>> rows;  // m x (n+1)
    std::vector<Rational> cost;               // n+1, cost[n] = -objective
    std::vector<int> basis;
    int n = 0;

    void pivot(int row, int col) {
        Rational p = rows[row][col];
        for (auto& v : rows[row]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            Rational f = rows[i][col];
            if (f == 0) continue;
            for (int j = 0; j <= n; ++j) rows[i][j] -= f * rows[row][j];
        }
        Rational f = cost[col];
        if (f != 0)
            for (int j = 0; j <= n; ++j) cost[j] -= f * rows[row][j];
        basis[row] = col;
    }

    // Returns false when the current cost row is already optimal.
    bool bland_step() {
        int enter = -1;
        for (int j = 0; j < n; ++j) {
            if (cost[j] < 0) { enter = j; break; }
        }
        if (enter < 0) return false;
        int leave = -1;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][enter] <= 0) continue;
            Rational ratio = rows[i][n] / rows[i][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = static_cast<int>(i);
                best_ratio = ratio;
            }
        }
        if (leave < 0) throw LpStatus::Unbounded;
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
    const int m = static_cast<int>(problem.a.size());
    const int n = m > 0 ? static_cast<int>(problem.a[0].size()) : static_cast<int>(problem.c.size());
    for (const auto& row : problem.a)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("solve_lp: ragged constraint matrix");
    if (static_cast<int>(problem.b.size()) != m || static_cast<int>(problem.c.size()) != n)
        throw std::invalid_argument("solve_lp: dimension mismatch");

    // Phase 1: artificial variable per row, rhs made nonnegative.
    Tableau t;
    t.n = n + m;
    t.rows.assign(m, std::vector<Rational>(t.n + 1, Rational(0)));
    t.basis.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        bool flip = problem.b[i] < 0;
        for (int j = 0; j < n; ++j) t.rows[i][j] = flip ? -problem.a[i][j] : problem.a[i][j];
        t.rows[i][t.n] = flip ? -problem.b[i] : problem.b[i];
        t.rows[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    t.cost.assign(t.n + 1, Rational(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) t.cost[j] -= t.rows[i][j];
    for (int i = 0; i < m; ++i) t.cost[t.n] -= t.rows[i][t.n];

    LpSolution out;
    try {
        while (t.bland_step()) {}
    } catch (LpStatus) {
        // phase-1 objective is bounded below by 0; unbounded cannot happen
        throw std::logic_error("solve_lp: phase-1 simplex reported unbounded");
    }
    if (t.cost[t.n] != 0) {  // residual infeasibility (= -objective)
        out.status = LpStatus::Infeasible;
        return out;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = static_cast<int>(t.rows.size()) - 1; i >= 0; --i) {
        if (t.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (t.rows[i][j] != 0) { col = j; break; }
        }
        if (col >= 0) {
            t.pivot(i, col);
        } else {
            t.rows.erase(t.rows.begin() + i);
            t.basis.erase(t.basis.begin() + i);
        }
    }

    // Phase 2: strip artificial columns and install the real objective.
    for (auto& row : t.rows) {
        row.erase(row.begin() + n, row.begin() + t.n);
    }
    t.n = n;
    t.cost.assign(n + 1, Rational(0));
    for (int j = 0; j < n; ++j) t.cost[j] = problem.c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        Rational cb = problem.c[t.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j <= n; ++j) t.cost[j] -= cb * t.rows[i][j];
    }
    try {
        while (t.bland_step()) {}
    } catch (LpStatus) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    out.status = LpStatus::Optimal;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) out.x[t.basis[i]] = t.rows[i][n];
    out.objective = -t.cost[n];
    return out;
}

}  // namespace copos
