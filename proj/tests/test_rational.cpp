#include <doctest.h>

#include <random>

#include "copos/ratlp.hpp"
#include "copos/rational.hpp"

using namespace copos;

TEST_CASE("exact_rational reproduces binary64 values") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double v = unif(rng);
        CHECK(to_double(exact_rational(v)) == v);
    }
    CHECK(exact_rational(0.5) == Rational(1, 2));
    CHECK(exact_rational(-3.0) == Rational(-3));
}

TEST_CASE("rationalize finds small denominators") {
    CHECK(rationalize(0.25) == Rational(1, 4));
    CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
    CHECK(rationalize(-22.0 / 7.0) == Rational(-22, 7));
    Rational r = rationalize(3.14159265358979, 1e-12);
    CHECK(std::fabs(to_double(r) - 3.14159265358979) <= 1e-12 * 3.15);
}

TEST_CASE("rational_from_literal parses the grammar forms") {
    CHECK(rational_from_literal("123") == Rational(123));
    CHECK(rational_from_literal("-4.75") == Rational(-19, 4));
    CHECK(rational_from_literal("1e-7") == Rational(1, 10000000));
    CHECK(rational_from_literal("2.5e3") == Rational(2500));
    CHECK(rational_from_literal("9/10") == Rational(9, 10));
    CHECK_THROWS_AS(rational_from_literal("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_literal("1/0"), std::invalid_argument);
}

TEST_CASE("pow_rational handles negative exponents") {
    CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow_rational(Rational(2), -2) == Rational(1, 4));
    CHECK(pow_rational(Rational(5), 0) == Rational(1));
}

TEST_CASE("lp: basic feasibility and optimization") {
    // minimize x + y subject to x + y = 1, x,y >= 0
    LpProblem p;
    p.a = {{Rational(1), Rational(1)}};
    p.b = {Rational(1)};
    p.c = {Rational(1), Rational(1)};
    auto sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rational(1));

    // infeasible: x + y = -1
    p.b = {Rational(-1)};
    CHECK(solve_lp(p).status == LpStatus::Infeasible);

    // unbounded: minimize -x subject to x - y = 0
    p.a = {{Rational(1), Rational(-1)}};
    p.b = {Rational(0)};
    p.c = {Rational(-1), Rational(0)};
    CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("lp: barycentric-style system is solved exactly") {
    // lambda over the square's corners reproducing the center, max-min form:
    // maximize m st lambda_i - m - s_i = 0, sum lambda = 1, sum lambda a = (1,1)
    std::vector<std::vector<long long>> pts = {{0, 0}, {2, 0}, {0, 2}, {2, 2}};
    int k = 4;
    LpProblem p;
    int nv = k + 1 + k;
    p.a.assign(k + 1 + 2, std::vector<Rational>(nv, Rational(0)));
    p.b.assign(k + 1 + 2, Rational(0));
    p.c.assign(nv, Rational(0));
    p.c[k] = -1;
    for (int i = 0; i < k; ++i) {
        p.a[i][i] = 1;
        p.a[i][k] = -1;
        p.a[i][k + 1 + i] = -1;
    }
    for (int i = 0; i < k; ++i) p.a[k][i] = 1;
    p.b[k] = 1;
    for (int d = 0; d < 2; ++d) {
        for (int i = 0; i < k; ++i) p.a[k + 1 + d][i] = Rational(pts[i][d]);
        p.b[k + 1 + d] = 1;
    }
    auto sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(-sol.objective == Rational(1, 4));
    for (int i = 0; i < k; ++i) CHECK(sol.x[i] == Rational(1, 4));
}
