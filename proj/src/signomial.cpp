#include "copos/signomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copos/detail/numeric.hpp"

namespace copos {

using detail::CompensatedSum;
using detail::int_pow;

Signomial Signomial::from_terms(int ambient_dim,
                                const std::vector<std::pair<LatticePoint, double>>& terms) {
    std::vector<std::pair<LatticePoint, Rational>> exact;
    exact.reserve(terms.size());
    for (const auto& [e, c] : terms) exact.emplace_back(e, exact_rational(c));
    Signomial f = from_exact_terms(ambient_dim, exact);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        int idx = f.support.index_of(terms[i].first);
        f.coeff[idx] = terms[i].second;  // keep the given binary64 values verbatim
    }
    return f;
}

Signomial Signomial::from_exact_terms(int ambient_dim,
                                      const std::vector<std::pair<LatticePoint, Rational>>& terms) {
    std::vector<LatticePoint> plus, minus;
    for (const auto& [e, c] : terms) {
        if (static_cast<int>(e.size()) != ambient_dim)
            throw std::invalid_argument("signomial: exponent dimension mismatch");
        if (c == 0) throw std::invalid_argument("signomial: zero coefficient");
        (c > 0 ? plus : minus).push_back(e);
    }
    Signomial f;
    f.support = SignedSupport(std::move(plus), std::move(minus));
    f.coeff.assign(f.support.num_points(), 0.0);
    f.exact = std::vector<Rational>(f.support.num_points(), Rational(0));
    for (const auto& [e, c] : terms) {
        int idx = f.support.index_of(e);
        (*f.exact)[idx] = c;
        f.coeff[idx] = to_double(c);
    }
    return f;
}

Rational Signomial::exact_coeff(int i) const {
    if (exact) return (*exact)[i];
    return exact_rational(coeff[i]);
}

double evaluate(const Signomial& f, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != f.dim())
        throw std::invalid_argument("evaluate: dimension mismatch");
    for (double xi : x)
        if (!(xi > 0)) throw std::invalid_argument("evaluate: point is not strictly positive");
    CompensatedSum s;
    for (int i = 0; i < f.num_terms(); ++i) {
        double mono = 1.0;
        const LatticePoint& e = f.support.point(i);
        for (int j = 0; j < f.dim(); ++j) mono *= int_pow(x[j], e[j]);
        s.add(f.coeff[i] * mono);
    }
    return s.value();
}

Precheck sign_precheck(const Signomial& f) {
    if (f.support.minus.empty()) return Precheck::TriviallyCopositive;
    std::vector<LatticePoint> all;
    for (int i = 0; i < f.support.num_points(); ++i) all.push_back(f.support.point(i));
    for (int v : hull_vertices(all))
        if (f.support.is_minus_index(v)) return Precheck::TriviallyNegative;
    return Precheck::NeedsCriterion;
}

Signomial truncate(const Signomial& f, const Face& gamma) {
    if (gamma.point_indices.empty()) throw std::invalid_argument("truncate: empty face");
    std::vector<std::pair<LatticePoint, Rational>> terms;
    for (int i : gamma.point_indices) terms.emplace_back(f.support.point(i), f.exact_coeff(i));
    Signomial g = Signomial::from_exact_terms(f.dim(), terms);
    for (int i : gamma.point_indices) {
        int idx = g.support.index_of(f.support.point(i));
        g.coeff[idx] = f.coeff[i];
    }
    if (!f.exact) g.exact.reset();
    return g;
}

Signomial rescale_to_one(const Signomial& f, const std::vector<double>& x_star) {
    if (static_cast<int>(x_star.size()) != f.dim())
        throw std::invalid_argument("rescale_to_one: dimension mismatch");
    for (double v : x_star)
        if (!(v > 0)) throw std::invalid_argument("rescale_to_one: point is not strictly positive");
    Signomial g = f;
    g.exact.reset();
    for (int i = 0; i < f.num_terms(); ++i) {
        double mono = 1.0;
        const LatticePoint& e = f.support.point(i);
        for (int j = 0; j < f.dim(); ++j) mono *= int_pow(x_star[j], e[j]);
        g.coeff[i] = f.coeff[i] * mono;
    }
    return g;
}

HeightFunction HeightFunction::uniform(const SignedSupport& support, int level) {
    if (level < 1) throw std::invalid_argument("height function: level must be >= 1");
    HeightFunction hf;
    hf.h.assign(support.num_points(), 0);
    for (int i = support.num_plus(); i < support.num_points(); ++i) hf.h[i] = level;
    return hf;
}

HeightFunction HeightFunction::from_minus_levels(const SignedSupport& support,
                                                 const std::vector<int>& levels) {
    if (static_cast<int>(levels.size()) != static_cast<int>(support.minus.size()))
        throw std::invalid_argument("height function: one level per a_minus point required");
    HeightFunction hf;
    hf.h.assign(support.num_points(), 0);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 1) throw std::invalid_argument("height function: levels must be >= 1");
        hf.h[support.num_plus() + static_cast<int>(k)] = levels[k];
    }
    return hf;
}

CriticalSystem build_critical_system(const Signomial& f, const HeightFunction& h) {
    if (static_cast<int>(h.h.size()) != f.num_terms())
        throw std::invalid_argument("build_critical_system: height domain mismatch");
    CriticalSystem sys;
    sys.n = f.dim();
    sys.m = f.num_terms();
    sys.heights = h.h;
    sys.c.resize(sys.m);
    sys.c_rows.assign(sys.n + 1, std::vector<long long>(sys.m, 0));
    for (int a = 0; a < sys.m; ++a) {
        const LatticePoint& p = f.support.point(a);
        sys.points.push_back(p);
        long long sigma = f.support.is_minus_index(a) ? -1 : 1;
        sys.c_rows[0][a] = sigma;
        for (int i = 0; i < sys.n; ++i) sys.c_rows[i + 1][a] = sigma * p[i];
        sys.c[a] = f.nonsigned(a);
    }
    return sys;
}

std::vector<double> critical_residual(const CriticalSystem& sys, const std::vector<double>& c_eff,
                                      const std::vector<double>& x) {
    std::vector<double> mono(sys.m, 1.0);
    for (int a = 0; a < sys.m; ++a)
        for (int j = 0; j < sys.n; ++j) mono[a] *= int_pow(x[j], sys.points[a][j]);
    std::vector<double> out(sys.n + 1);
    for (int i = 0; i <= sys.n; ++i) {
        CompensatedSum s;
        for (int a = 0; a < sys.m; ++a)
            s.add(static_cast<double>(sys.c_rows[i][a]) * c_eff[a] * mono[a]);
        out[i] = s.value();
    }
    return out;
}

}  // namespace copos
