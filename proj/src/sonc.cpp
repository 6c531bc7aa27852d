#include "copos/sonc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "copos/ratlp.hpp"

namespace copos {

namespace {

Rational rat_monomial(const std::vector<Rational>& x, const LatticePoint& e) {
    Rational acc(1);
    for (std::size_t j = 0; j < e.size(); ++j) acc *= pow_rational(x[j], e[j]);
    return acc;
}

double coeff_scale(const Signomial& f) {
    double m = 1.0;
    for (double c : f.coeff) m = std::max(m, std::fabs(c));
    return m;
}

}  // namespace

double circuit_number(const CircuitPolynomial& circuit) {
    if (!circuit.negative_point)
        throw std::invalid_argument("circuit_number: circuit has no negative term");
    auto lambda = barycentric_coordinates(circuit.positive_points, circuit.negative_point->first);
    double log_theta = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] <= 0)
            throw std::invalid_argument(
                "circuit_number: negative point is not in the relative interior of the simplex");
        double li = to_double(lambda[i]);
        log_theta += li * (std::log(to_double(circuit.positive_coeffs[i])) - std::log(li));
    }
    return std::exp(log_theta);
}

bool is_circuit_copositive(const CircuitPolynomial& circuit) {
    if (!circuit.negative_point) return true;
    double theta = circuit_number(circuit);
    double d = to_double(circuit.negative_point->second);
    return d <= theta * (1.0 + 1e-12);
}

std::vector<CircuitPolynomial> extended_circuit_decomposition(const Signomial& f) {
    const auto& sup = f.support;
    if (sup.minus.empty())
        throw std::invalid_argument("extended_circuit_decomposition: a_minus is empty");
    if (affine_dim(sup.plus) != static_cast<int>(sup.plus.size()) - 1)
        throw std::invalid_argument(
            "extended_circuit_decomposition: a_plus is not affinely independent");

    HeightFunction h0 = HeightFunction::uniform(sup);
    CriticalSystem sys = build_critical_system(f, h0);
    std::vector<double> ones(f.dim(), 1.0);
    auto resid = critical_residual(sys, sys.c, ones);
    double rmax = 0.0;
    for (double r : resid) rmax = std::max(rmax, std::fabs(r));
    if (rmax > 1e-8 * coeff_scale(f))
        throw std::invalid_argument(
            "extended_circuit_decomposition: the all-ones point is not a singular zero");

    std::vector<CircuitPolynomial> out;
    for (std::size_t bi = 0; bi < sup.minus.size(); ++bi) {
        const LatticePoint& b = sup.minus[bi];
        Rational cb = f.exact_coeff(sup.num_plus() + static_cast<int>(bi));
        if (cb > 0) throw std::logic_error("extended_circuit_decomposition: sign bookkeeping broken");
        cb = -cb;
        auto lambda = barycentric_coordinates(sup.plus, b);
        CircuitPolynomial q;
        for (std::size_t ai = 0; ai < sup.plus.size(); ++ai) {
            if (lambda[ai] == 0) continue;
            if (lambda[ai] < 0)
                throw std::invalid_argument(
                    "extended_circuit_decomposition: a_minus point outside conv(a_plus)");
            q.positive_points.push_back(sup.plus[ai]);
            q.positive_coeffs.push_back(lambda[ai] * cb);
        }
        q.negative_point = std::make_pair(b, cb);
        out.push_back(std::move(q));
    }
    return out;
}

DeltaSolution solve_delta(const SimplexFamily& family, const SignedSupport& support,
                          const std::vector<Rational>& c_signed) {
    const int k = support.num_plus();
    const int mm = static_cast<int>(support.minus.size());
    const int r = static_cast<int>(family.simplices.size());
    if (static_cast<int>(c_signed.size()) != support.num_points())
        throw std::invalid_argument("solve_delta: coefficient vector length mismatch");
    if (r == 0) throw std::invalid_argument("solve_delta: empty simplex family");

    // exact singularity of the all-ones point
    Rational sum0(0);
    std::vector<Rational> sum1(support.ambient_dim, Rational(0));
    for (int i = 0; i < support.num_points(); ++i) {
        sum0 += c_signed[i];
        for (int j = 0; j < support.ambient_dim; ++j)
            sum1[j] += c_signed[i] * Rational(support.point(i)[j]);
    }
    bool singular = sum0 == 0;
    for (const auto& s : sum1) singular = singular && s == 0;
    if (!singular)
        throw std::invalid_argument(
            "solve_delta: coefficients do not have an exact singular zero at the all-ones point");

    // M delta = c_plus with m_{a,k} = sum_b lambda_{a,k}^b c_b on the vertices of Delta_k
    LpProblem lp;
    lp.a.assign(k, std::vector<Rational>(r, Rational(0)));
    lp.b.assign(k, Rational(0));
    lp.c.assign(r, Rational(0));
    for (int a = 0; a < k; ++a) lp.b[a] = c_signed[a];
    for (int kk = 0; kk < r; ++kk) {
        std::vector<LatticePoint> pts;
        for (int idx : family.simplices[kk]) pts.push_back(support.plus[idx]);
        for (int bi = 0; bi < mm; ++bi) {
            auto lambda = barycentric_coordinates(pts, support.minus[bi]);
            Rational cb = -c_signed[k + bi];
            for (std::size_t v = 0; v < pts.size(); ++v)
                lp.a[family.simplices[kk][v]][kk] += lambda[v] * cb;
        }
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::logic_error(
            "solve_delta: the delta system is infeasible for a nonseparable support (bug)");

    DeltaSolution out;
    out.delta = sol.x;
    Rational total(0);
    for (int i = 0; i < r; ++i) {
        total += out.delta[i];
        if (out.delta[i] > 0) out.support_j.push_back(i);
    }
    if (total != 1) throw std::logic_error("solve_delta: delta entries do not sum to one (bug)");
    return out;
}

SoncCertificate sonc_certificate(const Signomial& f, const SoncOptions& options) {
    SoncCertificate cert;
    cert.target = f;

    Precheck pre = sign_precheck(f);
    if (pre == Precheck::TriviallyNegative)
        throw std::invalid_argument("sonc_certificate: input not copositive (negative hull vertex)");
    if (pre == Precheck::TriviallyCopositive) {
        for (int i = 0; i < f.num_terms(); ++i) {
            CircuitPolynomial q;
            q.positive_points.push_back(f.support.point(i));
            q.positive_coeffs.push_back(f.exact_coeff(i));
            cert.circuits.push_back(std::move(q));
            cert.per_circuit_margin.push_back(0.0);
        }
        cert.residual = 0.0;
        return cert;
    }

    HeightFunction h = options.heights ? *options.heights : HeightFunction::uniform(f.support);
    PreparedTrack prep = prepare_single_path(f, h);
    TrackResult tr = track_single_path(prep.homotopy, options.tracker);
    if (!tr.converged)
        throw std::runtime_error(std::string("sonc_certificate: path tracking failed (") +
                                 track_failure_name(tr.failure_reason) + ")");
    std::vector<double> z;
    z.push_back(tr.tau);
    z.insert(z.end(), tr.y.begin(), tr.y.end());
    CertifiedBox box = krawczyk_certify(prep.homotopy, z);
    Verdict verdict = verdict_from_interval(
        box.unique ? std::optional<Interval>(box.t_interval) : std::nullopt, "");
    cert.t_star = tr.t_star;
    if (box.unique) cert.t_interval = box.t_interval;
    if (verdict.kind == VerdictKind::NotCopositive)
        throw std::invalid_argument("sonc_certificate: input not copositive (certified t* < 1)");
    if (verdict.kind != VerdictKind::Copositive)
        cert.warnings.push_back("NEAR-BOUNDARY: t* could not be certified away from 1");

    const Signomial& red = prep.reduced;
    const SignedSupport& rsup = red.support;
    const int d = rsup.ambient_dim;
    const int kplus = rsup.num_plus();
    const int mminus = static_cast<int>(rsup.minus.size());

    // Leftover positive terms off the smallest face containing a_minus are
    // circuits on their own.
    std::vector<bool> on_gamma(f.num_terms(), false);
    for (int i : prep.gamma.point_indices) on_gamma[i] = true;
    for (int i = 0; i < f.num_terms(); ++i) {
        if (on_gamma[i]) continue;
        CircuitPolynomial q;
        q.positive_points.push_back(f.support.point(i));
        q.positive_coeffs.push_back(f.exact_coeff(i));
        cert.circuits.push_back(std::move(q));
        cert.per_circuit_margin.push_back(0.0);
    }

    // Rationalize the endpoint and rescale the lifted coefficients to make
    // the all-ones point singular, exactly.
    Rational t_rat = rationalize(tr.t_star);
    std::vector<Rational> x_rat(d);
    for (int j = 0; j < d; ++j) x_rat[j] = rationalize(tr.x_star[j]);

    std::vector<Rational> c_tilde(rsup.num_points());
    for (int i = 0; i < rsup.num_points(); ++i) {
        Rational base = red.exact_coeff(i);
        Rational scaled = base * rat_monomial(x_rat, rsup.point(i));
        if (rsup.is_minus_index(i))
            scaled *= pow_rational(t_rat, prep.reduced_heights.at(i));
        c_tilde[i] = scaled;  // signed
    }

    CellWitness witness = find_cell_witness(rsup);
    SimplexFamily family = simplices_containing_cell(rsup, witness);
    if (family.simplices.empty())
        throw std::logic_error("sonc_certificate: empty simplex family for a nonseparable support");

    // Re-project the a_plus coefficients onto the singular locus: correct the
    // vertices of the simplex whose smallest coefficient is largest, by the
    // exact (d+1)x(d+1) solve of the singular-zero relations.
    int adjust = 0;
    {
        Rational best(-1);
        for (std::size_t j = 0; j < family.simplices.size(); ++j) {
            Rational mn = c_tilde[family.simplices[j][0]];
            for (int idx : family.simplices[j]) mn = std::min(mn, c_tilde[idx]);
            if (mn > best) {
                best = mn;
                adjust = static_cast<int>(j);
            }
        }
    }
    {
        Rational r0(0);
        std::vector<Rational> r1(d, Rational(0));
        for (int i = 0; i < rsup.num_points(); ++i) {
            r0 -= c_tilde[i];
            for (int j = 0; j < d; ++j) r1[j] -= c_tilde[i] * Rational(rsup.point(i)[j]);
        }
        // V e = (r0, r1) over the vertices of the chosen simplex
        const auto& verts = family.simplices[adjust];
        std::vector<std::vector<Rational>> aug(d + 1, std::vector<Rational>(d + 2, Rational(0)));
        for (int v = 0; v <= d; ++v) {
            aug[0][v] = 1;
            for (int j = 0; j < d; ++j) aug[j + 1][v] = Rational(rsup.plus[verts[v]][j]);
        }
        aug[0][d + 1] = r0;
        for (int j = 0; j < d; ++j) aug[j + 1][d + 1] = r1[j];
        // Gaussian elimination
        for (int col = 0; col <= d; ++col) {
            int piv = -1;
            for (int row = col; row <= d; ++row)
                if (aug[row][col] != 0) { piv = row; break; }
            if (piv < 0) throw std::logic_error("sonc_certificate: degenerate adjustment simplex");
            std::swap(aug[col], aug[piv]);
            Rational p = aug[col][col];
            for (int j2 = col; j2 <= d + 1; ++j2) aug[col][j2] /= p;
            for (int row = 0; row <= d; ++row) {
                if (row == col || aug[row][col] == 0) continue;
                Rational fgt = aug[row][col];
                for (int j2 = col; j2 <= d + 1; ++j2) aug[row][j2] -= fgt * aug[col][j2];
            }
        }
        for (int v = 0; v <= d; ++v) {
            c_tilde[verts[v]] += aug[v][d + 1];
            if (c_tilde[verts[v]] <= 0)
                throw std::runtime_error(
                    "sonc_certificate: singular-locus projection produced a nonpositive coefficient");
        }
    }

    DeltaSolution delta = solve_delta(family, rsup, c_tilde);

    // Circuits q_{j,b} at t = 1, pulled back through the rescaling and the
    // dimension reduction.
    for (int j : delta.support_j) {
        std::vector<LatticePoint> pts;
        for (int idx : family.simplices[j]) pts.push_back(rsup.plus[idx]);
        for (int bi = 0; bi < mminus; ++bi) {
            const LatticePoint& b = rsup.minus[bi];
            Rational cb_tilde = -c_tilde[kplus + bi];
            auto lambda = barycentric_coordinates(pts, b);
            CircuitPolynomial q;
            for (std::size_t v = 0; v < pts.size(); ++v) {
                if (lambda[v] == 0) continue;
                Rational coeff = delta.delta[j] * lambda[v] * cb_tilde /
                                 rat_monomial(x_rat, pts[v]);
                q.positive_points.push_back(prep.map.inverse(pts[v]));
                q.positive_coeffs.push_back(coeff);
            }
            Rational dneg = delta.delta[j] * cb_tilde /
                            (pow_rational(t_rat, prep.reduced_heights.at(kplus + bi)) *
                             rat_monomial(x_rat, b));
            q.negative_point = std::make_pair(prep.map.inverse(b), dneg);
            cert.circuits.push_back(std::move(q));
            cert.per_circuit_margin.push_back(0.0);  // filled below
        }
    }

    for (std::size_t i = 0; i < cert.circuits.size(); ++i) {
        const auto& q = cert.circuits[i];
        if (!q.negative_point) continue;
        cert.per_circuit_margin[i] = circuit_number(q) - to_double(q.negative_point->second);
    }

    // Coefficient-wise residual of the circuit sum against the input.
    std::map<LatticePoint, Rational> sums;
    for (const auto& q : cert.circuits) {
        for (std::size_t v = 0; v < q.positive_points.size(); ++v)
            sums[q.positive_points[v]] += q.positive_coeffs[v];
        if (q.negative_point) sums[q.negative_point->first] -= q.negative_point->second;
    }
    double residual = 0.0;
    for (int i = 0; i < f.num_terms(); ++i) {
        Rational want = f.exact_coeff(i);
        auto it = sums.find(f.support.point(i));
        Rational got = it == sums.end() ? Rational(0) : it->second;
        residual = std::max(residual, std::fabs(to_double(got - want)));
        if (it != sums.end()) sums.erase(it);
    }
    for (const auto& [e, v] : sums) residual = std::max(residual, std::fabs(to_double(v)));
    cert.residual = residual;
    return cert;
}

VerifyReport verify_certificate(const SoncCertificate& cert) {
    VerifyReport rep;
    std::map<LatticePoint, Rational> sums;
    for (std::size_t i = 0; i < cert.circuits.size(); ++i) {
        const auto& q = cert.circuits[i];
        try {
            if (!is_circuit_copositive(q)) {
                rep.failed_circuit = static_cast<int>(i);
                rep.details = "circuit " + std::to_string(i) + " violates d <= Theta";
                return rep;
            }
        } catch (const std::exception& e) {
            rep.failed_circuit = static_cast<int>(i);
            rep.details = "circuit " + std::to_string(i) + " is malformed: " + e.what();
            return rep;
        }
        for (std::size_t v = 0; v < q.positive_points.size(); ++v) {
            if (q.positive_coeffs[v] <= 0) {
                rep.failed_circuit = static_cast<int>(i);
                rep.details = "circuit " + std::to_string(i) + " has a nonpositive coefficient";
                return rep;
            }
            sums[q.positive_points[v]] += q.positive_coeffs[v];
        }
        if (q.negative_point) sums[q.negative_point->first] -= q.negative_point->second;
    }
    const Signomial& f = cert.target;
    double scale = coeff_scale(f);
    std::string worst_at;
    for (int i = 0; i < f.num_terms(); ++i) {
        Rational want = f.exact_coeff(i);
        auto it = sums.find(f.support.point(i));
        Rational got = it == sums.end() ? Rational(0) : it->second;
        double diff = std::fabs(to_double(got - want));
        if (diff > rep.residual) {
            rep.residual = diff;
            worst_at = "term " + std::to_string(i);
        }
        if (it != sums.end()) sums.erase(it);
    }
    for (const auto& [e, v] : sums) {
        double diff = std::fabs(to_double(v));
        if (diff > rep.residual) {
            rep.residual = diff;
            worst_at = "exponent outside the target support";
        }
    }
    if (rep.residual > 1e-8 * scale) {
        rep.details = "coefficient sum mismatch at " + worst_at;
        return rep;
    }
    rep.pass = true;
    rep.details = "ok";
    return rep;
}

}  // namespace copos
