#include "copos/krawczyk.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace copos {

namespace {

// Interval evaluation of H(1, .) and its (tau,y)-Jacobian over a box. All
// scalar factors pass through interval products so the enclosure is rigorous
// up to the one-ulp outward rounding of interval.hpp.
struct IvRows {
    std::vector<std::vector<Interval>> rows;
    bool finite = true;
};

IvRows eval_interval(const ParameterHomotopy& ph, const std::vector<Interval>& box,
                     bool with_jacobian) {
    const auto& sys = ph.sys;
    IvRows out;
    std::vector<Interval> exps(sys.m);
    for (int a = 0; a < sys.m; ++a) {
        Interval u = iscale(static_cast<double>(sys.heights[a]), box[0]);
        for (int j = 0; j < sys.n; ++j)
            u = u + iscale(static_cast<double>(sys.points[a][j]), box[j + 1]);
        exps[a] = iexp(u);
        out.finite = out.finite && exps[a].finite();
    }
    int nrows = sys.n + 1;
    int ncols = with_jacobian ? sys.n + 1 : 1;
    out.rows.assign(nrows, std::vector<Interval>(ncols * (with_jacobian ? 1 : 1)));
    for (int i = 0; i < nrows; ++i) {
        if (with_jacobian) {
            for (int col = 0; col < ncols; ++col) {
                Interval acc(0.0);
                for (int a = 0; a < sys.m; ++a) {
                    double weight = col == 0 ? static_cast<double>(sys.heights[a])
                                             : static_cast<double>(sys.points[a][col - 1]);
                    Interval k = Interval(static_cast<double>(sys.c_rows[i][a])) *
                                 Interval(ph.c_target[a]) * Interval(weight);
                    acc = acc + k * exps[a];
                }
                out.rows[i][col] = acc;
                out.finite = out.finite && acc.finite();
            }
        } else {
            Interval acc(0.0);
            for (int a = 0; a < sys.m; ++a) {
                Interval k = Interval(static_cast<double>(sys.c_rows[i][a])) *
                             Interval(ph.c_target[a]);
                acc = acc + k * exps[a];
            }
            out.rows[i][0] = acc;
            out.finite = out.finite && acc.finite();
        }
    }
    return out;
}

bool attempt(const ParameterHomotopy& ph, const std::vector<double>& z, double radius,
             CertifiedBox* result) {
    const int dim = ph.dim();
    std::vector<Interval> zpt(dim), box(dim);
    for (int i = 0; i < dim; ++i) {
        zpt[i] = Interval(z[i]);
        box[i] = Interval(z[i] - radius, z[i] + radius);
    }
    IvRows hz = eval_interval(ph, zpt, false);
    if (!hz.finite) return false;
    IvRows jb = eval_interval(ph, box, true);
    if (!jb.finite) return false;

    // midpoint Jacobian inverse (any nonsingular Y keeps the operator valid)
    std::vector<double> y(z.begin() + 1, z.end());
    HomotopyJacobian jm = jac_homotopy(ph, 1.0, z[0], y);
    if (jm.overflow) return false;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jm.j);
    if (!lu.isInvertible()) return false;
    Eigen::MatrixXd ymat = lu.inverse();
    if (!ymat.allFinite()) return false;

    // K = z - Y H(z) + (I - Y J(B)) ([-r, r])
    bool inside = true;
    std::vector<Interval> k(dim);
    for (int i = 0; i < dim; ++i) {
        Interval acc(z[i]);
        for (int j = 0; j < dim; ++j) acc = acc - Interval(ymat(i, j)) * hz.rows[j][0];
        for (int j = 0; j < dim; ++j) {
            Interval e(i == j ? 1.0 : 0.0);
            for (int l = 0; l < dim; ++l) e = e - Interval(ymat(i, l)) * jb.rows[l][j];
            acc = acc + e * Interval(-radius, radius);
        }
        k[i] = acc;
        inside = inside && acc.strictly_inside(box[i]);
    }
    if (!inside) return false;

    result->center = z;
    result->radius.assign(dim, radius);
    result->unique = true;
    // the zero lies in K cap B; its tau range maps through outward exp
    Interval tau_range;
    if (!iintersect(k[0], box[0], &tau_range)) return false;
    result->t_interval = iexp(tau_range);
    return result->t_interval.finite();
}

}  // namespace

CertifiedBox krawczyk_certify(const ParameterHomotopy& ph, const std::vector<double>& center,
                              double initial_radius) {
    CertifiedBox out;
    out.center = center;
    out.radius.assign(center.size(), initial_radius);
    const double factors[6] = {1.0, 4.0, 0.25, 16.0, 1.0 / 16.0, 64.0};
    for (double f : factors) {
        if (attempt(ph, center, initial_radius * f, &out)) return out;
    }
    out.unique = false;
    return out;
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Copositive: return "Copositive";
        case VerdictKind::NotCopositive: return "NotCopositive";
        case VerdictKind::Inconclusive: return "Inconclusive";
        case VerdictKind::TriviallyCopositive: return "TriviallyCopositive";
        case VerdictKind::TriviallyNegative: return "TriviallyNegative";
    }
    return "unknown";
}

Verdict verdict_from_interval(const std::optional<Interval>& t_interval,
                              const std::string& context) {
    Verdict v;
    v.t_interval = t_interval;
    if (!t_interval) {
        v.kind = VerdictKind::Inconclusive;
        v.certified = false;
        v.details = context.empty() ? "no certified enclosure of t*" : context;
        return v;
    }
    if (t_interval->lo > 1.0) {
        v.kind = VerdictKind::Copositive;
        v.certified = true;
        v.details = "certified interval around t* lies above 1";
    } else if (t_interval->hi < 1.0) {
        v.kind = VerdictKind::NotCopositive;
        v.certified = true;
        v.details = "certified interval around t* lies below 1";
    } else {
        v.kind = VerdictKind::Inconclusive;
        v.certified = false;
        v.details = "certified interval around t* contains 1" +
                    (context.empty() ? std::string() : "; " + context);
    }
    return v;
}

}  // namespace copos
