#include "copos/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "copos/ratlp.hpp"

namespace copos {

namespace {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

Rational dot(const RatVec& v, const RatVec& w) {
    Rational s(0);
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

RatVec to_rat(const LatticePoint& p) {
    RatVec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = Rational(p[i]);
    return v;
}

// Row echelon form in place; returns rank, records pivot columns.
int echelon(RatMat& m, std::vector<int>* pivot_cols = nullptr) {
    int rows = static_cast<int>(m.size());
    int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        Rational p = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

int rank_of_differences(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("affine_dim: empty point list");
    RatMat m;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RatVec row(points[i].size());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = Rational(points[i][j] - points[0][j]);
        m.push_back(std::move(row));
    }
    if (m.empty()) return 0;
    return echelon(m);
}

// Hermite-style row reduction over the integers; the nonzero rows span the
// same lattice as the input rows.
std::vector<std::vector<BigInt>> hermite_basis(std::vector<std::vector<BigInt>> m) {
    if (m.empty()) return {};
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        while (true) {
            int best = -1;
            for (int i = r; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                if (best < 0 || abs(m[i][c]) < abs(m[best][c])) best = i;
            }
            if (best < 0) break;
            std::swap(m[r], m[best]);
            bool cleared = true;
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                BigInt q = m[i][c] / m[r][c];  // truncated division is fine here
                for (int j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (int j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        ++r;
    }
    m.resize(r);
    return m;
}

struct ReducedGeometry {
    AffineLatticeMap map;
    // Left inverse W (d x n) with W * B^T = Id; reduced coords of p are W(p - p0).
    RatMat w;
    int d = 0;

    RatVec reduce_point_rational(const RatVec& p_amb) const {
        RatVec diff(p_amb.size());
        for (std::size_t j = 0; j < p_amb.size(); ++j) diff[j] = p_amb[j] - Rational(map.base[j]);
        RatVec q(d, Rational(0));
        for (int i = 0; i < d; ++i) q[i] = dot(w[i], diff);
        return q;
    }

    // nullopt when the point is off the affine hull.
    std::optional<RatVec> try_reduce(const RatVec& p_amb) const {
        RatVec q = reduce_point_rational(p_amb);
        // verify p - p0 == B^T q
        for (std::size_t j = 0; j < p_amb.size(); ++j) {
            Rational rec(0);
            for (int i = 0; i < d; ++i) rec += q[i] * Rational(map.basis[i][j]);
            if (rec != p_amb[j] - Rational(map.base[j])) return std::nullopt;
        }
        return q;
    }

    RatVec lift_normal(const RatVec& v_red, const Rational& w_red, Rational* offset_amb) const {
        int n = map.ambient_dim;
        RatVec v_amb(n, Rational(0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < d; ++i) v_amb[j] += w[i][j] * v_red[i];
        Rational shift(0);
        for (int j = 0; j < n; ++j) shift += v_amb[j] * Rational(map.base[j]);
        *offset_amb = w_red - shift;
        return v_amb;
    }
};

ReducedGeometry reduce_geometry(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("reduce_geometry: empty point list");
    int n = static_cast<int>(points[0].size());
    ReducedGeometry g;
    g.map.ambient_dim = n;
    g.map.base = points[0];
    std::vector<std::vector<BigInt>> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<BigInt> row(n);
        for (int j = 0; j < n; ++j) row[j] = BigInt(points[i][j]) - BigInt(points[0][j]);
        diffs.push_back(std::move(row));
    }
    auto basis = hermite_basis(std::move(diffs));
    g.d = static_cast<int>(basis.size());
    for (const auto& row : basis) {
        LatticePoint b(n);
        for (int j = 0; j < n; ++j) b[j] = row[j].convert_to<long long>();
        g.map.basis.push_back(std::move(b));
    }
    // Left inverse: pick d coordinate rows of B^T forming an invertible block.
    RatMat bt(n, RatVec(g.d, Rational(0)));
    for (int i = 0; i < g.d; ++i)
        for (int j = 0; j < n; ++j) bt[j][i] = Rational(g.map.basis[i][j]);
    std::vector<int> pivot_rows;
    {
        // echelon over columns: transpose so pivot columns of B give row picks
        RatMat btt(g.d, RatVec(n, Rational(0)));
        for (int i = 0; i < g.d; ++i)
            for (int j = 0; j < n; ++j) btt[i][j] = bt[j][i];
        echelon(btt, &pivot_rows);
    }
    if (static_cast<int>(pivot_rows.size()) != g.d)
        throw std::logic_error("reduce_geometry: Hermite basis lost rank");
    // Invert the d x d block, solve R * X = Id.
    RatMat aug(g.d, RatVec(2 * g.d, Rational(0)));
    for (int i = 0; i < g.d; ++i) {
        for (int k = 0; k < g.d; ++k) aug[i][k] = bt[pivot_rows[i]][k];
        aug[i][g.d + i] = 1;
    }
    if (echelon(aug) != g.d) throw std::logic_error("reduce_geometry: singular pivot block");
    g.w.assign(g.d, RatVec(n, Rational(0)));
    for (int k = 0; k < g.d; ++k)
        for (int i = 0; i < g.d; ++i) g.w[k][pivot_rows[i]] = aug[k][g.d + i];
    return g;
}

// Primitive integer normal of the hyperplane through affinely independent
// points (in full-dimensional rational coordinates); first nonzero entry
// positive. Returns false when the points do not span a hyperplane.
bool hyperplane_through(const std::vector<RatVec>& pts, RatVec* normal, Rational* offset) {
    int d = static_cast<int>(pts[0].size());
    RatMat m;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVec row(d);
        for (int j = 0; j < d; ++j) row[j] = pts[i][j] - pts[0][j];
        m.push_back(std::move(row));
    }
    std::vector<int> pivots;
    int rank = m.empty() ? 0 : echelon(m, &pivots);
    if (rank != d - 1) return false;
    // one free column -> nullspace vector
    std::vector<bool> is_pivot(d, false);
    for (int c : pivots) is_pivot[c] = true;
    int free_col = -1;
    for (int c = 0; c < d; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    RatVec v(d, Rational(0));
    v[free_col] = 1;
    for (int i = 0; i < rank; ++i) v[pivots[i]] = -m[i][free_col];
    // scale to a primitive integer vector
    BigInt lcm(1);
    for (const auto& e : v) lcm = boost::multiprecision::lcm(lcm, denominator(e));
    std::vector<BigInt> vi(d);
    for (int j = 0; j < d; ++j) vi[j] = numerator(v[j]) * (lcm / denominator(v[j]));
    BigInt g(0);
    for (const auto& e : vi) g = boost::multiprecision::gcd(g, abs(e));
    if (g == 0) return false;
    int lead = 0;
    while (vi[lead] == 0) ++lead;
    bool flip = vi[lead] < 0;
    for (int j = 0; j < d; ++j) {
        BigInt e = vi[j] / g;
        v[j] = Rational(flip ? -e : e);
    }
    *normal = v;
    *offset = -dot(v, pts[0]);
    return true;
}

struct Hyperplane {
    RatVec normal;  // reduced coordinates, primitive
    Rational offset;
    std::vector<int> spanning;  // first d-subset that produced it
};

bool hyperplane_less(const Hyperplane& a, const Hyperplane& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
}

// All hyperplanes affinely spanned by d-subsets of the given points
// (full-dimensional reduced coordinates), deduplicated, in canonical order.
std::vector<Hyperplane> spanning_hyperplanes(const std::vector<RatVec>& pts, int d) {
    std::vector<Hyperplane> out;
    std::set<std::pair<RatVec, Rational>> seen;
    int m = static_cast<int>(pts.size());
    // iterate d-subsets in lexicographic order
    std::vector<int> stack;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(stack.size()) == d) {
            std::vector<RatVec> sub;
            for (int i : stack) sub.push_back(pts[i]);
            RatVec v;
            Rational w;
            if (hyperplane_through(sub, &v, &w)) {
                if (seen.insert({v, w}).second) out.push_back({v, w, stack});
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            stack.push_back(i);
            rec(i + 1);
            stack.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), hyperplane_less);
    return out;
}

struct FacetData {
    RatVec normal;  // oriented so every point has value >= 0
    Rational offset;
    std::vector<int> zero_set;  // indices of points on the facet
};

// Facets of conv(pts) for a full-dimensional configuration in reduced
// coordinates, by exhaustive d-subset search.
std::vector<FacetData> facets_of(const std::vector<RatVec>& pts, int d) {
    std::vector<FacetData> out;
    std::set<std::vector<int>> seen;
    for (const auto& h : spanning_hyperplanes(pts, d)) {
        bool pos = false, neg = false;
        std::vector<int> zero;
        std::vector<int> sign(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational val = dot(h.normal, pts[i]) + h.offset;
            sign[i] = val == 0 ? 0 : (val > 0 ? 1 : -1);
            if (sign[i] > 0) pos = true;
            if (sign[i] < 0) neg = true;
            if (sign[i] == 0) zero.push_back(static_cast<int>(i));
        }
        if (pos && neg) continue;
        if (!pos && !neg) continue;  // cannot happen for full-dimensional pts
        FacetData f;
        f.zero_set = zero;
        if (neg) {
            f.normal.resize(h.normal.size());
            for (std::size_t j = 0; j < h.normal.size(); ++j) f.normal[j] = -h.normal[j];
            f.offset = -h.offset;
        } else {
            f.normal = h.normal;
            f.offset = h.offset;
        }
        if (seen.insert(f.zero_set).second) out.push_back(std::move(f));
    }
    return out;
}

int affine_rank_of_subset(const std::vector<LatticePoint>& all, const std::vector<int>& idx) {
    std::vector<LatticePoint> pts;
    for (int i : idx) pts.push_back(all[i]);
    return rank_of_differences(pts);
}

}  // namespace

SignedSupport::SignedSupport(std::vector<LatticePoint> plus_points, std::vector<LatticePoint> minus_points)
    : plus(std::move(plus_points)), minus(std::move(minus_points)) {
    if (plus.empty() && minus.empty()) throw std::invalid_argument("signed support: no points");
    ambient_dim = static_cast<int>((plus.empty() ? minus : plus)[0].size());
    for (const auto& p : plus)
        if (static_cast<int>(p.size()) != ambient_dim)
            throw std::invalid_argument("signed support: inconsistent point dimensions");
    for (const auto& p : minus)
        if (static_cast<int>(p.size()) != ambient_dim)
            throw std::invalid_argument("signed support: inconsistent point dimensions");
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    auto has_dup = [](const std::vector<LatticePoint>& v) {
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_dup(plus) || has_dup(minus))
        throw std::invalid_argument("signed support: duplicate exponent vectors");
    for (const auto& p : minus)
        if (std::binary_search(plus.begin(), plus.end(), p))
            throw std::invalid_argument("signed support: a_plus and a_minus overlap");
    std::vector<LatticePoint> all = plus;
    all.insert(all.end(), minus.begin(), minus.end());
    affine_dim_ = rank_of_differences(all);
}

const LatticePoint& SignedSupport::point(int i) const {
    if (i < num_plus()) return plus[i];
    return minus[i - num_plus()];
}

int SignedSupport::index_of(const LatticePoint& p) const {
    auto it = std::lower_bound(plus.begin(), plus.end(), p);
    if (it != plus.end() && *it == p) return static_cast<int>(it - plus.begin());
    it = std::lower_bound(minus.begin(), minus.end(), p);
    if (it != minus.end() && *it == p) return num_plus() + static_cast<int>(it - minus.begin());
    return -1;
}

int affine_dim(const std::vector<LatticePoint>& points) { return rank_of_differences(points); }

LatticePoint AffineLatticeMap::forward(const LatticePoint& p) const {
    int n = ambient_dim;
    std::vector<BigInt> v(n);
    for (int j = 0; j < n; ++j) v[j] = BigInt(p[j]) - BigInt(base[j]);
    int d = static_cast<int>(basis.size());
    // back-substitute along the echelon structure of the Hermite basis
    std::vector<BigInt> x(d, 0);
    std::vector<int> pivot(d, -1);
    for (int i = 0; i < d; ++i) {
        int c = 0;
        while (c < n && basis[i][c] == 0) ++c;
        pivot[i] = c;
    }
    for (int i = 0; i < d; ++i) {
        BigInt acc = v[pivot[i]];
        for (int j = 0; j < i; ++j) acc -= x[j] * basis[j][pivot[i]];
        if (acc % basis[i][pivot[i]] != 0)
            throw std::invalid_argument("affine lattice map: point is not in the difference lattice");
        x[i] = acc / basis[i][pivot[i]];
    }
    for (int j = 0; j < n; ++j) {
        BigInt rec(0);
        for (int i = 0; i < d; ++i) rec += x[i] * basis[i][j];
        if (rec != v[j])
            throw std::invalid_argument("affine lattice map: point is off the affine hull");
    }
    LatticePoint q(d);
    for (int i = 0; i < d; ++i) q[i] = x[i].convert_to<long long>();
    return q;
}

LatticePoint AffineLatticeMap::inverse(const LatticePoint& q) const {
    LatticePoint p = base;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) p[j] += q[i] * basis[i][j];
    return p;
}

std::vector<Rational> AffineLatticeMap::inverse_rational(const std::vector<Rational>& q) const {
    std::vector<Rational> p(ambient_dim);
    for (int j = 0; j < ambient_dim; ++j) p[j] = Rational(base[j]);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) p[j] += q[i] * Rational(basis[i][j]);
    return p;
}

bool AffineLatticeMap::is_identity() const {
    if (static_cast<int>(basis.size()) != ambient_dim) return false;
    for (long long b : base)
        if (b != 0) return false;
    for (int i = 0; i < ambient_dim; ++i)
        for (int j = 0; j < ambient_dim; ++j)
            if (basis[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

std::pair<AffineLatticeMap, SignedSupport> reduce_to_full_dim(const SignedSupport& support) {
    int n = support.ambient_dim;
    int d = support.affine_dim();
    AffineLatticeMap map;
    map.ambient_dim = n;
    if (d == n) {
        map.base.assign(n, 0);
        map.basis.assign(n, LatticePoint(n, 0));
        for (int i = 0; i < n; ++i) map.basis[i][i] = 1;
        return {map, support};
    }
    std::vector<LatticePoint> all = support.plus;
    all.insert(all.end(), support.minus.begin(), support.minus.end());
    ReducedGeometry g = reduce_geometry(all);
    map = g.map;
    std::vector<LatticePoint> plus_red, minus_red;
    for (const auto& p : support.plus) plus_red.push_back(map.forward(p));
    for (const auto& p : support.minus) minus_red.push_back(map.forward(p));
    return {map, SignedSupport(std::move(plus_red), std::move(minus_red))};
}

std::vector<Rational> barycentric_coordinates(const std::vector<LatticePoint>& simplex,
                                              const std::vector<Rational>& b) {
    if (simplex.empty()) throw std::invalid_argument("barycentric_coordinates: empty simplex");
    int n = static_cast<int>(simplex[0].size());
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("barycentric_coordinates: dimension mismatch");
    int k = static_cast<int>(simplex.size());
    // [ 1 ... 1 | 1 ; a_1 ... a_k | b ]
    RatMat aug(n + 1, RatVec(k + 1, Rational(0)));
    for (int j = 0; j < k; ++j) {
        aug[0][j] = 1;
        for (int i = 0; i < n; ++i) aug[i + 1][j] = Rational(simplex[j][i]);
    }
    aug[0][k] = 1;
    for (int i = 0; i < n; ++i) aug[i + 1][k] = b[i];
    std::vector<int> pivots;
    echelon(aug, &pivots);
    int rank_coef = 0, rank_aug = static_cast<int>(pivots.size());
    for (int c : pivots)
        if (c < k) ++rank_coef;
    if (rank_coef < k) throw std::invalid_argument("barycentric_coordinates: degenerate simplex");
    if (rank_aug > rank_coef)
        throw std::invalid_argument("barycentric_coordinates: point outside the affine hull");
    RatVec lambda(k, Rational(0));
    for (int i = 0; i < rank_coef; ++i) lambda[pivots[i]] = aug[i][k];
    return lambda;
}

std::vector<Rational> barycentric_coordinates(const std::vector<LatticePoint>& simplex,
                                              const LatticePoint& b) {
    return barycentric_coordinates(simplex, to_rat(b));
}

std::vector<int> hull_vertices(const std::vector<LatticePoint>& points) {
    if (points.empty()) throw std::invalid_argument("hull_vertices: empty point list");
    int d = rank_of_differences(points);
    if (d == 0) return {0};
    ReducedGeometry g = reduce_geometry(points);
    std::vector<RatVec> red;
    for (const auto& p : points) red.push_back(to_rat(g.map.forward(p)));
    auto facets = facets_of(red, d);
    std::vector<int> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        // vertex iff the intersection of all facets through the point is the point alone
        std::vector<bool> survives(points.size(), true);
        bool on_some = false;
        for (const auto& f : facets) {
            if (std::find(f.zero_set.begin(), f.zero_set.end(), static_cast<int>(i)) == f.zero_set.end())
                continue;
            on_some = true;
            std::vector<bool> next(points.size(), false);
            for (int z : f.zero_set) next[z] = survives[z];
            survives = next;
        }
        if (!on_some) continue;
        int count = 0;
        for (bool s : survives) count += s ? 1 : 0;
        if (count == 1 && survives[i]) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<Face> enumerate_faces(const SignedSupport& support) {
    int m = support.num_points();
    int n = support.ambient_dim;
    int d = support.affine_dim();
    std::vector<LatticePoint> all;
    for (int i = 0; i < m; ++i) all.push_back(support.point(i));

    std::vector<Face> faces;
    Face full;
    full.point_indices.resize(m);
    for (int i = 0; i < m; ++i) full.point_indices[i] = i;
    full.normal.assign(n, Rational(0));
    full.offset = 0;
    full.dim = d;
    faces.push_back(full);
    if (d == 0) return faces;

    ReducedGeometry g = reduce_geometry(all);
    std::vector<RatVec> red;
    for (const auto& p : all) red.push_back(to_rat(g.map.forward(p)));
    auto facets = facets_of(red, d);

    struct Lifted {
        std::vector<int> zero_set;
        RatVec normal_amb;
        Rational offset_amb;
    };
    std::vector<Lifted> lifted;
    for (const auto& f : facets) {
        Lifted lf;
        lf.zero_set = f.zero_set;
        lf.normal_amb = g.lift_normal(f.normal, f.offset, &lf.offset_amb);
        lifted.push_back(std::move(lf));
    }

    // Closure of facet intersections. The supporting normal of an
    // intersection is the sum of the normals of the facets containing it.
    std::map<std::vector<int>, std::pair<RatVec, Rational>> seen;
    auto normal_for = [&](const std::vector<int>& idx) {
        RatVec v(n, Rational(0));
        Rational w(0);
        for (const auto& lf : lifted) {
            if (!std::includes(lf.zero_set.begin(), lf.zero_set.end(), idx.begin(), idx.end())) continue;
            for (int j = 0; j < n; ++j) v[j] += lf.normal_amb[j];
            w += lf.offset_amb;
        }
        return std::make_pair(v, w);
    };
    std::vector<std::vector<int>> frontier;
    for (const auto& lf : lifted) {
        if (seen.emplace(lf.zero_set, normal_for(lf.zero_set)).second) frontier.push_back(lf.zero_set);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& fidx : frontier) {
            for (const auto& lf : lifted) {
                std::vector<int> inter;
                std::set_intersection(fidx.begin(), fidx.end(), lf.zero_set.begin(), lf.zero_set.end(),
                                      std::back_inserter(inter));
                if (inter.empty() || inter == fidx) continue;
                if (seen.emplace(inter, normal_for(inter)).second) next.push_back(inter);
            }
        }
        frontier = std::move(next);
    }
    for (const auto& [idx, cert] : seen) {
        Face f;
        f.point_indices = idx;
        f.normal = cert.first;
        f.offset = cert.second;
        f.dim = affine_rank_of_subset(all, idx);
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.point_indices < b.point_indices;
    });
    return faces;
}

Face smallest_face_containing(const SignedSupport& support, const std::vector<LatticePoint>& subset) {
    auto faces = enumerate_faces(support);
    // facets = faces of dimension d-1; for d = 0 only the trivial face exists
    int d = support.affine_dim();
    std::vector<const Face*> facets;
    for (const auto& f : faces)
        if (f.dim == d - 1) facets.push_back(&f);

    std::vector<RatVec> subset_rat;
    for (const auto& p : subset) {
        if (static_cast<int>(p.size()) != support.ambient_dim)
            throw std::invalid_argument("smallest_face_containing: dimension mismatch");
        subset_rat.push_back(to_rat(p));
    }
    // membership in the affine hull
    std::vector<LatticePoint> all;
    for (int i = 0; i < support.num_points(); ++i) all.push_back(support.point(i));
    ReducedGeometry g = reduce_geometry(all);
    for (const auto& q : subset_rat)
        if (!g.try_reduce(q))
            throw std::invalid_argument("smallest_face_containing: point outside conv(A)");

    std::vector<int> active;  // all points of A lying on every facet that contains the subset
    bool any_facet = false;
    std::vector<bool> survives(support.num_points(), true);
    for (const Face* f : facets) {
        bool contains_subset = true;
        bool outside = false;
        for (const auto& q : subset_rat) {
            Rational val = dot(f->normal, q) + f->offset;
            if (val < 0) outside = true;
            if (val != 0) contains_subset = false;
        }
        if (outside) throw std::invalid_argument("smallest_face_containing: point outside conv(A)");
        if (!contains_subset) continue;
        any_facet = true;
        std::vector<bool> next(support.num_points(), false);
        for (int z : f->point_indices) next[z] = survives[z];
        survives = next;
    }
    if (!any_facet) {
        for (const auto& f : faces)
            if (f.dim == d) return f;
        throw std::logic_error("smallest_face_containing: full face missing");
    }
    std::vector<int> idx;
    for (int i = 0; i < support.num_points(); ++i)
        if (survives[i]) idx.push_back(i);
    for (const auto& f : faces)
        if (f.point_indices == idx) return f;
    throw std::logic_error("smallest_face_containing: intersection is not in the face list");
}

std::vector<Face> truncation_face_set_J(const Face& gamma, const SignedSupport& support) {
    auto faces = enumerate_faces(support);
    std::vector<Face> out;
    for (const auto& f : faces) {
        if (!std::includes(gamma.point_indices.begin(), gamma.point_indices.end(),
                           f.point_indices.begin(), f.point_indices.end()))
            continue;
        bool meets_minus = false;
        for (int i : f.point_indices)
            if (support.is_minus_index(i)) meets_minus = true;
        if (meets_minus) out.push_back(f);
    }
    return out;
}

namespace {

struct PlusArrangement {
    ReducedGeometry geometry;
    std::vector<RatVec> plus_red;
    std::vector<RatVec> minus_red;
    std::vector<Hyperplane> hyperplanes;
    std::vector<FacetData> plus_facets;
    int d = 0;
};

// Shared setup for nonseparability, witnesses and the simplex family.
// Requires aff(A+) == aff(A); callers check dimensions first.
PlusArrangement build_plus_arrangement(const SignedSupport& support) {
    std::vector<LatticePoint> all;
    for (int i = 0; i < support.num_points(); ++i) all.push_back(support.point(i));
    PlusArrangement arr;
    arr.geometry = reduce_geometry(all);
    arr.d = arr.geometry.d;
    for (const auto& p : support.plus) arr.plus_red.push_back(to_rat(arr.geometry.map.forward(p)));
    for (const auto& p : support.minus) arr.minus_red.push_back(to_rat(arr.geometry.map.forward(p)));
    arr.hyperplanes = spanning_hyperplanes(arr.plus_red, arr.d);
    arr.plus_facets = facets_of(arr.plus_red, arr.d);
    return arr;
}

HyperplaneReport make_report(const PlusArrangement& arr, const Hyperplane& h) {
    HyperplaneReport rep;
    rep.spanning_indices = h.spanning;
    Rational w_amb;
    rep.normal = arr.geometry.lift_normal(h.normal, h.offset, &w_amb);
    rep.offset = w_amb;
    for (const auto& b : arr.minus_red) {
        Rational val = dot(h.normal, b) + h.offset;
        rep.minus_signs.push_back(val == 0 ? 0 : (val > 0 ? 1 : -1));
    }
    return rep;
}

}  // namespace

NonseparabilityResult is_nonseparable(const SignedSupport& support) {
    if (support.minus.empty()) throw std::invalid_argument("is_nonseparable: a_minus is empty");
    NonseparabilityResult res;
    int d = support.affine_dim();
    if (affine_dim(support.plus) != d) {
        res.nonseparable = false;
        res.reason = "a_minus leaves the affine hull of a_plus";
        return res;
    }
    PlusArrangement arr = build_plus_arrangement(support);
    for (std::size_t bi = 0; bi < arr.minus_red.size(); ++bi) {
        for (const auto& f : arr.plus_facets) {
            if (dot(f.normal, arr.minus_red[bi]) + f.offset <= 0) {
                res.nonseparable = false;
                res.reason = "a_minus point " + std::to_string(bi) +
                             " is not in relint(conv(a_plus))";
                return res;
            }
        }
    }
    for (const auto& h : arr.hyperplanes) {
        bool pos = false, neg = false;
        for (const auto& b : arr.minus_red) {
            Rational val = dot(h.normal, b) + h.offset;
            if (val > 0) pos = true;
            if (val < 0) neg = true;
        }
        if (pos && neg) {
            res.nonseparable = false;
            res.violation = make_report(arr, h);
            res.reason = "a spanning hyperplane strictly separates a_minus";
            return res;
        }
    }
    res.nonseparable = true;
    return res;
}

CellWitness find_cell_witness(const SignedSupport& support) {
    auto nsep = is_nonseparable(support);
    if (!nsep.nonseparable)
        throw std::invalid_argument("find_cell_witness: support is separable (" + nsep.reason + ")");
    PlusArrangement arr = build_plus_arrangement(support);
    const int d = arr.d;
    const int hk = static_cast<int>(arr.hyperplanes.size());

    std::vector<int> forced(hk, 0);  // +1/-1 forced, 0 ambiguous
    std::vector<int> ambiguous;
    for (int i = 0; i < hk; ++i) {
        bool pos = false, neg = false;
        for (const auto& b : arr.minus_red) {
            Rational val = dot(arr.hyperplanes[i].normal, b) + arr.hyperplanes[i].offset;
            if (val > 0) pos = true;
            if (val < 0) neg = true;
        }
        if (pos) forced[i] = 1;
        else if (neg) forced[i] = -1;
        else ambiguous.push_back(i);
    }

    // Max-slack LP for a fixed side assignment. Variables:
    // q+ (d), q- (d), m, one slack per constraint.
    auto try_sides = [&](const std::vector<int>& sides) -> std::optional<RatVec> {
        int cons = hk + static_cast<int>(arr.plus_facets.size());
        int nv = 2 * d + 1 + cons;
        LpProblem lp;
        lp.a.assign(cons, std::vector<Rational>(nv, Rational(0)));
        lp.b.assign(cons, Rational(0));
        lp.c.assign(nv, Rational(0));
        lp.c[2 * d] = -1;  // maximize m
        int row = 0;
        auto add_row = [&](const RatVec& v, const Rational& w, int sigma) {
            for (int j = 0; j < d; ++j) {
                lp.a[row][j] = sigma * v[j];
                lp.a[row][d + j] = -sigma * v[j];
            }
            lp.a[row][2 * d] = -1;
            lp.a[row][2 * d + 1 + row] = -1;
            lp.b[row] = -Rational(sigma) * w;
            ++row;
        };
        for (int i = 0; i < hk; ++i) add_row(arr.hyperplanes[i].normal, arr.hyperplanes[i].offset, sides[i]);
        for (const auto& f : arr.plus_facets) add_row(f.normal, f.offset, 1);
        LpSolution sol = solve_lp(lp);
        if (sol.status != LpStatus::Optimal || -sol.objective <= 0) return std::nullopt;
        RatVec q(d);
        for (int j = 0; j < d; ++j) q[j] = sol.x[j] - sol.x[d + j];
        return q;
    };

    std::vector<int> sides = forced;
    int na = static_cast<int>(ambiguous.size());
    // Lexicographic backtracking over ambiguous hyperplanes, "+" side first.
    for (long long mask = 0; mask < (1LL << na); ++mask) {
        for (int k = 0; k < na; ++k) sides[ambiguous[k]] = (mask >> k) & 1 ? -1 : 1;
        auto q = try_sides(sides);
        if (q) {
            CellWitness w;
            w.point = arr.geometry.map.inverse_rational(*q);
            for (int k = 0; k < na; ++k) w.side_choices.emplace_back(ambiguous[k], sides[ambiguous[k]]);
            return w;
        }
    }
    throw std::logic_error(
        "find_cell_witness: no full-dimensional cell found for a nonseparable support (bug)");
}

SimplexFamily simplices_containing_cell(const SignedSupport& support, const CellWitness& witness) {
    int d = support.affine_dim();
    int k = support.num_plus();
    SimplexFamily fam;
    fam.witness = witness;
    std::vector<int> stack;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(stack.size()) == d + 1) {
            std::vector<LatticePoint> pts;
            for (int i : stack) pts.push_back(support.plus[i]);
            if (rank_of_differences(pts) != d) return;
            auto lambda = barycentric_coordinates(pts, witness.point);
            for (const auto& l : lambda)
                if (l <= 0) return;
            fam.simplices.push_back(stack);
            return;
        }
        for (int i = start; i < k; ++i) {
            stack.push_back(i);
            rec(i + 1);
            stack.pop_back();
        }
    };
    rec(0);
    return fam;
}

}  // namespace copos
