#include <doctest.h>

#include <algorithm>
#include <random>

#include "copos/lattice.hpp"

using namespace copos;

namespace {

const std::vector<LatticePoint> kSquare = {{0, 0}, {2, 0}, {0, 2}, {2, 2}};
const LatticePoint kCenter = {1, 1};

SignedSupport square_center() { return SignedSupport(kSquare, {kCenter}); }

}  // namespace

TEST_CASE("affine_dim") {
    CHECK(affine_dim({{0, 0}}) == 0);
    CHECK(affine_dim({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}}) == 2);
    CHECK(affine_dim({{0, 0}, {1, 1}, {2, 2}}) == 1);
}

TEST_CASE("affine_dim is invariant under permutation and translation") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> coord(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        int m = 2 + static_cast<int>(rng() % 5);
        std::vector<LatticePoint> pts;
        for (int i = 0; i < m; ++i) {
            LatticePoint p(n);
            for (auto& c : p) c = coord(rng);
            pts.push_back(p);
        }
        int d = affine_dim(pts);
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(affine_dim(shuffled) == d);
        LatticePoint shift(n);
        for (auto& c : shift) c = coord(rng);
        auto translated = pts;
        for (auto& p : translated)
            for (int j = 0; j < n; ++j) p[j] += shift[j];
        CHECK(affine_dim(translated) == d);
    }
}

TEST_CASE("hull_vertices") {
    std::vector<LatticePoint> pts = {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}};
    CHECK(hull_vertices(pts) == std::vector<int>{0, 1, 2, 3});
    CHECK(hull_vertices({{5, 7}}) == std::vector<int>{0});
    CHECK(hull_vertices({{0}, {1}, {2}}) == std::vector<int>{0, 2});
}

TEST_CASE("enumerate_faces on the square plus center") {
    auto faces = enumerate_faces(square_center());
    int v = 0, e = 0, f2 = 0;
    for (const auto& f : faces) {
        if (f.dim == 0) ++v;
        if (f.dim == 1) ++e;
        if (f.dim == 2) ++f2;
    }
    CHECK(v == 4);
    CHECK(e == 4);
    CHECK(f2 == 1);
}

TEST_CASE("enumerate_faces on a triangle and a fat segment") {
    SignedSupport tri({{0, 0}, {2, 0}, {0, 2}}, {});
    auto faces = enumerate_faces(tri);
    CHECK(faces.size() == 7);  // 3 + 3 + 1

    SignedSupport seg({{0}, {2}}, {{1}});
    auto sfaces = enumerate_faces(seg);
    int v = 0, e = 0;
    for (const auto& f : sfaces) {
        if (f.dim == 0) ++v;
        if (f.dim == 1) ++e;
    }
    CHECK(v == 2);
    CHECK(e == 1);
}

TEST_CASE("face normal certificates verify exactly") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long long> coord(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int m = 3 + static_cast<int>(rng() % 4);
        std::vector<LatticePoint> pts;
        for (int i = 0; i < m; ++i) {
            LatticePoint p(n);
            for (auto& c : p) c = coord(rng);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        if (pts.size() < 2) continue;
        SignedSupport sup(pts, {});
        for (const auto& face : enumerate_faces(sup)) {
            for (int i = 0; i < sup.num_points(); ++i) {
                Rational val = face.offset;
                for (int j = 0; j < sup.ambient_dim; ++j)
                    val += face.normal[j] * Rational(sup.point(i)[j]);
                bool on_face = std::binary_search(face.point_indices.begin(),
                                                  face.point_indices.end(), i);
                if (on_face)
                    CHECK(val == 0);
                else
                    CHECK(val > 0);
            }
        }
    }
}

TEST_CASE("smallest_face_containing") {
    auto sup = square_center();
    SUBCASE("interior point gives the full square") {
        auto f = smallest_face_containing(sup, {{1, 1}});
        CHECK(f.dim == 2);
        CHECK(f.point_indices.size() == 5);
    }
    SUBCASE("edge midpoint gives the edge") {
        auto f = smallest_face_containing(sup, {{1, 0}});
        CHECK(f.dim == 1);
    }
    SUBCASE("hull vertex gives the vertex face") {
        auto f = smallest_face_containing(sup, {{0, 0}});
        CHECK(f.dim == 0);
        CHECK(f.point_indices.size() == 1);
    }
    SUBCASE("outside point is rejected") {
        CHECK_THROWS_AS(smallest_face_containing(sup, {{5, 5}}), std::invalid_argument);
    }
}

TEST_CASE("truncation_face_set_J") {
    SUBCASE("interior a_minus gives only Gamma") {
        auto sup = square_center();
        auto gamma = smallest_face_containing(sup, {kCenter});
        auto j = truncation_face_set_J(gamma, sup);
        REQUIRE(j.size() == 1);
        CHECK(j[0].dim == 2);
    }
    SUBCASE("edge-midpoint a_minus gives the edge and Gamma") {
        SignedSupport sup(kSquare, {{1, 0}});
        auto gamma = smallest_face_containing(sup, {{1, 0}});
        CHECK(gamma.dim == 1);
        auto j = truncation_face_set_J(gamma, sup);
        CHECK(j.size() == 1);  // faces of the edge meeting a_minus: only the edge
    }
    SUBCASE("a_minus on an edge of the full square, J from the square") {
        // place one minus point at an edge midpoint and one inside
        SignedSupport sup(kSquare, {{1, 0}, {1, 1}});
        auto gamma = smallest_face_containing(sup, {{1, 0}, {1, 1}});
        CHECK(gamma.dim == 2);
        auto j = truncation_face_set_J(gamma, sup);
        // the bottom edge contains (1,0); the square contains both
        CHECK(j.size() == 2);
    }
}

TEST_CASE("reduce_to_full_dim") {
    SUBCASE("identity for full-dimensional support") {
        auto [map, red] = reduce_to_full_dim(square_center());
        CHECK(map.is_identity());
        CHECK(red.num_points() == 5);
    }
    SUBCASE("segment in the plane maps to 0,2,1 in order") {
        SignedSupport sup({{0, 0}, {2, 2}}, {{1, 1}});
        auto [map, red] = reduce_to_full_dim(sup);
        CHECK(red.ambient_dim == 1);
        CHECK(map.forward({0, 0}) == LatticePoint{0});
        CHECK(map.forward({2, 2}) == LatticePoint{2});
        CHECK(map.forward({1, 1}) == LatticePoint{1});
        for (const auto& p : {LatticePoint{0, 0}, LatticePoint{2, 2}, LatticePoint{1, 1}})
            CHECK(map.inverse(map.forward(p)) == p);
    }
    SUBCASE("planar triangle embedded in R^3 at height 1") {
        SignedSupport sup({{0, 0, 1}, {2, 0, 1}, {0, 2, 1}}, {});
        auto [map, red] = reduce_to_full_dim(sup);
        CHECK(red.ambient_dim == 2);
        CHECK(red.affine_dim() == 2);
        for (const auto& p : sup.plus) CHECK(map.inverse(map.forward(p)) == p);
    }
    SUBCASE("reduction preserves hull vertices index-wise") {
        SignedSupport sup({{0, 0, 0}, {4, 2, 0}, {0, 0, 4}, {4, 2, 4}}, {{2, 1, 2}});
        auto [map, red] = reduce_to_full_dim(sup);
        std::vector<LatticePoint> before, after;
        for (int i = 0; i < sup.num_points(); ++i) before.push_back(sup.point(i));
        for (int i = 0; i < red.num_points(); ++i) after.push_back(red.point(i));
        auto hv_before = hull_vertices(before);
        auto hv_after = hull_vertices(after);
        // canonical order may differ between original and reduced supports;
        // compare as point sets through the map
        std::vector<LatticePoint> vb, va;
        for (int i : hv_before) vb.push_back(map.forward(before[i]));
        for (int i : hv_after) va.push_back(after[i]);
        std::sort(vb.begin(), vb.end());
        std::sort(va.begin(), va.end());
        CHECK(vb == va);
    }
}

TEST_CASE("barycentric_coordinates") {
    SUBCASE("paper circuit simplex") {
        std::vector<LatticePoint> simplex = {
            {0, 0, 0, 0}, {40, 0, 0, 0}, {0, 40, 0, 0}, {0, 0, 40, 0}, {0, 0, 0, 40}};
        auto l = barycentric_coordinates(simplex, LatticePoint{1, 1, 1, 1});
        CHECK(l[0] == Rational(9, 10));
        for (int i = 1; i <= 4; ++i) CHECK(l[i] == Rational(1, 40));
    }
    SUBCASE("vertex gives a unit vector") {
        std::vector<LatticePoint> simplex = {{0, 0}, {2, 0}, {0, 2}};
        auto l = barycentric_coordinates(simplex, LatticePoint{2, 0});
        CHECK(l == std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
    }
    SUBCASE("barycenter of a triangle") {
        std::vector<LatticePoint> simplex = {{0, 0}, {3, 0}, {0, 3}};
        auto l = barycentric_coordinates(simplex, LatticePoint{1, 1});
        CHECK(l == std::vector<Rational>(3, Rational(1, 3)));
    }
    SUBCASE("identities hold exactly for random rational points") {
        std::mt19937_64 rng(5);
        std::vector<LatticePoint> simplex = {{0, 0, 0}, {5, 1, 0}, {2, 7, 0}, {1, 1, 9}};
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Rational> mu(4);
            long long total = 0;
            std::vector<long long> w(4);
            for (auto& wi : w) {
                wi = 1 + rng() % 9;
                total += wi;
            }
            std::vector<Rational> b(3, Rational(0));
            for (int i = 0; i < 4; ++i) {
                mu[i] = Rational(w[i], total);
                for (int j = 0; j < 3; ++j) b[j] += mu[i] * Rational(simplex[i][j]);
            }
            auto l = barycentric_coordinates(simplex, b);
            Rational sum(0);
            std::vector<Rational> rec(3, Rational(0));
            for (int i = 0; i < 4; ++i) {
                sum += l[i];
                for (int j = 0; j < 3; ++j) rec[j] += l[i] * Rational(simplex[i][j]);
            }
            CHECK(sum == 1);
            CHECK(rec == b);
            CHECK(l == mu);
        }
    }
    SUBCASE("degenerate simplex / point off the hull are rejected") {
        CHECK_THROWS_AS(
            barycentric_coordinates({{0, 0}, {1, 1}, {2, 2}}, LatticePoint{1, 0}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            barycentric_coordinates({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, LatticePoint{0, 0, 1}),
            std::invalid_argument);
    }
}

TEST_CASE("is_nonseparable basic cases") {
    SUBCASE("square plus center is nonseparable") {
        CHECK(is_nonseparable(square_center()).nonseparable);
    }
    SUBCASE("hull vertex in a_minus fails interiority") {
        SignedSupport sup({{1, 0}, {4, 0}, {0, 4}}, {{0, 0}});
        auto res = is_nonseparable(sup);
        CHECK_FALSE(res.nonseparable);
    }
    SUBCASE("diagonal-separated pair on the big square") {
        SignedSupport separated({{0, 0}, {4, 0}, {0, 4}, {4, 4}}, {{1, 1}, {3, 3}});
        auto res = is_nonseparable(separated);
        CHECK_FALSE(res.nonseparable);
        REQUIRE(res.violation.has_value());
        // the violating hyperplane sees both strict signs
        bool pos = false, neg = false;
        for (int s : res.violation->minus_signs) {
            pos = pos || s > 0;
            neg = neg || s < 0;
        }
        CHECK(pos);
        CHECK(neg);
    }
    SUBCASE("pair straddling the antidiagonal only weakly is nonseparable") {
        SignedSupport weak({{0, 0}, {4, 0}, {0, 4}, {4, 4}}, {{1, 3}, {3, 3}});
        CHECK(is_nonseparable(weak).nonseparable);
    }
    SUBCASE("empty a_minus is an input error") {
        SignedSupport sup(kSquare, {});
        CHECK_THROWS_AS(is_nonseparable(sup), std::invalid_argument);
    }
}

TEST_CASE("hyperplane report signs verify against exact geometry") {
    SignedSupport separated({{0, 0}, {4, 0}, {0, 4}, {4, 4}}, {{1, 1}, {3, 3}});
    auto res = is_nonseparable(separated);
    REQUIRE(res.violation.has_value());
    const auto& rep = *res.violation;
    for (std::size_t bi = 0; bi < separated.minus.size(); ++bi) {
        Rational val = rep.offset;
        for (int j = 0; j < separated.ambient_dim; ++j)
            val += rep.normal[j] * Rational(separated.minus[bi][j]);
        int sign = val == 0 ? 0 : (val > 0 ? 1 : -1);
        CHECK(sign == rep.minus_signs[bi]);
    }
}

TEST_CASE("find_cell_witness and simplices_containing_cell") {
    SUBCASE("circuit support has exactly one simplex") {
        SignedSupport circuit({{0, 0}, {4, 0}, {0, 4}}, {{1, 1}});
        auto witness = find_cell_witness(circuit);
        auto fam = simplices_containing_cell(circuit, witness);
        CHECK(fam.simplices.size() == 1);
        CHECK(fam.simplices[0] == std::vector<int>{0, 1, 2});
    }
    SUBCASE("square plus center yields two diagonal triangles") {
        auto sup = square_center();
        auto witness = find_cell_witness(sup);
        auto fam = simplices_containing_cell(sup, witness);
        CHECK(fam.simplices.size() == 2);
        // every simplex in the family contains every minus point (closed)
        for (const auto& s : fam.simplices) {
            std::vector<LatticePoint> pts;
            for (int i : s) pts.push_back(sup.plus[i]);
            auto l = barycentric_coordinates(pts, kCenter);
            for (const auto& li : l) CHECK(li >= 0);
        }
    }
    SUBCASE("pentagon with a central minus point has the five ear triangles") {
        // convex pentagon in general position; the central cell of its
        // diagonal arrangement is a pentagon around (5,5)
        std::vector<LatticePoint> penta = {{0, 4}, {4, 10}, {10, 8}, {9, 1}, {3, 0}};
        SignedSupport sup(penta, {{5, 5}});
        REQUIRE(is_nonseparable(sup).nonseparable);
        auto witness = find_cell_witness(sup);
        auto fam = simplices_containing_cell(sup, witness);
        CHECK(fam.simplices.size() == 5);
        for (const auto& s : fam.simplices) CHECK(s.size() == 3);
    }
    SUBCASE("witness of a separable support throws") {
        SignedSupport separated({{0, 0}, {4, 0}, {0, 4}, {4, 4}}, {{1, 1}, {3, 3}});
        CHECK_THROWS_AS(find_cell_witness(separated), std::invalid_argument);
    }
}

TEST_CASE("duplicate points are rejected at construction") {
    CHECK_THROWS_AS(SignedSupport({{0, 0}, {0, 0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(SignedSupport({{0, 0}}, {{0, 0}}), std::invalid_argument);
}
