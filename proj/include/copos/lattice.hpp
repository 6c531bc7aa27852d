#ifndef COPOS_LATTICE_HPP
#define COPOS_LATTICE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "copos/rational.hpp"

namespace copos {

// Exponent vector of a monomial.
using LatticePoint = std::vector<long long>;

// The signed support (A+, A-) of a signomial, stored in canonical order:
// a_plus block first, each block sorted lexicographically. All indices into
// "A" below refer to this concatenated order.
struct SignedSupport {
    std::vector<LatticePoint> plus;
    std::vector<LatticePoint> minus;
    int ambient_dim = 0;

    SignedSupport() = default;
    SignedSupport(std::vector<LatticePoint> plus_points, std::vector<LatticePoint> minus_points);

    int num_points() const { return static_cast<int>(plus.size() + minus.size()); }
    int num_plus() const { return static_cast<int>(plus.size()); }
    const LatticePoint& point(int i) const;
    bool is_minus_index(int i) const { return i >= num_plus(); }
    int affine_dim() const { return affine_dim_; }

    // Index of a point in canonical order, -1 when absent.
    int index_of(const LatticePoint& p) const;

  private:
    int affine_dim_ = -1;
};

// A nonempty face of conv(A) together with a supporting-normal certificate:
// indexed points satisfy <normal,x> + offset = 0, all other points of A are
// strictly positive. The full polytope carries normal = 0.
struct Face {
    std::vector<int> point_indices;  // sorted, into A
    std::vector<Rational> normal;
    Rational offset;
    int dim = -1;
};

// One hyperplane of the spanning arrangement of a_plus, with the exact sign
// of every a_minus point. Used as the separability diagnostic.
struct HyperplaneReport {
    std::vector<int> spanning_indices;  // indices into a_plus
    std::vector<Rational> normal;       // ambient coordinates
    Rational offset;
    std::vector<int> minus_signs;       // -1 / 0 / +1 per a_minus point
};

// A rational point q* in the relative interior of a cell D of the spanning
// arrangement with A- contained in D, plus the side picked for each
// hyperplane that contains all of A-.
struct CellWitness {
    std::vector<Rational> point;                    // ambient coordinates
    std::vector<std::pair<int, int>> side_choices;  // (hyperplane id, +1/-1)
};

// Lambda(A+, D): all d-simplices with vertices in a_plus whose relative
// interior contains the witness cell.
struct SimplexFamily {
    std::vector<std::vector<int>> simplices;  // (d+1)-subsets of a_plus indices
    CellWitness witness;
};

int affine_dim(const std::vector<LatticePoint>& points);

// Indices of the vertices of conv(points), in input order.
std::vector<int> hull_vertices(const std::vector<LatticePoint>& points);

// All nonempty faces of conv(A), conv(A) included. Facets come from an
// exhaustive search over d-subsets (O(C(m,d)) hyperplanes; fine for the
// m <= ~15, d <= 4 instances this library targets), lower faces from
// intersections of facets.
std::vector<Face> enumerate_faces(const SignedSupport& support);

// Inclusion-minimal face of conv(A) whose hull contains every subset point.
Face smallest_face_containing(const SignedSupport& support, const std::vector<LatticePoint>& subset);

// Faces Gamma' of gamma with Gamma' meeting a_minus.
std::vector<Face> truncation_face_set_J(const Face& gamma, const SignedSupport& support);

// Lattice-preserving affine map used by reduce_to_full_dim. forward() sends
// support points to Z^d, inverse() undoes it.
struct AffineLatticeMap {
    LatticePoint base;                // p0
    std::vector<LatticePoint> basis;  // d Hermite-basis rows in Z^n
    int ambient_dim = 0;

    LatticePoint forward(const LatticePoint& p) const;
    LatticePoint inverse(const LatticePoint& q) const;
    bool is_identity() const;
    std::vector<Rational> inverse_rational(const std::vector<Rational>& q) const;
};

std::pair<AffineLatticeMap, SignedSupport> reduce_to_full_dim(const SignedSupport& support);

// Barycentric coordinates of b with respect to an affinely independent
// simplex; exact. Throws when the simplex is degenerate or b is outside the
// affine hull.
std::vector<Rational> barycentric_coordinates(const std::vector<LatticePoint>& simplex,
                                              const std::vector<Rational>& b);
std::vector<Rational> barycentric_coordinates(const std::vector<LatticePoint>& simplex,
                                              const LatticePoint& b);

struct NonseparabilityResult {
    bool nonseparable = false;
    std::optional<HyperplaneReport> violation;  // first separating hyperplane
    std::string reason;                         // human-readable diagnostic
};

// Decides nonseparability by the strict-sign test on the spanning-hyperplane
// arrangement of a_plus: (a) A- lies in relint(conv(A+)) and (b) no spanning
// hyperplane has a_minus points on both strict sides. Validated against
// brute_force_nonseparable (oracles.hpp) in the test suite.
NonseparabilityResult is_nonseparable(const SignedSupport& support);

CellWitness find_cell_witness(const SignedSupport& support);

SimplexFamily simplices_containing_cell(const SignedSupport& support, const CellWitness& witness);

}  // namespace copos

#endif
