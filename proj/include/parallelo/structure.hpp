#pragma once

#include "parallelo/voronoi.hpp"

#include <optional>
#include <vector>

namespace parallelo {

/// G + c (G n)(G n)^T; positive definite for every n and c >= 0.
GramMatrix dilate(const GramMatrix &g, const QVec &n, const Rat &scale_sq = Rat(1));

/// Facet vectors s of the Voronoi cell of (Z^d, G) with n^T G s != 0, sorted.
std::vector<QVec> fn_set(const GramMatrix &g, const QVec &n);

/// span fn_set(dilate(G, n), n) is contained in span fn_set(G, n).
bool check_dilatation_span(const GramMatrix &g, const QVec &n);

/// Two hyperplanes containing every facet vector between them.
struct Cross {
    Subspace pi1;
    Subspace pi2;
    /// Per facet class of the cell: 1, 2, or 3 when the class lies in both.
    std::vector<int> assignment;
};

bool is_cross(const Cell &cell, const Subspace &pi1, const Subspace &pi2);

/// Throws InvalidInput unless (pi1, pi2) is a cross for the cell.
Cross make_cross(const Cell &cell, const Subspace &pi1, const Subspace &pi2);

/// The G-normal of a hyperplane, as a primitive integer vector.
QVec form_normal(const GramMatrix &g, const Subspace &hyperplane);

/// Dilating along the G-normal of pi1 keeps the cross. Throws InvalidInput
/// when the cross is not valid for G.
bool check_dilatation_keeps_cross(const GramMatrix &g, const Subspace &pi1, const Subspace &pi2);

/// n_i = sqrt(scale_sq_i) * direction_i; `exact` holds n_i when the root is rational.
struct ScaledNormal {
    QVec direction;
    Rat scale_sq;
    std::optional<QVec> exact;
};

struct TwofoldResult {
    Rat rho_sq;  // squared covering radius of the lattice in pi1 cap pi2
    Rat alpha;   // layer spacing along n1
    Rat beta;    // layer spacing along n2
    ScaledNormal n1;
    ScaledNormal n2;
    GramMatrix g1;
    GramMatrix g2;
    Subspace free_plane;
};

/// Twofold dilatation of a cell with a cross. Throws InvalidInput for d < 3
/// or a non-cross, Violation when span{n1, n2} is not free for the result.
TwofoldResult twofold_dilatation(const GramMatrix &g, const Subspace &pi1, const Subspace &pi2);

/// Partition of facet classes by the graph joining classes that share a six-belt.
std::vector<std::vector<std::size_t>> six_belt_components(const Cell &cell);

struct Factor {
    Subspace space;                   // span of the factor's facet vectors
    std::vector<std::size_t> classes; // facet classes of the cell
    std::vector<QVec> basis;          // Z-basis of Z^d intersected with space
    Cell cell;                        // Voronoi cell of the restricted form
    bool irreducible = false;         // a single six-belt component
};

struct Decomposition {
    std::vector<Factor> factors;
    bool reducible() const { return factors.size() > 1; }
};

/// Direct sum decomposition from the connected components of the facet
/// vector matroid. Throws Violation when the factors are not G-orthogonal or
/// the direct sum of the factor cells differs from the cell.
Decomposition decompose(const Cell &cell);

/// Exhaustive search over two-bucket splits of the facet classes.
std::optional<Cross> find_cross(const Cell &cell);

/// A cell with a cross is reducible.
bool check_cross_reducible(const Cell &cell);

/// Every irreducible factor spans a subspace of pi1 or of pi2.
bool check_factors_in_cross(const Cell &cell, const Cross &cross);

struct GoodBadReport {
    QVec v;
    std::vector<std::size_t> good; // facet classes
    std::vector<std::size_t> bad;
    QVec v_prime; // a point of (Z^d + v) in the cell
};

/// Facet F is bad when v + s(F)/2 lies on a tile facet parallel to F. Throws
/// Violation when some point of (Z^d + v) in the cell is not parallel to a bad facet.
GoodBadReport good_bad_facets(const Cell &cell, const QVec &v);
GoodBadReport good_bad_facets(const GramMatrix &g, const QVec &v);

/// Projection of a cell along a perfect free plane p.
struct PlaneAnalysis {
    QVec line1, line2;            // perfect lines of p
    std::vector<QVec> basis;      // ambient Z-basis of the lattice of R
    Polytope r;                   // projection in those coordinates
    QMat r_metric;                // a form making r a Voronoi cell of Z^{d-2}
    std::vector<QVec> c1, c2;     // cap vectors parallel to line1, line2
    QVec v1, v2;                  // layer offsets in the coordinates of R
    bool prism = false;
    bool prism_consistent = true; // a single C^j and a prism when v_j is a lattice vector
    std::optional<GoodBadReport> report1, report2;
    std::optional<Cross> cross;   // cross of R, in its coordinates
};

/// Throws InvalidInput when p is not a perfect free plane or d < 3,
/// Violation when a facet of R is bad for both offsets.
PlaneAnalysis analyze_perfect_plane(const Cell &cell, const Subspace &p);

} // namespace parallelo
