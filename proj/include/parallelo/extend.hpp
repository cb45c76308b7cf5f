#pragma once

#include "parallelo/freespace.hpp"
#include "parallelo/voronoi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parallelo {

/// The segment I = [-h u, h u] with u a nonzero integer direction and h > 0.
struct SegmentSpec {
    QVec direction;
    Rat half_length;

    QVec half_vector() const { return half_length * direction; }
};

enum class FacetOrigin {
    translated_plus,  // F + x for a facet F with s^T G u > 0; vector s + e_I
    translated_minus, // F - x for a facet F of the cap; vector s - e_I
    parallel,         // F + I for a facet parallel to u; vector s
    semi_shaded,      // R + I for a (d-2)-face R; vector the standard vector of R
};

std::string to_string(FacetOrigin o);

struct FacetProvenance {
    FacetOrigin origin;
    QVec source;       // facet vector of F, or standard vector of R
    QVec facet_vector; // facet vector of the facet of P + I
};

/// P + I with its tiling lattice.
struct ExtendedCell {
    SegmentSpec segment;
    Polytope poly;
    /// Rows: a basis of Z(A u B) followed by t + e_I.
    std::vector<QVec> lattice_basis;
    QVec layer_shift; // t
    std::vector<FacetProvenance> provenance; // one per facet of poly
    ABCSets sets;
};

/// Throws InvalidInput for a non-free direction or a non-positive length,
/// Violation when the facet census disagrees with the combinatorial sets A, B.
ExtendedCell minkowski_extend(const Cell &cell, const SegmentSpec &seg);

/// Minkowski-Venkov conditions, every facet vector 2 c(F) in the lattice,
/// and volume equal to the covolume.
bool is_parallelohedron(const Polytope &poly, const std::vector<QVec> &lattice_basis);

struct MetricRecovery {
    bool found = false;
    /// Primitive integer form with X s(F) = lambda_F n(F) for every facet.
    QMat metric;
    std::vector<Rat> multipliers; // per facet of the polytope
    std::size_t nullspace_rank = 0;
    std::size_t candidates_tried = 0;
};

/// Search for a positive definite X making `poly` the Voronoi cell of the
/// lattice. When found the recomputed Voronoi cell is compared exactly with
/// `poly` (Violation on mismatch). Throws InvalidInput when poly is not
/// centered at 0 or a facet vector is outside the lattice.
MetricRecovery recover_voronoi_metric(const Polytope &poly, const std::vector<QVec> &lattice_basis,
                                      int max_depth = 6);

/// Every standard vector in A is G-orthogonal to u. Throws InvalidInput for a
/// reducible cell or a non-free u.
bool standard_vectors_orthogonal(const Cell &cell, const QVec &u);

/// Projection of I onto each factor along the others, in the factor's
/// lattice coordinates; nullopt where the projection is a point. Throws
/// InvalidInput for an irreducible cell, Violation when a projected segment
/// is not free for its factor.
std::vector<std::optional<SegmentSpec>> split_segment_over_factors(const Cell &cell, const SegmentSpec &seg);

/// Image of the cell under projection along u onto span(A u B), in the
/// coordinates of a Z-basis of Z(A u B); its lattice is then Z^{d-1}.
struct ProjectedCell {
    Polytope poly;
    std::vector<QVec> basis; // ambient basis of Z(A u B)
};

/// Throws InvalidInput when u is not free, Violation when the image is not a
/// parallelohedron for Z^{d-1}.
ProjectedCell project_cell_along(const Cell &cell, const QVec &u);

/// When P + I admits a Voronoi metric, so does the projection of P along u.
bool check_projection_voronoi(const Cell &cell, const QVec &u);

} // namespace parallelo
