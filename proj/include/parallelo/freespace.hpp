#pragma once

#include "parallelo/voronoi.hpp"

#include <vector>

namespace parallelo {

/// Belts of six facets.
std::vector<Belt> six_belts(const Cell &cell);

/// Every six-belt has a facet parallel to u.
bool is_free_segment(const Cell &cell, const QVec &u);

/// A free space cut out by facet classes that hit every six-belt.
struct PerfectSpace {
    Subspace space;
    std::vector<std::size_t> witness_classes; // classes parallel to the space
};

/// Inclusion-maximal perfect free spaces, sorted by their echelon basis.
std::vector<PerfectSpace> perfect_free_spaces(const Cell &cell);

struct ABCSets {
    std::vector<QVec> A; // standard vectors of semi-shaded (d-2)-faces
    std::vector<QVec> B; // facet vectors of facets parallel to u
    std::vector<QVec> C; // facet vectors of the u-cap
    Subspace span_ab;
};

/// Throws InvalidInput when u is not free, Violation when span(A u B) is not a hyperplane.
ABCSets ab_sets(const Cell &cell, const QVec &u);

/// Differences of cap vectors lie in span(A u B).
bool check_cap_differences(const Cell &cell, const QVec &u);
/// Z(A u B) is saturated in Z^d.
bool check_ab_saturated(const Cell &cell, const QVec &u);
/// Facet vectors inside span(A u B) are exactly those of facets parallel to u.
bool check_parallel_facet_vectors(const Cell &cell, const QVec &u);
/// Projection along u commutes with intersecting P and the translates P + w
/// of the neighbouring layer.
bool check_layer_projection(const Cell &cell, const QVec &u);

struct PerfectPlaneReport {
    Subspace plane;
    QVec line1;                        // primitive direction
    QVec line2;
    std::vector<std::size_t> b_plane;  // classes orthogonal to the plane
};

/// The two perfect lines of a perfect free plane. Throws InvalidInput when
/// p is not a perfect free plane, Violation when the line structure fails.
PerfectPlaneReport perfect_lines_in_plane(const Cell &cell, const Subspace &p);

/// Lines of p where span(A u B) jumps, by sampling every sector cut out by
/// facet traces; the result must be {line1, line2}.
std::vector<QVec> span_discontinuities(const Cell &cell, const Subspace &p);
bool check_span_jumps(const Cell &cell, const Subspace &p);

/// Primitive direction in p of the trace of each facet class not parallel to p,
/// deduplicated and sorted by angle in the basis of p.
std::vector<QVec> trace_lines(const Cell &cell, const Subspace &p);

} // namespace parallelo
