#pragma once

#include "parallelo/cvp.hpp"
#include "parallelo/voronoi.hpp"

#include <string>

namespace parallelo {

/// Lattice points whose Voronoi cells contain a face, with their empty sphere.
struct DualCell {
    std::vector<QVec> points;
    QVec center;
    Rat radius_sq;
    std::size_t dim = 0;
};

enum class DualCellType {
    segment,
    rectangle,
    triangle,
    tetrahedron,
    octahedron,
    pyramid4,
    prism3,
    parallelepiped,
};

std::string to_string(DualCellType t);

/// D(face), computed at the barycenter of the face's vertices.
DualCell dual_cell(const Cell &cell, const Face &face);

/// Combinatorial type of a dual cell of dimension 1, 2 or 3.
DualCellType classify_dual_cell(const DualCell &dc);

/// Type of D(face) for faces of dimension d-2 or d-3.
DualCellType fan_type(const Cell &cell, const Face &face);

/// Squared covering radius: max over cell vertices v of v^T G v.
Rat covering_radius_sq(const Cell &cell);
Rat covering_radius_sq(const GramMatrix &g);

} // namespace parallelo
