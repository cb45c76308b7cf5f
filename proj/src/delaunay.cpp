#include "parallelo/delaunay.hpp"

namespace parallelo {

std::string to_string(DualCellType t) {
    switch (t) {
    case DualCellType::segment:
        return "segment";
    case DualCellType::rectangle:
        return "rectangle";
    case DualCellType::triangle:
        return "triangle";
    case DualCellType::tetrahedron:
        return "tetrahedron";
    case DualCellType::octahedron:
        return "octahedron";
    case DualCellType::pyramid4:
        return "pyramid4";
    case DualCellType::prism3:
        return "prism3";
    case DualCellType::parallelepiped:
        return "parallelepiped";
    }
    return "unknown";
}

DualCell dual_cell(const Cell &cell, const Face &face) {
    DualCell dc;
    dc.center = face_centroid(cell.poly, face);
    ClosestPoints cp = closest_lattice_points(cell.form, dc.center);
    dc.points = std::move(cp.points);
    dc.radius_sq = cp.dist_sq;
    dc.dim = affine_rank(dc.points);
    if (dc.dim + face.dim != cell.dim())
        throw Violation("dual cell of a " + std::to_string(face.dim) + "-face has dimension " +
                        std::to_string(dc.dim));
    return dc;
}

DualCellType classify_dual_cell(const DualCell &dc) {
    const std::size_t n = dc.points.size();
    auto unexpected = [&]() {
        return InvalidInput("dual cell of dimension " + std::to_string(dc.dim) + " with " +
                            std::to_string(n) + " points is outside the classification table");
    };
    switch (dc.dim) {
    case 1:
        if (n == 2)
            return DualCellType::segment;
        throw unexpected();
    case 2:
        if (n == 3)
            return DualCellType::triangle;
        if (n == 4)
            return DualCellType::rectangle;
        throw unexpected();
    case 3:
        switch (n) {
        case 4:
            return DualCellType::tetrahedron;
        case 5:
            return DualCellType::pyramid4;
        case 6: {
            Polytope hull = Polytope::from_points(affine_coordinates(dc.points), 3);
            if (hull.facets().size() == 8)
                return DualCellType::octahedron;
            if (hull.facets().size() == 5)
                return DualCellType::prism3;
            throw unexpected();
        }
        case 8:
            return DualCellType::parallelepiped;
        default:
            throw unexpected();
        }
    default:
        throw InvalidInput("dual cell classification supports dimensions 1 to 3, got " +
                           std::to_string(dc.dim));
    }
}

DualCellType fan_type(const Cell &cell, const Face &face) {
    const std::size_t d = cell.dim();
    if (face.dim + 2 != d && face.dim + 3 != d)
        throw InvalidInput("fan type is defined for faces of dimension d-2 and d-3");
    return classify_dual_cell(dual_cell(cell, face));
}

Rat covering_radius_sq(const Cell &cell) {
    Rat best = 0;
    for (const auto &v : cell.poly.vertices())
        best = std::max(best, norm_sq(cell.form, v));
    return best;
}

Rat covering_radius_sq(const GramMatrix &g) { return covering_radius_sq(voronoi_cell(g)); }

} // namespace parallelo
