#pragma once

#include "parallelo/linalg.hpp"

#include <vector>

namespace parallelo {

/// All G-nearest points of Z^d to x, with the common squared distance.
struct ClosestPoints {
    Rat dist_sq;
    std::vector<QVec> points; // sorted lexicographically
};

/// Exact closest-vector enumeration (Fincke-Pohst style, no square roots).
ClosestPoints closest_lattice_points(const GramMatrix &g, const QVec &x);

/// All integer y with (y - x)^T G (y - x) <= bound, sorted lexicographically.
std::vector<QVec> lattice_points_in_ball(const GramMatrix &g, const QVec &x, const Rat &bound);

} // namespace parallelo
