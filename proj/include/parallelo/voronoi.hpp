#pragma once

#include "parallelo/polytope.hpp"

#include <optional>
#include <vector>

namespace parallelo {

struct Belt {
    Subspace direction;                // direction of the (d-2)-faces
    std::vector<std::size_t> facets;   // cyclic order
    std::vector<std::size_t> ridges;   // indices into faces(d-2) in this class
};

/// Voronoi cell of Z^d under a Gram matrix. Facet i of `poly` is
/// s^T G x <= s^T G s / 2 with s = facet_vectors[i].
struct Cell {
    GramMatrix form;
    std::vector<QVec> facet_vectors;
    Polytope poly;
    FaceLattice lattice;
    /// Facet classes {s, -s}, represented by s = canonical_direction(s), sorted.
    std::vector<QVec> classes;
    std::vector<std::size_t> class_of; // facet index -> class index
    std::vector<Belt> belt_list;

    std::size_t dim() const { return form.dim(); }
    std::size_t facet_count() const { return facet_vectors.size(); }
    /// Index of the facet with vector s, or Polytope::npos.
    std::size_t facet_of(const QVec &s) const;
    /// Outward normal n(F) = G s(F).
    QVec normal(std::size_t f) const { return form.apply(facet_vectors[f]); }
};

/// Facet vectors: s with +-s the unique minima of the coset s + 2Z^d.
/// Sorted lexicographically, both signs present.
std::vector<QVec> relevant_vectors(const GramMatrix &g);

/// True iff the closed G-ball with diameter [0, s] meets Z^d only in {0, s}.
bool is_empty_ball_pair(const GramMatrix &g, const QVec &s);

Cell voronoi_cell(const GramMatrix &g);

/// Faces of dimension k (0 <= k <= d-1).
const std::vector<Face> &faces(const Cell &cell, std::size_t k);

/// True iff facet f is parallel to u, i.e. s(F)^T G u = 0.
bool facet_parallel_to(const Cell &cell, std::size_t f, const QVec &u);

/// Parallel classes of (d-2)-faces with their belts of facets, on any
/// full-dimensional polytope. Belt sizes are not checked.
std::vector<Belt> compute_belts(const Polytope &p, const FaceLattice &lattice);

/// Belts of a Voronoi cell (validated to have 4 or 6 facets on construction).
const std::vector<Belt> &belts(const Cell &cell);

struct VenkovReport {
    bool centrally_symmetric = false;
    bool facets_symmetric = false;
    bool belts_ok = false;
    bool pass() const { return centrally_symmetric && facets_symmetric && belts_ok; }
};

VenkovReport check_minkowski_venkov(const Polytope &p, const FaceLattice &lattice);
VenkovReport check_minkowski_venkov(const Polytope &p);

/// t in Z^d with P cap (P + t) equal to the face, if any.
std::optional<QVec> standard_vector(const Cell &cell, const Face &face);

/// Facets with e^T G s(F) < 0.
std::vector<std::size_t> cap(const Cell &cell, const QVec &e);

} // namespace parallelo
