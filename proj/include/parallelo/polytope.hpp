#pragma once

#include "parallelo/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <vector>

namespace parallelo {

using Bits = boost::dynamic_bitset<>;

/// normal . x <= offset, with `normal` a primitive integer covector.
struct Halfspace {
    QVec normal;
    Rat offset;

    bool operator==(const Halfspace &o) const { return offset == o.offset && normal == o.normal; }
};

/// Scale a halfspace so its normal is a primitive integer vector.
Halfspace normalized(const QVec &normal, const Rat &offset);

/// Vertices of the bounded polytope {x : a.x <= b}. Throws InvalidInput when
/// the system is infeasible or unbounded.
std::vector<QVec> dd_hull(const std::vector<Halfspace> &halfspaces, std::size_t d);

/// Extreme rays of the pointed cone {y : rows . y >= 0}, as primitive integer
/// vectors. Throws InvalidInput when the rows have rank below n.
std::vector<QVec> cone_extreme_rays(const std::vector<QVec> &rows, std::size_t n);

/// Vertices of {x : a.x <= b} for a bounded system; empty when infeasible.
/// The feasible set may be lower-dimensional.
std::vector<QVec> bounded_vertices(const std::vector<Halfspace> &halfspaces, std::size_t d);

/// Facets of conv(points). The points must affinely span Q^d.
std::vector<Halfspace> dd_facets(const std::vector<QVec> &points, std::size_t d);

/// Vertex enumeration by trying every d-subset of constraints. Slow, but
/// shares no code with the double description path and accepts
/// lower-dimensional feasible sets.
std::vector<QVec> enumerate_vertices_bruteforce(const std::vector<Halfspace> &halfspaces,
                                                std::size_t d);

std::size_t affine_rank(const std::vector<QVec> &points);

/// Extreme points of conv(points) for a point set of any affine dimension,
/// sorted lexicographically.
std::vector<QVec> extreme_points(const std::vector<QVec> &points);

/// Full-dimensional bounded polytope carrying both representations and the
/// vertex-facet incidence.
class Polytope {
  public:
    static Polytope from_halfspaces(const std::vector<Halfspace> &halfspaces, std::size_t d);
    static Polytope from_points(const std::vector<QVec> &points, std::size_t d);
    /// Trusted constructor: facets irredundant, vertices exact.
    static Polytope from_both(std::vector<Halfspace> facets, std::vector<QVec> vertices,
                              std::size_t d);

    std::size_t dim() const { return dim_; }
    const std::vector<Halfspace> &facets() const { return facets_; }
    const std::vector<QVec> &vertices() const { return vertices_; }
    const Bits &facet_vertices(std::size_t f) const { return facet_vertices_[f]; }
    const Bits &vertex_facets(std::size_t v) const { return vertex_facets_[v]; }

    bool contains(const QVec &x) const;
    bool on_facet(std::size_t f, const QVec &x) const;
    QVec vertex_centroid() const;

    /// Index of the facet with exactly this normalized halfspace, or npos.
    std::size_t find_facet(const Halfspace &h) const;

    Polytope translated(const QVec &t) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    void build_incidence();

    std::size_t dim_ = 0;
    std::vector<Halfspace> facets_;
    std::vector<QVec> vertices_;
    std::vector<Bits> facet_vertices_;
    std::vector<Bits> vertex_facets_;
};

/// A face identified by its vertex set; `facets` is the maximal set of
/// facets containing it.
struct Face {
    Bits vertices;
    Bits facets;
    std::size_t dim = 0;
    std::vector<std::size_t> children; // indices into the level below
};

class FaceLattice {
  public:
    explicit FaceLattice(const Polytope &p);
    FaceLattice() = default;

    /// All k-faces, 0 <= k <= d. Level d holds the polytope itself.
    const std::vector<Face> &faces(std::size_t k) const { return levels_.at(k); }
    std::size_t dim() const { return levels_.empty() ? 0 : levels_.size() - 1; }

  private:
    std::vector<std::vector<Face>> levels_;
};

/// Exact Lebesgue volume by a pulling triangulation over the face lattice.
Rat volume(const Polytope &p, const FaceLattice &lattice);
Rat volume(const Polytope &p);

/// Points of the face, in vertex order.
std::vector<QVec> face_points(const Polytope &p, const Face &f);
QVec face_centroid(const Polytope &p, const Face &f);

/// Coordinates of each point relative to the first, in the echelon basis of
/// the direction space of their affine hull.
std::vector<QVec> affine_coordinates(const std::vector<QVec> &points);

/// Direction space of the affine hull of a point set.
Subspace direction_space(const std::vector<QVec> &points, std::size_t d);

} // namespace parallelo
