#include "parallelo/voronoi.hpp"

#include "parallelo/cvp.hpp"

#include <algorithm>
#include <map>

namespace parallelo {

std::size_t Cell::facet_of(const QVec &s) const {
    auto it = std::lower_bound(facet_vectors.begin(), facet_vectors.end(), s, lex_less);
    if (it != facet_vectors.end() && *it == s)
        return static_cast<std::size_t>(it - facet_vectors.begin());
    return Polytope::npos;
}

bool is_empty_ball_pair(const GramMatrix &g, const QVec &s) {
    ClosestPoints cp = closest_lattice_points(g, Rat(1, 2) * s);
    std::vector<QVec> expected = {zeros(s.size()), s};
    std::sort(expected.begin(), expected.end(), lex_less);
    return cp.points == expected;
}

std::vector<QVec> relevant_vectors(const GramMatrix &g) {
    const std::size_t d = g.dim();
    std::vector<QVec> out;
    for (unsigned long mask = 1; mask < (1UL << d); ++mask) {
        QVec r(d);
        for (std::size_t i = 0; i < d; ++i)
            r[i] = (mask >> i) & 1UL;
        // Coset r + 2Z^d: |r + 2y|^2 = 4 |y + r/2|^2, so minima are CVP at -r/2.
        ClosestPoints cp = closest_lattice_points(g, Rat(-1, 2) * r);
        if (cp.points.size() != 2)
            continue;
        for (const auto &y : cp.points) {
            QVec s = r + Rat(2) * y;
            if (!is_empty_ball_pair(g, s))
                throw Violation("relevant vector " + to_string(s) + " fails the empty-ball test");
            out.push_back(std::move(s));
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Cell voronoi_cell(const GramMatrix &g) {
    const std::size_t d = g.dim();
    Cell cell;
    cell.form = g;
    cell.facet_vectors = relevant_vectors(g);
    for (const auto &s : cell.facet_vectors)
        if (canonical_direction(s) == s)
            cell.classes.push_back(s);
    for (const auto &s : cell.facet_vectors) {
        auto it = std::lower_bound(cell.classes.begin(), cell.classes.end(), canonical_direction(s),
                                   lex_less);
        cell.class_of.push_back(static_cast<std::size_t>(it - cell.classes.begin()));
    }
    std::vector<Halfspace> hs;
    for (const auto &s : cell.facet_vectors)
        hs.push_back(normalized(g.apply(s), norm_sq(g, s) / 2));
    std::vector<QVec> verts = dd_hull(hs, d);
    cell.poly = Polytope::from_both(hs, std::move(verts), d);
    for (std::size_t f = 0; f < hs.size(); ++f) {
        std::vector<QVec> tight;
        const Bits &fv = cell.poly.facet_vertices(f);
        for (auto v = fv.find_first(); v != Bits::npos; v = fv.find_next(v))
            tight.push_back(cell.poly.vertices()[v]);
        if (affine_rank(tight) + 1 != d || tight.size() < d)
            throw Violation("relevant vector " + to_string(cell.facet_vectors[f]) +
                            " does not define a facet");
    }
    cell.lattice = FaceLattice(cell.poly);
    if (volume(cell.poly, cell.lattice) != 1)
        throw Violation("Voronoi cell volume differs from 1");
    cell.belt_list = compute_belts(cell.poly, cell.lattice);
    for (const auto &b : cell.belt_list)
        if (b.facets.size() != 4 && b.facets.size() != 6)
            throw Violation("belt of size " + std::to_string(b.facets.size()) +
                            ": not a parallelohedron");
    return cell;
}

const std::vector<Face> &faces(const Cell &cell, std::size_t k) {
    if (k >= cell.dim())
        throw InvalidInput("face dimension out of range");
    return cell.lattice.faces(k);
}

bool facet_parallel_to(const Cell &cell, std::size_t f, const QVec &u) {
    return sgn(inner(cell.form, cell.facet_vectors[f], u)) == 0;
}

std::vector<Belt> compute_belts(const Polytope &p, const FaceLattice &lattice) {
    const std::size_t d = p.dim();
    if (d < 2)
        return {};
    std::map<Subspace, std::vector<std::size_t>> groups;
    const auto &ridges = lattice.faces(d - 2);
    for (std::size_t r = 0; r < ridges.size(); ++r)
        groups[direction_space(face_points(p, ridges[r]), d)].push_back(r);

    std::vector<Belt> out;
    for (auto &[dir, members] : groups) {
        Belt belt{dir, {}, members};
        std::vector<std::size_t> parallel;
        for (std::size_t f = 0; f < p.facets().size(); ++f) {
            bool ok = std::all_of(dir.basis().begin(), dir.basis().end(), [&](const QVec &b) {
                return sgn(dot(p.facets()[f].normal, b)) == 0;
            });
            if (ok)
                parallel.push_back(f);
        }
        // Order the belt by walking facets across the ridges of this class.
        std::map<std::size_t, std::vector<std::size_t>> adj;
        for (auto r : members) {
            const Bits &fs = ridges[r].facets;
            if (fs.count() != 2)
                continue;
            std::size_t a = fs.find_first(), b = fs.find_next(a);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<std::size_t> cycle;
        if (!parallel.empty() && adj.count(parallel[0])) {
            std::size_t prev = Polytope::npos, cur = parallel[0];
            while (cycle.size() <= parallel.size()) {
                cycle.push_back(cur);
                auto &nb = adj[cur];
                std::size_t next = Polytope::npos;
                for (auto x : nb)
                    if (x != prev) {
                        next = x;
                        break;
                    }
                if (next == Polytope::npos || next == parallel[0])
                    break;
                prev = cur;
                cur = next;
            }
        }
        std::vector<std::size_t> sorted_cycle = cycle;
        std::sort(sorted_cycle.begin(), sorted_cycle.end());
        belt.facets = sorted_cycle == parallel ? cycle : parallel;
        out.push_back(std::move(belt));
    }
    return out;
}

const std::vector<Belt> &belts(const Cell &cell) { return cell.belt_list; }

namespace {

bool symmetric_point_set(std::vector<QVec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    QVec c = zeros(pts[0].size());
    for (const auto &p : pts)
        c = c + p;
    c = Rat(2, pts.size()) * c;
    return std::all_of(pts.begin(), pts.end(), [&](const QVec &p) {
        return std::binary_search(pts.begin(), pts.end(), c - p, lex_less);
    });
}

} // namespace

VenkovReport check_minkowski_venkov(const Polytope &p, const FaceLattice &lattice) {
    VenkovReport rep;
    rep.centrally_symmetric = symmetric_point_set(p.vertices());
    rep.facets_symmetric = true;
    for (const auto &f : lattice.faces(p.dim() - 1))
        if (!symmetric_point_set(face_points(p, f)))
            rep.facets_symmetric = false;
    rep.belts_ok = true;
    for (const auto &b : compute_belts(p, lattice))
        if (b.facets.size() != 4 && b.facets.size() != 6)
            rep.belts_ok = false;
    return rep;
}

VenkovReport check_minkowski_venkov(const Polytope &p) {
    return check_minkowski_venkov(p, FaceLattice(p));
}

std::optional<QVec> standard_vector(const Cell &cell, const Face &face) {
    const auto &verts = cell.poly.vertices();
    QVec center = face_centroid(cell.poly, face);
    ClosestPoints cp = closest_lattice_points(cell.form, center);
    for (const auto &t : cp.points) {
        if (is_zero(t))
            continue;
        Bits inter(verts.size());
        for (std::size_t v = 0; v < verts.size(); ++v)
            if (cell.poly.contains(verts[v] - t))
                inter.set(v);
        if (inter == face.vertices) {
            if (Rat(1, 2) * t != center)
                throw Violation("standard face is not centred at t/2");
            return t;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> cap(const Cell &cell, const QVec &e) {
    if (is_zero(e))
        throw InvalidInput("cap direction must be nonzero");
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < cell.facet_count(); ++f)
        if (sgn(inner(cell.form, e, cell.facet_vectors[f])) < 0)
            out.push_back(f);
    return out;
}

} // namespace parallelo
