#include "parallelo/freespace.hpp"

#include "parallelo/intlattice.hpp"

#include <algorithm>
#include <functional>

namespace parallelo {

std::vector<Belt> six_belts(const Cell &cell) {
    std::vector<Belt> out;
    for (const auto &b : belts(cell))
        if (b.facets.size() == 6)
            out.push_back(b);
    return out;
}

bool is_free_segment(const Cell &cell, const QVec &u) {
    if (u.size() != cell.dim())
        throw InvalidInput("segment direction of wrong dimension");
    if (is_zero(u))
        throw InvalidInput("segment direction must be nonzero");
    for (const auto &b : belts(cell)) {
        if (b.facets.size() != 6)
            continue;
        bool hit = std::any_of(b.facets.begin(), b.facets.end(),
                               [&](std::size_t f) { return facet_parallel_to(cell, f, u); });
        if (!hit)
            return false;
    }
    return true;
}

namespace {

std::vector<std::size_t> belt_classes(const Cell &cell, const Belt &b) {
    std::vector<std::size_t> cs;
    for (auto f : b.facets)
        cs.push_back(cell.class_of[f]);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

} // namespace

std::vector<PerfectSpace> perfect_free_spaces(const Cell &cell) {
    const std::size_t d = cell.dim();
    std::vector<std::vector<std::size_t>> six;
    for (const auto &b : belts(cell))
        if (b.facets.size() == 6)
            six.push_back(belt_classes(cell, b));

    std::vector<Subspace> found;
    std::function<void(const Subspace &)> search = [&](const Subspace &w) {
        for (const auto &belt : six) {
            bool hit = std::any_of(belt.begin(), belt.end(),
                                   [&](std::size_t c) { return w.contains(cell.classes[c]); });
            if (hit)
                continue;
            for (auto c : belt) {
                Subspace next = w + Subspace::span({cell.classes[c]}, d);
                if (next.rank() <= d - 1)
                    search(next);
            }
            return;
        }
        found.push_back(w);
    };
    search(Subspace(d));

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<PerfectSpace> out;
    for (const auto &w : found) {
        bool minimal = std::none_of(found.begin(), found.end(), [&](const Subspace &o) {
            return o.rank() < w.rank() && w.contains(o);
        });
        if (!minimal)
            continue;
        PerfectSpace ps{orthogonal_complement(cell.form, w), {}};
        for (std::size_t c = 0; c < cell.classes.size(); ++c)
            if (w.contains(cell.classes[c]))
                ps.witness_classes.push_back(c);
        out.push_back(std::move(ps));
    }
    std::sort(out.begin(), out.end(),
              [](const PerfectSpace &a, const PerfectSpace &b) { return a.space < b.space; });
    return out;
}

ABCSets ab_sets(const Cell &cell, const QVec &u) {
    const std::size_t d = cell.dim();
    if (!is_free_segment(cell, u))
        throw InvalidInput("segment direction " + to_string(u) + " is not free");
    ABCSets out;
    std::vector<int> sign(cell.facet_count());
    for (std::size_t f = 0; f < cell.facet_count(); ++f) {
        sign[f] = sgn(inner(cell.form, cell.facet_vectors[f], u));
        if (sign[f] == 0)
            out.B.push_back(cell.facet_vectors[f]);
        else if (sign[f] < 0)
            out.C.push_back(cell.facet_vectors[f]);
    }
    if (d >= 2) {
        for (const auto &ridge : faces(cell, d - 2)) {
            if (ridge.facets.count() != 2)
                throw Violation("a (d-2)-face of the cell lies on more than two facets");
            std::size_t f1 = ridge.facets.find_first(), f2 = ridge.facets.find_next(f1);
            if (sign[f1] * sign[f2] >= 0)
                continue;
            auto t = standard_vector(cell, ridge);
            if (!t)
                throw Violation("semi-shaded (d-2)-face is not standard");
            out.A.push_back(*t);
        }
    }
    std::sort(out.A.begin(), out.A.end(), lex_less);
    out.A.erase(std::unique(out.A.begin(), out.A.end()), out.A.end());
    std::vector<QVec> ab = out.A;
    ab.insert(ab.end(), out.B.begin(), out.B.end());
    out.span_ab = Subspace::span(ab, d);
    if (out.span_ab.rank() + 1 != d)
        throw Violation("span of A and B has rank " + std::to_string(out.span_ab.rank()) +
                        " for a free direction");
    return out;
}

namespace {

std::vector<QVec> ab_union(const ABCSets &s) {
    std::vector<QVec> ab = s.A;
    ab.insert(ab.end(), s.B.begin(), s.B.end());
    return ab;
}

} // namespace

bool check_cap_differences(const Cell &cell, const QVec &u) {
    ABCSets s = ab_sets(cell, u);
    return std::all_of(s.C.begin(), s.C.end(),
                       [&](const QVec &c) { return s.span_ab.contains(c - s.C[0]); });
}

bool check_ab_saturated(const Cell &cell, const QVec &u) {
    ABCSets s = ab_sets(cell, u);
    return saturation_index(ab_union(s), cell.dim()) == 1;
}

bool check_parallel_facet_vectors(const Cell &cell, const QVec &u) {
    ABCSets s = ab_sets(cell, u);
    for (std::size_t f = 0; f < cell.facet_count(); ++f)
        if (s.span_ab.contains(cell.facet_vectors[f]) && !facet_parallel_to(cell, f, u))
            return false;
    return true;
}

bool check_layer_projection(const Cell &cell, const QVec &u) {
    const std::size_t d = cell.dim();
    ABCSets s = ab_sets(cell, u);
    std::vector<QVec> ab = ab_union(s);
    if (saturation_index(ab, d) != 1)
        return false;
    std::vector<QVec> basis = lattice_basis(ab, d);
    QVec t = complement_basis(ab, d).at(0);
    if (s.span_ab.contains(u))
        throw Violation("free direction lies inside span of A and B");

    // Coordinates of the projection along u in the lattice basis of Z(A u B).
    QMat cols(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            cols(i, j) = j + 1 < d ? basis[j][i] : u[i];
    QMat to_coords = *inverse(cols);
    auto proj = [&](const QVec &x) {
        QVec c = to_coords * x;
        c.pop_back();
        return c;
    };

    const std::size_t k = d - 1;
    std::vector<QVec> shadow;
    for (const auto &v : cell.poly.vertices())
        shadow.push_back(proj(v));
    Polytope q = Polytope::from_points(shadow, k);
    QVec pt = proj(t);
    std::vector<Int> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rat mn = q.vertices()[0][i], mx = mn;
        for (const auto &v : q.vertices()) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        Rat a = 2 * mn - pt[i], b = 2 * mx - pt[i];
        mpz_cdiv_q(lo[i].get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        mpz_fdiv_q(hi[i].get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    }

    std::vector<Int> c = lo;
    while (true) {
        QVec w = t;
        QVec shift = pt;
        for (std::size_t i = 0; i < k; ++i) {
            w = w + Rat(c[i]) * basis[i];
            shift[i] += c[i];
        }
        std::vector<Halfspace> hs = q.facets();
        for (const auto &h : q.facets())
            hs.push_back({h.normal, h.offset + dot(h.normal, shift)});
        std::vector<QVec> right = bounded_vertices(hs, k);
        std::vector<QVec> meet;
        for (const auto &v : cell.poly.vertices())
            if (cell.poly.contains(v - w))
                meet.push_back(proj(v));
        std::vector<QVec> left = meet.empty() ? meet : extreme_points(meet);
        if (left != right)
            return false;

        std::size_t i = 0;
        while (i < k && c[i] == hi[i]) {
            c[i] = lo[i];
            ++i;
        }
        if (i == k)
            break;
        c[i] += 1;
    }
    return true;
}

namespace {

// Upper half-plane representative of a 2D direction.
QVec half_plane(QVec c) {
    if (sgn(c[1]) < 0 || (sgn(c[1]) == 0 && sgn(c[0]) < 0))
        c = -c;
    return c;
}

Rat cross2(const QVec &a, const QVec &b) { return a[0] * b[1] - a[1] * b[0]; }

QVec from_plane(const Subspace &p, const QVec &c) {
    return canonical_direction(c[0] * p.basis()[0] + c[1] * p.basis()[1]);
}

struct PlaneLines {
    std::vector<QVec> coords; // upper half-plane, sorted by angle
};

PlaneLines plane_traces(const Cell &cell, const Subspace &p) {
    const auto &b = p.basis();
    PlaneLines out;
    for (const auto &s : cell.classes) {
        Rat alpha = inner(cell.form, s, b[0]), beta = inner(cell.form, s, b[1]);
        if (sgn(alpha) == 0 && sgn(beta) == 0)
            continue;
        out.coords.push_back(half_plane(primitive(QVec{beta, -alpha})));
    }
    std::sort(out.coords.begin(), out.coords.end(),
              [](const QVec &x, const QVec &y) { return sgn(cross2(x, y)) > 0; });
    out.coords.erase(std::unique(out.coords.begin(), out.coords.end()), out.coords.end());
    return out;
}

void require_plane(const Cell &cell, const Subspace &p) {
    if (p.ambient_dim() != cell.dim())
        throw InvalidInput("plane of wrong ambient dimension");
    if (p.rank() != 2)
        throw InvalidInput("expected a plane (rank 2), got rank " + std::to_string(p.rank()));
}

bool orthogonal_to(const Cell &cell, const QVec &s, const Subspace &p) {
    return std::all_of(p.basis().begin(), p.basis().end(),
                       [&](const QVec &b) { return sgn(inner(cell.form, s, b)) == 0; });
}

} // namespace

std::vector<QVec> trace_lines(const Cell &cell, const Subspace &p) {
    require_plane(cell, p);
    std::vector<QVec> out;
    for (const auto &c : plane_traces(cell, p).coords)
        out.push_back(from_plane(p, c));
    return out;
}

PerfectPlaneReport perfect_lines_in_plane(const Cell &cell, const Subspace &p) {
    const std::size_t d = cell.dim();
    require_plane(cell, p);
    PerfectPlaneReport rep{p, {}, {}, {}};
    std::vector<QVec> bp;
    for (std::size_t c = 0; c < cell.classes.size(); ++c)
        if (orthogonal_to(cell, cell.classes[c], p)) {
            rep.b_plane.push_back(c);
            bp.push_back(cell.classes[c]);
        }
    bool hits = true;
    for (const auto &b : belts(cell)) {
        if (b.facets.size() != 6)
            continue;
        auto cs = belt_classes(cell, b);
        hits = hits && std::any_of(cs.begin(), cs.end(), [&](std::size_t c) {
                   return std::find(rep.b_plane.begin(), rep.b_plane.end(), c) != rep.b_plane.end();
               });
    }
    if (rank(bp, d) + 2 != d || !hits)
        throw InvalidInput("not a perfect free plane");

    std::vector<QVec> perfect;
    for (const auto &line : trace_lines(cell, p)) {
        std::vector<QVec> bl;
        for (const auto &s : cell.classes)
            if (sgn(inner(cell.form, s, line)) == 0)
                bl.push_back(s);
        if (rank(bl, d) + 1 == d)
            perfect.push_back(line);
    }
    if (perfect.size() != 2)
        throw Violation("perfect plane contains " + std::to_string(perfect.size()) +
                        " perfect lines instead of two");
    rep.line1 = perfect[0];
    rep.line2 = perfect[1];
    for (std::size_t f = 0; f < cell.facet_count(); ++f)
        if (!facet_parallel_to(cell, f, rep.line1) && !facet_parallel_to(cell, f, rep.line2))
            throw Violation("facet " + to_string(cell.facet_vectors[f]) +
                            " is parallel to neither perfect line");
    for (const auto &line : perfect)
        for (const auto &a : ab_sets(cell, line).A)
            if (!orthogonal_to(cell, a, p))
                throw Violation("standard vector " + to_string(a) +
                                " of a perfect line is not orthogonal to the plane");
    return rep;
}

std::vector<QVec> span_discontinuities(const Cell &cell, const Subspace &p) {
    require_plane(cell, p);
    std::vector<QVec> lines = plane_traces(cell, p).coords;
    const std::size_t k = lines.size();
    if (k == 0)
        return {};
    auto span_at = [&](const QVec &c) { return ab_sets(cell, from_plane(p, c)).span_ab; };
    std::vector<Subspace> at_line, sector;
    for (std::size_t i = 0; i < k; ++i) {
        at_line.push_back(span_at(lines[i]));
        QVec dir;
        if (k == 1)
            dir = QVec{-lines[0][1], lines[0][0]};
        else if (i + 1 < k)
            dir = lines[i] + lines[i + 1];
        else
            dir = lines[i] - lines[0];
        sector.push_back(span_at(dir));
    }
    std::vector<QVec> out;
    for (std::size_t i = 0; i < k; ++i) {
        const Subspace &after = sector[i];
        const Subspace &before = sector[(i + k - 1) % k];
        if (!(at_line[i] == after) || !(at_line[i] == before))
            out.push_back(from_plane(p, lines[i]));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

bool check_span_jumps(const Cell &cell, const Subspace &p) {
    PerfectPlaneReport rep = perfect_lines_in_plane(cell, p);
    std::vector<QVec> expected = {rep.line1, rep.line2};
    std::sort(expected.begin(), expected.end(), lex_less);
    return span_discontinuities(cell, p) == expected;
}

} // namespace parallelo
