#include "parallelo/structure.hpp"

#include "parallelo/cvp.hpp"
#include "parallelo/delaunay.hpp"
#include "parallelo/extend.hpp"
#include "parallelo/freespace.hpp"
#include "parallelo/intlattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace parallelo {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<std::size_t>> groups() {
        std::map<std::size_t, std::vector<std::size_t>> g;
        for (std::size_t i = 0; i < parent.size(); ++i)
            g[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto &[root, members] : g)
            out.push_back(std::move(members));
        return out;
    }
};

// Connected components of the vector matroid, joined along fundamental circuits.
std::vector<std::vector<std::size_t>> matroid_components(const std::vector<QVec> &vs, std::size_t d) {
    UnionFind uf(vs.size());
    std::vector<std::size_t> basis_idx;
    std::vector<QVec> basis;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto trial = basis;
        trial.push_back(vs[i]);
        if (rank(trial, d) == trial.size()) {
            basis = std::move(trial);
            basis_idx.push_back(i);
        }
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (std::find(basis_idx.begin(), basis_idx.end(), i) != basis_idx.end())
            continue;
        QVec c = *coordinates(basis, vs[i]);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (sgn(c[j]) != 0)
                uf.unite(i, basis_idx[j]);
    }
    return uf.groups();
}

} // namespace

std::vector<std::vector<std::size_t>> six_belt_components(const Cell &cell) {
    UnionFind uf(cell.classes.size());
    for (const auto &b : belts(cell)) {
        if (b.facets.size() != 6)
            continue;
        for (auto f : b.facets)
            uf.unite(cell.class_of[b.facets[0]], cell.class_of[f]);
    }
    return uf.groups();
}

Decomposition decompose(const Cell &cell) {
    const std::size_t d = cell.dim();
    auto belt_parts = six_belt_components(cell);
    Decomposition dec;
    for (const auto &comp : matroid_components(cell.classes, d)) {
        Factor fac;
        fac.classes = comp;
        std::vector<QVec> vs;
        for (auto c : comp)
            vs.push_back(cell.classes[c]);
        fac.space = Subspace::span(vs, d);
        std::size_t parts = std::count_if(belt_parts.begin(), belt_parts.end(), [&](const auto &p) {
            return std::find(comp.begin(), comp.end(), p[0]) != comp.end();
        });
        fac.irreducible = parts == 1;
        dec.factors.push_back(std::move(fac));
    }
    if (dec.factors.size() == 1) {
        Factor &fac = dec.factors[0];
        for (std::size_t i = 0; i < d; ++i)
            fac.basis.push_back(unit(d, i));
        fac.cell = cell;
        return dec;
    }
    for (std::size_t i = 0; i < dec.factors.size(); ++i)
        for (std::size_t j = i + 1; j < dec.factors.size(); ++j)
            for (auto a : dec.factors[i].classes)
                for (auto b : dec.factors[j].classes)
                    if (sgn(inner(cell.form, cell.classes[a], cell.classes[b])) != 0)
                        throw Violation("factors of a reducible Voronoi cell are not orthogonal");

    std::vector<QVec> sum = {zeros(d)};
    for (auto &fac : dec.factors) {
        fac.basis = saturated_basis(fac.space.basis(), d);
        fac.cell = voronoi_cell(restrict_form(cell.form, fac.basis));
        QMat bt = QMat::from_rows(fac.basis, d).transpose();
        std::vector<QVec> next;
        for (const auto &p : sum)
            for (const auto &v : fac.cell.poly.vertices())
                next.push_back(p + bt * v);
        sum = std::move(next);
    }
    std::sort(sum.begin(), sum.end(), lex_less);
    sum.erase(std::unique(sum.begin(), sum.end()), sum.end());
    if (sum != cell.poly.vertices())
        throw Violation("direct sum of the factor cells differs from the cell");
    return dec;
}

GramMatrix dilate(const GramMatrix &g, const QVec &n, const Rat &scale_sq) {
    const std::size_t d = g.dim();
    if (n.size() != d)
        throw InvalidInput("dilatation vector of wrong dimension");
    if (is_zero(n))
        throw InvalidInput("dilatation vector must be nonzero");
    if (scale_sq < 0)
        throw InvalidInput("dilatation scale must be nonnegative");
    QVec gn = g.apply(n);
    QMat m = g.matrix();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) += scale_sq * gn[i] * gn[j];
    return GramMatrix(m);
}

std::vector<QVec> fn_set(const GramMatrix &g, const QVec &n) {
    if (n.size() != g.dim() || is_zero(n))
        throw InvalidInput("normal must be a nonzero vector of the lattice dimension");
    std::vector<QVec> out;
    for (const auto &s : relevant_vectors(g))
        if (sgn(inner(g, n, s)) != 0)
            out.push_back(s);
    return out;
}

bool check_dilatation_span(const GramMatrix &g, const QVec &n) {
    const std::size_t d = g.dim();
    Subspace before = Subspace::span(fn_set(g, n), d);
    Subspace after = Subspace::span(fn_set(dilate(g, n), n), d);
    return before.contains(after);
}

bool is_cross(const Cell &cell, const Subspace &pi1, const Subspace &pi2) {
    const std::size_t d = cell.dim();
    if (pi1.ambient_dim() != d || pi2.ambient_dim() != d)
        throw InvalidInput("cross hyperplanes of wrong dimension");
    if (pi1.rank() + 1 != d || pi2.rank() + 1 != d || pi1 == pi2)
        return false;
    return std::all_of(cell.classes.begin(), cell.classes.end(),
                       [&](const QVec &s) { return pi1.contains(s) || pi2.contains(s); });
}

Cross make_cross(const Cell &cell, const Subspace &pi1, const Subspace &pi2) {
    if (!is_cross(cell, pi1, pi2))
        throw InvalidInput("the hyperplanes are not a cross for the cell");
    Cross c{pi1, pi2, {}};
    for (const auto &s : cell.classes)
        c.assignment.push_back((pi1.contains(s) ? 1 : 0) + (pi2.contains(s) ? 2 : 0));
    return c;
}

QVec form_normal(const GramMatrix &g, const Subspace &hyperplane) {
    if (hyperplane.rank() + 1 != g.dim())
        throw InvalidInput("normal requested for a subspace that is not a hyperplane");
    return primitive(orthogonal_complement(g, hyperplane).basis().at(0));
}

bool check_dilatation_keeps_cross(const GramMatrix &g, const Subspace &pi1, const Subspace &pi2) {
    Cell cell = voronoi_cell(g);
    if (!is_cross(cell, pi1, pi2))
        throw InvalidInput("the hyperplanes are not a cross for the cell");
    return is_cross(voronoi_cell(dilate(g, form_normal(g, pi1))), pi1, pi2);
}

namespace {

std::optional<Rat> rational_sqrt(const Rat &x) {
    if (x < 0)
        return std::nullopt;
    Int num = x.get_num(), den = x.get_den();
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (rn * rn != num || rd * rd != den)
        return std::nullopt;
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

ScaledNormal scaled_normal(const QVec &dir, const Rat &scale_sq) {
    ScaledNormal n{dir, scale_sq, std::nullopt};
    if (auto r = rational_sqrt(scale_sq))
        n.exact = *r * dir;
    return n;
}

} // namespace

TwofoldResult twofold_dilatation(const GramMatrix &g, const Subspace &pi1, const Subspace &pi2) {
    const std::size_t d = g.dim();
    if (d < 3)
        throw InvalidInput("twofold dilatation needs dimension at least 3");
    Cell cell = voronoi_cell(g);
    if (!is_cross(cell, pi1, pi2))
        throw InvalidInput("the hyperplanes are not a cross for the cell");
    TwofoldResult out;
    Subspace meet = pi1.intersect(pi2);
    std::vector<QVec> mb = saturated_basis(meet.basis(), d);
    out.rho_sq = covering_radius_sq(restrict_form(g, mb));

    QVec n1 = form_normal(g, pi1);
    out.alpha = rational_gcd(g.apply(n1));
    Rat c1 = out.rho_sq / (out.alpha * out.alpha);
    out.n1 = scaled_normal(n1, c1);
    out.g1 = dilate(g, n1, c1);

    QVec n2 = form_normal(out.g1, pi2);
    out.beta = rational_gcd(out.g1.apply(n2));
    Rat c2 = out.rho_sq / (out.beta * out.beta);
    out.n2 = scaled_normal(n2, c2);
    out.g2 = dilate(out.g1, n2, c2);
    out.free_plane = Subspace::span({n1, n2}, d);
    if (out.free_plane.rank() != 2)
        throw Violation("dilatation normals are parallel");

    Cell dilated = voronoi_cell(out.g2);
    if (!is_cross(dilated, pi1, pi2))
        throw Violation("twofold dilatation lost the cross");
    for (const auto &b : belts(dilated)) {
        if (b.facets.size() != 6)
            continue;
        bool hit = std::any_of(b.facets.begin(), b.facets.end(), [&](std::size_t f) {
            return facet_parallel_to(dilated, f, n1) && facet_parallel_to(dilated, f, n2);
        });
        if (!hit)
            throw Violation("span of the dilatation normals is not a free plane");
    }
    return out;
}

std::optional<Cross> find_cross(const Cell &cell) {
    const std::size_t d = cell.dim();
    const std::size_t m = cell.classes.size();
    if (d < 2)
        return std::nullopt;
    std::optional<std::pair<Subspace, Subspace>> found;
    std::function<void(std::size_t, const Subspace &, const Subspace &)> search =
        [&](std::size_t i, const Subspace &s1, const Subspace &s2) {
            if (found)
                return;
            if (i == m) {
                found = std::make_pair(s1, s2);
                return;
            }
            const QVec &v = cell.classes[i];
            if (s1.contains(v) || s2.contains(v)) {
                search(i + 1, s1, s2);
                return;
            }
            Subspace a = s1 + Subspace::span({v}, d);
            if (a.rank() + 1 <= d)
                search(i + 1, a, s2);
            if (s1.rank() == 0)
                return; // the buckets are interchangeable until the first is used
            Subspace b = s2 + Subspace::span({v}, d);
            if (b.rank() + 1 <= d)
                search(i + 1, s1, b);
        };
    search(0, Subspace(d), Subspace(d));
    if (!found)
        return std::nullopt;
    auto complete = [&](Subspace s, const Subspace &avoid) {
        for (std::size_t i = 0; i < d && s.rank() + 1 < d; ++i) {
            Subspace t = s + Subspace::span({unit(d, i)}, d);
            // Keep the two hyperplanes distinct.
            if (t.rank() + 1 == d && t == avoid)
                continue;
            s = t;
        }
        return s;
    };
    Subspace pi1 = complete(found->first, Subspace(d));
    Subspace pi2 = complete(found->second, pi1);
    if (pi1.rank() + 1 != d || pi2.rank() + 1 != d)
        throw Violation("cross buckets could not be completed to hyperplanes");
    return make_cross(cell, pi1, pi2);
}

bool check_cross_reducible(const Cell &cell) {
    if (!find_cross(cell))
        return true;
    return decompose(cell).reducible();
}

bool check_factors_in_cross(const Cell &cell, const Cross &cross) {
    Decomposition dec = decompose(cell);
    return std::all_of(dec.factors.begin(), dec.factors.end(), [&](const Factor &f) {
        return !f.irreducible || cross.pi1.contains(f.space) || cross.pi2.contains(f.space);
    });
}

GoodBadReport good_bad_facets(const Cell &cell, const QVec &v) {
    const std::size_t d = cell.dim();
    if (v.size() != d)
        throw InvalidInput("offset of wrong dimension");
    GoodBadReport rep;
    rep.v = v;
    for (std::size_t c = 0; c < cell.classes.size(); ++c) {
        const QVec &s = cell.classes[c];
        Rat level = norm_sq(cell.form, s) / 2;
        QVec q = v + Rat(1, 2) * s;
        bool bad = false;
        for (const auto &t : closest_lattice_points(cell.form, q).points)
            if (inner(cell.form, s, q - t) == level)
                bad = true;
        (bad ? rep.bad : rep.good).push_back(c);
    }
    ClosestPoints home = closest_lattice_points(cell.form, v);
    rep.v_prime = v - home.points.front();
    for (const auto &t : home.points)
        for (auto c : rep.bad)
            if (sgn(inner(cell.form, cell.classes[c], v - t)) != 0)
                throw Violation("a point of the coset in the cell is not parallel to a bad facet");
    return rep;
}

GoodBadReport good_bad_facets(const GramMatrix &g, const QVec &v) {
    return good_bad_facets(voronoi_cell(g), v);
}

PlaneAnalysis analyze_perfect_plane(const Cell &cell, const Subspace &p) {
    const std::size_t d = cell.dim();
    if (d < 3)
        throw InvalidInput("plane analysis needs dimension at least 3");
    PerfectPlaneReport lines = perfect_lines_in_plane(cell, p);
    PlaneAnalysis out;
    out.line1 = lines.line1;
    out.line2 = lines.line2;

    std::vector<QVec> bp;
    for (const auto &s : cell.facet_vectors)
        if (std::all_of(p.basis().begin(), p.basis().end(),
                        [&](const QVec &b) { return sgn(inner(cell.form, s, b)) == 0; }))
            bp.push_back(s);
    Subspace w = Subspace::span(bp, d);
    if (w.rank() + 2 != d)
        throw Violation("facet vectors orthogonal to a perfect plane do not span its complement");
    QVec u = lines.line1 + lines.line2;
    ABCSets sets = ab_sets(cell, u);

    out.basis = saturated_basis(w.basis(), d);
    auto to_r = [&](const QVec &x) { return *coordinates(out.basis, project_along(p, w, x)); };
    std::vector<QVec> pts;
    for (const auto &v : cell.poly.vertices())
        pts.push_back(to_r(v));
    out.r = Polytope::from_points(pts, d - 2);
    std::vector<QVec> units;
    for (std::size_t i = 0; i + 2 < d; ++i)
        units.push_back(unit(d - 2, i));
    if (!is_parallelohedron(out.r, units))
        throw Violation("projection along a perfect plane is not a parallelohedron");

    GramMatrix rg = restrict_form(cell.form, out.basis);
    Cell rc = voronoi_cell(rg);
    if (rc.poly.vertices() != out.r.vertices()) {
        MetricRecovery rec = recover_voronoi_metric(out.r, units);
        if (!rec.found)
            throw Violation("projection along a perfect plane admits no Voronoi metric");
        rg = GramMatrix(rec.metric);
        rc = voronoi_cell(rg);
    }
    out.r_metric = rg.matrix();

    for (const auto &s : sets.C) {
        if (sgn(inner(cell.form, s, lines.line1)) == 0)
            out.c1.push_back(s);
        if (sgn(inner(cell.form, s, lines.line2)) == 0)
            out.c2.push_back(s);
    }
    if (out.c1.empty() || out.c2.empty())
        throw Violation("a cap has no facet parallel to a perfect line");
    out.v1 = -to_r(out.c1.front());
    out.v2 = -to_r(out.c2.front());

    auto prism_over = [&](const std::vector<QVec> &cj, const QVec &other) {
        std::size_t transversal = std::count_if(cell.facet_vectors.begin(), cell.facet_vectors.end(),
                                                [&](const QVec &s) { return sgn(inner(cell.form, s, other)) != 0; });
        return cj.size() == 1 && transversal == 2;
    };
    if (is_integral(out.v1) || is_integral(out.v2)) {
        out.prism = true;
        if (is_integral(out.v1))
            out.prism_consistent = out.prism_consistent && prism_over(out.c1, lines.line2);
        if (is_integral(out.v2))
            out.prism_consistent = out.prism_consistent && prism_over(out.c2, lines.line1);
        return out;
    }

    out.report1 = good_bad_facets(rc, out.v1);
    out.report2 = good_bad_facets(rc, out.v2);
    for (auto c : out.report1->bad)
        if (std::find(out.report2->bad.begin(), out.report2->bad.end(), c) != out.report2->bad.end())
            throw Violation("a facet of the projection is bad for both layer offsets");
    Subspace pi1 = orthogonal_complement(rg, Subspace::span({out.report1->v_prime}, d - 2));
    Subspace pi2 = orthogonal_complement(rg, Subspace::span({out.report2->v_prime}, d - 2));
    if (!is_cross(rc, pi1, pi2))
        throw Violation("complements of the coset representatives are not a cross of the projection");
    out.cross = make_cross(rc, pi1, pi2);
    return out;
}

} // namespace parallelo
