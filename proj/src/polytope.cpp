#include "parallelo/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace parallelo {

namespace {

using IVec = std::vector<Int>;

IVec integer_row(const QVec &row) {
    QVec p = primitive(row);
    IVec out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = p[i].get_num();
    return out;
}

Int idot(const IVec &a, const IVec &b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

void make_primitive(IVec &v) {
    Int g = 0;
    for (const auto &x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto &x : v)
            x /= g;
}

struct Ray {
    IVec y;
    Bits zero;
};

// Extreme rays of the pointed cone {y : A y >= 0}. Rows of A are integral.
std::vector<IVec> integer_cone_rays(const std::vector<IVec> &a, std::size_t n) {
    const std::size_t m = a.size();
    // Greedy independent row subset for the initial simplicial cone.
    std::vector<std::size_t> basis_rows;
    std::vector<QVec> chosen;
    for (std::size_t i = 0; i < m && basis_rows.size() < n; ++i) {
        QVec r(n);
        for (std::size_t j = 0; j < n; ++j)
            r[j] = Rat(a[i][j]);
        auto trial = chosen;
        trial.push_back(r);
        if (rank(trial, n) == trial.size()) {
            chosen = std::move(trial);
            basis_rows.push_back(i);
        }
    }
    if (basis_rows.size() < n)
        throw InvalidInput("constraint system is unbounded (rank deficient)");

    auto inv = inverse(QMat::from_rows(chosen, n));
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < n; ++j) {
        Ray r{integer_row(inv->col(j)), Bits(m)};
        for (std::size_t i = 0; i < n; ++i)
            if (i != j)
                r.zero.set(basis_rows[i]);
        rays.push_back(std::move(r));
    }
    std::vector<bool> used(m, false);
    for (auto b : basis_rows)
        used[b] = true;

    for (std::size_t h = 0; h < m; ++h) {
        if (used[h])
            continue;
        std::vector<int> sign(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            sign[k] = sgn(idot(a[h], rays[k].y));
            if (sign[k] > 0)
                pos.push_back(k);
            else if (sign[k] < 0)
                neg.push_back(k);
            else
                rays[k].zero.set(h);
        }
        if (neg.empty())
            continue;
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k)
            if (sign[k] >= 0)
                next.push_back(rays[k]);
        for (auto p : pos) {
            for (auto q : neg) {
                Bits common = rays[p].zero & rays[q].zero;
                if (common.count() + 2 < n)
                    continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                    if (k != p && k != q && common.is_subset_of(rays[k].zero))
                        adjacent = false;
                if (!adjacent)
                    continue;
                Int ap = idot(a[h], rays[p].y), aq = idot(a[h], rays[q].y);
                IVec y(n);
                for (std::size_t j = 0; j < n; ++j)
                    y[j] = ap * rays[q].y[j] - aq * rays[p].y[j];
                make_primitive(y);
                common.set(h);
                next.push_back(Ray{std::move(y), std::move(common)});
            }
        }
        rays = std::move(next);
    }
    std::vector<IVec> out;
    for (auto &r : rays)
        out.push_back(std::move(r.y));
    return out;
}

QVec affine_combination_sum(const std::vector<QVec> &pts) {
    QVec c = zeros(pts[0].size());
    for (const auto &p : pts)
        c = c + p;
    return Rat(1, pts.size()) * c;
}

} // namespace

std::vector<QVec> cone_extreme_rays(const std::vector<QVec> &rows, std::size_t n) {
    std::vector<IVec> a;
    for (const auto &r : rows) {
        if (r.size() != n)
            throw InvalidInput("cone constraint of wrong dimension");
        if (!is_zero(r))
            a.push_back(integer_row(r));
    }
    std::vector<QVec> out;
    for (const auto &ray : integer_cone_rays(a, n)) {
        QVec v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = Rat(ray[j]);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Halfspace normalized(const QVec &normal, const Rat &offset) {
    if (is_zero(normal))
        throw InvalidInput("halfspace with zero normal");
    QVec p = primitive(normal);
    // p = k * normal for some positive rational k.
    std::size_t i = 0;
    while (sgn(normal[i]) == 0)
        ++i;
    Rat k = p[i] / normal[i];
    return Halfspace{p, k * offset};
}

std::vector<QVec> bounded_vertices(const std::vector<Halfspace> &halfspaces, std::size_t d) {
    std::vector<IVec> a;
    for (const auto &h : halfspaces) {
        if (h.normal.size() != d)
            throw InvalidInput("halfspace of wrong dimension");
        QVec row(d + 1);
        row[0] = h.offset;
        for (std::size_t j = 0; j < d; ++j)
            row[j + 1] = -h.normal[j];
        a.push_back(integer_row(row));
    }
    IVec y0(d + 1, Int(0));
    y0[0] = 1;
    a.push_back(y0);
    auto rays = integer_cone_rays(a, d + 1);
    std::vector<QVec> verts;
    for (const auto &r : rays) {
        if (sgn(r[0]) == 0)
            throw InvalidInput("halfspace system is unbounded");
        QVec v(d);
        for (std::size_t j = 0; j < d; ++j)
            v[j] = Rat(r[j + 1], r[0]);
        for (auto &x : v)
            x.canonicalize();
        verts.push_back(std::move(v));
    }
    std::sort(verts.begin(), verts.end(), lex_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

std::vector<QVec> dd_hull(const std::vector<Halfspace> &halfspaces, std::size_t d) {
    std::vector<QVec> verts = bounded_vertices(halfspaces, d);
    if (verts.empty())
        throw InvalidInput("halfspace system is infeasible (empty polytope)");
    return verts;
}

std::vector<Halfspace> dd_facets(const std::vector<QVec> &points, std::size_t d) {
    if (points.empty() || affine_rank(points) != d)
        throw InvalidInput("points do not span a full-dimensional polytope");
    QVec c = affine_combination_sum(points);
    std::vector<IVec> a;
    for (const auto &p : points) {
        QVec row(d + 1);
        row[0] = 1;
        for (std::size_t j = 0; j < d; ++j)
            row[j + 1] = c[j] - p[j];
        a.push_back(integer_row(row));
    }
    IVec y0(d + 1, Int(0));
    y0[0] = 1;
    a.push_back(y0);
    auto rays = integer_cone_rays(a, d + 1);
    std::vector<Halfspace> out;
    for (const auto &r : rays) {
        if (sgn(r[0]) == 0)
            throw Error("polar of a full-dimensional hull came out unbounded");
        QVec y(d);
        for (std::size_t j = 0; j < d; ++j)
            y[j] = Rat(r[j + 1], r[0]);
        for (auto &x : y)
            x.canonicalize();
        out.push_back(normalized(y, 1 + dot(y, c)));
    }
    std::sort(out.begin(), out.end(), [](const Halfspace &x, const Halfspace &y) {
        return lex_less(x.normal, y.normal);
    });
    return out;
}

std::vector<QVec> enumerate_vertices_bruteforce(const std::vector<Halfspace> &halfspaces,
                                                std::size_t d) {
    const std::size_t m = halfspaces.size();
    std::set<QVec, LexLess> found;
    if (m < d)
        return {};
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i)
        idx[i] = i;
    while (true) {
        QMat a(d, d);
        QVec b(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j)
                a(i, j) = halfspaces[idx[i]].normal[j];
            b[i] = halfspaces[idx[i]].offset;
        }
        if (auto inv = inverse(a)) {
            QVec x = (*inv) * b;
            bool feasible = std::all_of(halfspaces.begin(), halfspaces.end(), [&](const Halfspace &h) {
                return dot(h.normal, x) <= h.offset;
            });
            if (feasible)
                found.insert(x);
        }
        std::size_t k = d;
        while (k > 0 && idx[k - 1] == m - d + k - 1)
            --k;
        if (k == 0)
            break;
        ++idx[k - 1];
        for (std::size_t j = k; j < d; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return {found.begin(), found.end()};
}

std::size_t affine_rank(const std::vector<QVec> &points) {
    if (points.empty())
        return 0;
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(points[i] - points[0]);
    return rank(diffs, points[0].size());
}

Subspace direction_space(const std::vector<QVec> &points, std::size_t d) {
    std::vector<QVec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(points[i] - points[0]);
    return Subspace::span(diffs, d);
}

std::vector<QVec> affine_coordinates(const std::vector<QVec> &points) {
    Subspace dir = direction_space(points, points.at(0).size());
    std::vector<QVec> coords;
    for (const auto &p : points)
        coords.push_back(*coordinates(dir.basis(), p - points[0]));
    return coords;
}

std::vector<QVec> extreme_points(const std::vector<QVec> &points) {
    std::vector<QVec> pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1)
        return pts;
    const std::size_t d = pts[0].size();
    std::vector<QVec> coords = affine_coordinates(pts);
    const std::size_t k = coords[0].size();
    std::vector<QVec> out;
    if (k == 1) {
        auto [lo, hi] = std::minmax_element(coords.begin(), coords.end(), lex_less);
        out = {pts[static_cast<std::size_t>(lo - coords.begin())],
               pts[static_cast<std::size_t>(hi - coords.begin())]};
    } else if (k == d) {
        out = Polytope::from_points(pts, d).vertices();
    } else {
        Polytope local = Polytope::from_points(coords, k);
        for (const auto &v : local.vertices())
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (coords[i] == v)
                    out.push_back(pts[i]);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Polytope Polytope::from_both(std::vector<Halfspace> facets, std::vector<QVec> vertices,
                             std::size_t d) {
    Polytope p;
    p.dim_ = d;
    p.facets_ = std::move(facets);
    p.vertices_ = std::move(vertices);
    std::sort(p.vertices_.begin(), p.vertices_.end(), lex_less);
    p.build_incidence();
    return p;
}

Polytope Polytope::from_halfspaces(const std::vector<Halfspace> &halfspaces, std::size_t d) {
    std::vector<QVec> verts = dd_hull(halfspaces, d);
    if (affine_rank(verts) != d)
        throw InvalidInput("halfspaces describe a lower-dimensional polytope");
    std::vector<Halfspace> facets;
    for (const auto &h0 : halfspaces) {
        Halfspace h = normalized(h0.normal, h0.offset);
        if (std::find(facets.begin(), facets.end(), h) != facets.end())
            continue;
        std::vector<QVec> tight;
        for (const auto &v : verts)
            if (dot(h.normal, v) == h.offset)
                tight.push_back(v);
        if (tight.size() >= d && affine_rank(tight) == d - 1)
            facets.push_back(std::move(h));
    }
    return from_both(std::move(facets), std::move(verts), d);
}

Polytope Polytope::from_points(const std::vector<QVec> &points, std::size_t d) {
    std::vector<QVec> pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Halfspace> facets = dd_facets(pts, d);
    std::vector<QVec> verts;
    for (const auto &p : pts) {
        std::vector<QVec> normals;
        for (const auto &h : facets)
            if (dot(h.normal, p) == h.offset)
                normals.push_back(h.normal);
        if (normals.size() >= d && rank(normals, d) == d)
            verts.push_back(p);
    }
    return from_both(std::move(facets), std::move(verts), d);
}

void Polytope::build_incidence() {
    facet_vertices_.assign(facets_.size(), Bits(vertices_.size()));
    vertex_facets_.assign(vertices_.size(), Bits(facets_.size()));
    for (std::size_t f = 0; f < facets_.size(); ++f)
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (dot(facets_[f].normal, vertices_[v]) == facets_[f].offset) {
                facet_vertices_[f].set(v);
                vertex_facets_[v].set(f);
            }
}

bool Polytope::contains(const QVec &x) const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Halfspace &h) { return dot(h.normal, x) <= h.offset; });
}

bool Polytope::on_facet(std::size_t f, const QVec &x) const {
    return contains(x) && dot(facets_[f].normal, x) == facets_[f].offset;
}

QVec Polytope::vertex_centroid() const { return affine_combination_sum(vertices_); }

std::size_t Polytope::find_facet(const Halfspace &h) const {
    for (std::size_t i = 0; i < facets_.size(); ++i)
        if (facets_[i] == h)
            return i;
    return npos;
}

Polytope Polytope::translated(const QVec &t) const {
    std::vector<Halfspace> fs;
    for (const auto &h : facets_)
        fs.push_back(Halfspace{h.normal, h.offset + dot(h.normal, t)});
    std::vector<QVec> vs;
    for (const auto &v : vertices_)
        vs.push_back(v + t);
    return from_both(std::move(fs), std::move(vs), dim_);
}

FaceLattice::FaceLattice(const Polytope &p) {
    const std::size_t d = p.dim();
    const std::size_t nv = p.vertices().size();
    const std::size_t nf = p.facets().size();
    levels_.assign(d + 1, {});
    Face whole{Bits(nv), Bits(nf), d, {}};
    whole.vertices.set();
    levels_[d].push_back(whole);

    auto facets_containing = [&](const Bits &verts) {
        Bits fs(nf);
        fs.set();
        for (auto v = verts.find_first(); v != Bits::npos; v = verts.find_next(v))
            fs &= p.vertex_facets(v);
        return fs;
    };

    for (std::size_t k = d; k >= 1; --k) {
        std::map<Bits, std::size_t> index;
        std::vector<Face> &below = levels_[k - 1];
        for (auto &face : levels_[k]) {
            std::vector<Bits> cands;
            for (std::size_t f = 0; f < nf; ++f) {
                if (face.facets.test(f))
                    continue;
                Bits c = face.vertices & p.facet_vertices(f);
                if (c.none() || c == face.vertices)
                    continue;
                cands.push_back(std::move(c));
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (std::size_t i = 0; i < cands.size(); ++i) {
                bool maximal = true;
                for (std::size_t j = 0; j < cands.size() && maximal; ++j)
                    if (i != j && cands[i].is_proper_subset_of(cands[j]))
                        maximal = false;
                if (!maximal)
                    continue;
                auto [it, inserted] = index.emplace(cands[i], below.size());
                if (inserted)
                    below.push_back(Face{cands[i], facets_containing(cands[i]), k - 1, {}});
                face.children.push_back(it->second);
            }
        }
    }
    for (const auto &v : levels_[0])
        if (v.vertices.count() != 1)
            throw Error("face lattice: a 0-face has more than one vertex");
}

std::vector<QVec> face_points(const Polytope &p, const Face &f) {
    std::vector<QVec> pts;
    for (auto v = f.vertices.find_first(); v != Bits::npos; v = f.vertices.find_next(v))
        pts.push_back(p.vertices()[v]);
    return pts;
}

QVec face_centroid(const Polytope &p, const Face &f) {
    return affine_combination_sum(face_points(p, f));
}

namespace {

void accumulate_simplices(const Polytope &p, const FaceLattice &lat, std::size_t level,
                          std::size_t index, std::vector<std::size_t> &chain, Rat &total) {
    const Face &face = lat.faces(level)[index];
    std::size_t apex = face.vertices.find_first();
    chain.push_back(apex);
    if (level == 0) {
        const std::size_t d = p.dim();
        QMat m(d, d);
        const QVec &base = p.vertices()[chain.back()];
        for (std::size_t i = 0; i < d; ++i) {
            const QVec &v = p.vertices()[chain[i]];
            for (std::size_t j = 0; j < d; ++j)
                m(i, j) = v[j] - base[j];
        }
        total += abs(determinant(m));
    } else {
        for (auto c : face.children)
            if (!lat.faces(level - 1)[c].vertices.test(apex))
                accumulate_simplices(p, lat, level - 1, c, chain, total);
    }
    chain.pop_back();
}

} // namespace

Rat volume(const Polytope &p, const FaceLattice &lattice) {
    Rat total = 0;
    std::vector<std::size_t> chain;
    accumulate_simplices(p, lattice, p.dim(), 0, chain, total);
    Rat fact = 1;
    for (std::size_t i = 2; i <= p.dim(); ++i)
        fact *= static_cast<unsigned long>(i);
    return total / fact;
}

Rat volume(const Polytope &p) { return volume(p, FaceLattice(p)); }

} // namespace parallelo
