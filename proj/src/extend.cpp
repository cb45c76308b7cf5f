#include "parallelo/extend.hpp"

#include "parallelo/intlattice.hpp"
#include "parallelo/structure.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace parallelo {

std::string to_string(FacetOrigin o) {
    switch (o) {
    case FacetOrigin::translated_plus:
        return "translated_plus";
    case FacetOrigin::translated_minus:
        return "translated_minus";
    case FacetOrigin::parallel:
        return "parallel";
    case FacetOrigin::semi_shaded:
        return "semi_shaded";
    }
    return "unknown";
}

namespace {

void validate_segment(const Cell &cell, const SegmentSpec &seg) {
    if (seg.direction.size() != cell.dim())
        throw InvalidInput("segment direction of wrong dimension");
    if (is_zero(seg.direction) || !is_integral(seg.direction))
        throw InvalidInput("segment direction must be a nonzero integer vector");
    if (seg.half_length <= 0)
        throw InvalidInput("segment half length must be positive");
}

QVec facet_vector(const Polytope &p, std::size_t f) {
    QVec c = zeros(p.dim());
    const Bits &fv = p.facet_vertices(f);
    for (auto v = fv.find_first(); v != Bits::npos; v = fv.find_next(v))
        c = c + p.vertices()[v];
    Rat w(2, fv.count());
    w.canonicalize();
    return w * c;
}

// Facets of conv(pts) among the candidate outward normals.
std::vector<Halfspace> supported_facets(const std::vector<QVec> &normals, const std::vector<QVec> &pts,
                                        std::size_t d) {
    std::vector<Halfspace> out;
    for (const auto &n : normals) {
        Rat h = dot(n, pts[0]);
        for (const auto &p : pts)
            h = std::max(h, Rat(dot(n, p)));
        std::vector<QVec> tight;
        for (const auto &p : pts)
            if (dot(n, p) == h)
                tight.push_back(p);
        if (tight.size() >= d && affine_rank(tight) + 1 == d)
            out.push_back(normalized(n, h));
    }
    return out;
}

std::vector<QVec> supported_vertices(const std::vector<Halfspace> &facets, const std::vector<QVec> &pts,
                                     std::size_t d) {
    std::vector<QVec> out;
    for (const auto &p : pts) {
        std::vector<QVec> normals;
        for (const auto &h : facets)
            if (dot(h.normal, p) == h.offset)
                normals.push_back(h.normal);
        if (normals.size() >= d && rank(normals, d) == d)
            out.push_back(p);
    }
    return out;
}

std::size_t upper_index(std::size_t i, std::size_t j, std::size_t d) {
    if (i > j)
        std::swap(i, j);
    return i * d - i * (i - 1) / 2 + (j - i);
}

std::vector<QVec> sorted_points(std::vector<QVec> v) {
    std::sort(v.begin(), v.end(), lex_less);
    return v;
}

} // namespace

ExtendedCell minkowski_extend(const Cell &cell, const SegmentSpec &seg) {
    validate_segment(cell, seg);
    const std::size_t d = cell.dim();
    const QVec &u = seg.direction;
    ExtendedCell ext;
    ext.segment = seg;
    ext.sets = ab_sets(cell, u);
    const QVec x = seg.half_vector();
    const QVec e = Rat(2) * x;

    std::vector<QVec> pts;
    for (const auto &v : cell.poly.vertices()) {
        pts.push_back(v + x);
        pts.push_back(v - x);
    }
    pts = sorted_points(pts);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Facets of P + I are translated or widened facets of P, and (d-2)-faces
    // of P widened by I.
    std::vector<QVec> normals;
    for (const auto &h : cell.poly.facets())
        normals.push_back(h.normal);
    if (d >= 2) {
        for (const auto &ridge : faces(cell, d - 2)) {
            std::vector<QVec> gens = direction_space(face_points(cell.poly, ridge), d).basis();
            gens.push_back(u);
            Subspace s = Subspace::span(gens, d);
            if (s.rank() + 1 != d)
                continue;
            QVec n = primitive(s.annihilator()[0]);
            normals.push_back(n);
            normals.push_back(-n);
        }
    }
    normals = sorted_points(normals);
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    std::vector<Halfspace> facets = supported_facets(normals, pts, d);
    ext.poly = Polytope::from_both(facets, supported_vertices(facets, pts, d), d);

    std::map<QVec, std::size_t, LexLess> p_facet;
    for (std::size_t f = 0; f < cell.facet_count(); ++f)
        p_facet[cell.poly.facets()[f].normal] = f;
    std::vector<QVec> shaded, parallel;
    std::size_t matched = 0;
    for (std::size_t k = 0; k < ext.poly.facets().size(); ++k) {
        QVec fv = facet_vector(ext.poly, k);
        auto it = p_facet.find(ext.poly.facets()[k].normal);
        FacetProvenance prov;
        prov.facet_vector = fv;
        if (it != p_facet.end()) {
            ++matched;
            const QVec &s = cell.facet_vectors[it->second];
            int sign = sgn(inner(cell.form, s, u));
            prov.source = s;
            QVec expected = s;
            if (sign > 0) {
                prov.origin = FacetOrigin::translated_plus;
                expected = s + e;
            } else if (sign < 0) {
                prov.origin = FacetOrigin::translated_minus;
                expected = s - e;
            } else {
                prov.origin = FacetOrigin::parallel;
                parallel.push_back(s);
            }
            if (fv != expected)
                throw Violation("facet of P+I from " + to_string(s) + " has vector " + to_string(fv));
        } else {
            prov.origin = FacetOrigin::semi_shaded;
            prov.source = fv;
            if (!is_integral(fv))
                throw Violation("semi-shaded facet vector " + to_string(fv) + " is not a lattice vector");
            shaded.push_back(fv);
        }
        ext.provenance.push_back(std::move(prov));
    }
    if (matched != cell.facet_count())
        throw Violation("a facet of P has no counterpart in P+I");
    if (sorted_points(shaded) != ext.sets.A)
        throw Violation("semi-shaded facets of P+I disagree with the standard vectors of A");
    if (sorted_points(parallel) != sorted_points(ext.sets.B))
        throw Violation("widened facets of P+I disagree with B");

    std::vector<QVec> ab = ext.sets.A;
    ab.insert(ab.end(), ext.sets.B.begin(), ext.sets.B.end());
    std::vector<QVec> basis = lattice_basis(ab, d);
    QVec t = complement_basis(ab, d).at(0);
    auto anticap = std::find_if(cell.facet_vectors.begin(), cell.facet_vectors.end(),
                                [&](const QVec &s) { return sgn(inner(cell.form, s, u)) > 0; });
    if (ext.sets.span_ab.contains(*anticap + t))
        t = -t;
    if (!in_lattice(basis, *anticap - t))
        throw Violation("anticap facet vectors are not congruent modulo Z(A u B)");
    ext.layer_shift = t;
    basis.push_back(t + e);
    ext.lattice_basis = basis;
    for (const auto &p : ext.provenance)
        if (!in_lattice(ext.lattice_basis, p.facet_vector))
            throw Violation("facet vector " + to_string(p.facet_vector) + " outside the extended lattice");
    return ext;
}

bool is_parallelohedron(const Polytope &poly, const std::vector<QVec> &lattice_basis) {
    const std::size_t d = poly.dim();
    if (lattice_basis.size() != d || rank(lattice_basis, d) != d)
        return false;
    FaceLattice fl(poly);
    if (!check_minkowski_venkov(poly, fl).pass())
        return false;
    for (std::size_t f = 0; f < poly.facets().size(); ++f)
        if (!in_lattice(lattice_basis, facet_vector(poly, f)))
            return false;
    return volume(poly, fl) == covolume(lattice_basis);
}

MetricRecovery recover_voronoi_metric(const Polytope &poly, const std::vector<QVec> &lattice_basis,
                                      int max_depth) {
    const std::size_t d = poly.dim();
    if (lattice_basis.size() != d || rank(lattice_basis, d) != d)
        throw InvalidInput("lattice basis must have full rank");
    if (!is_zero(poly.vertex_centroid()))
        throw InvalidInput("polytope must be centred at the origin");

    // One unknown multiplier per pair of opposite facets.
    const std::size_t nf = poly.facets().size();
    std::map<QVec, std::size_t, LexLess> class_index;
    std::vector<std::size_t> class_of(nf);
    std::vector<QVec> svec, nvec;
    for (std::size_t f = 0; f < nf; ++f) {
        QVec s = facet_vector(poly, f);
        if (!in_lattice(lattice_basis, s))
            throw InvalidInput("facet vector " + to_string(s) + " is outside the lattice");
        QVec key = canonical_direction(s);
        auto [it, fresh] = class_index.emplace(key, svec.size());
        if (fresh) {
            QVec sign_fixed = s;
            QVec n = poly.facets()[f].normal;
            if (primitive(s) != key) {
                sign_fixed = -s;
                n = -n;
            }
            svec.push_back(sign_fixed);
            nvec.push_back(n);
        }
        class_of[f] = it->second;
    }
    const std::size_t m = svec.size(), k = d * (d + 1) / 2, cols = k + m;
    std::vector<QVec> rows;
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = 0; i < d; ++i) {
            QVec row = zeros(cols);
            for (std::size_t j = 0; j < d; ++j)
                row[upper_index(i, j, d)] += svec[c][j];
            row[k + c] = -nvec[c][i];
            rows.push_back(std::move(row));
        }
    std::vector<QVec> null = nullspace(rows, cols);
    MetricRecovery out;
    out.nullspace_rank = null.size();
    const std::size_t r = null.size();
    if (r == 0)
        return out;

    auto metric_of = [&](const QVec &z) {
        QMat x(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                x(i, j) = z[upper_index(i, j, d)];
        return x;
    };
    auto try_candidate = [&](const QVec &y) {
        ++out.candidates_tried;
        QVec z = zeros(cols);
        for (std::size_t i = 0; i < r; ++i)
            if (sgn(y[i]) != 0)
                z = z + y[i] * null[i];
        for (std::size_t c = 0; c < m; ++c)
            if (sgn(z[k + c]) <= 0)
                return false;
        QMat x = metric_of(z);
        if (!is_positive_definite(x))
            return false;
        QVec flat(z.begin(), z.begin() + k);
        QVec prim = primitive(flat);
        std::size_t i0 = 0;
        while (sgn(flat[i0]) == 0)
            ++i0;
        Rat scale = prim[i0] / flat[i0];
        out.metric = metric_of(scale * z);
        for (std::size_t f = 0; f < nf; ++f)
            out.multipliers.push_back(scale * z[k + class_of[f]]);
        out.found = true;
        return true;
    };

    std::vector<QVec> rays;
    if (r == 1) {
        rays = {QVec{Rat(1)}, QVec{Rat(-1)}};
        for (const auto &y : rays)
            if (try_candidate(y))
                break;
    } else {
        std::vector<QVec> lam(m, QVec(r));
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t i = 0; i < r; ++i)
                lam[c][i] = null[i][k + c];
        if (rank(lam, r) != r)
            throw Violation("facet multipliers do not determine the metric");
        rays = cone_extreme_rays(lam, r);
        if (!rays.empty()) {
            QVec sum = zeros(r);
            for (const auto &y : rays)
                sum = sum + y;
            if (!try_candidate(sum)) {
                // Deterministic grid of positive ray weights, refined by depth.
                const std::size_t cap_per_depth = 4096;
                for (int depth = 1; depth <= max_depth && !out.found; ++depth) {
                    const long base = depth + 1;
                    double total = 1;
                    for (std::size_t i = 0; i < rays.size(); ++i)
                        total *= static_cast<double>(base);
                    std::mt19937_64 rng(static_cast<std::uint64_t>(depth));
                    std::uniform_int_distribution<long> pick(1, base);
                    std::vector<long> w(rays.size(), 1);
                    std::size_t steps = total <= cap_per_depth ? static_cast<std::size_t>(total)
                                                               : cap_per_depth;
                    for (std::size_t step = 0; step < steps && !out.found; ++step) {
                        if (total <= cap_per_depth) {
                            std::size_t code = step;
                            for (auto &wi : w) {
                                wi = 1 + static_cast<long>(code % base);
                                code /= base;
                            }
                        } else {
                            for (auto &wi : w)
                                wi = pick(rng);
                        }
                        QVec y = zeros(r);
                        for (std::size_t i = 0; i < rays.size(); ++i)
                            y = y + Rat(w[i]) * rays[i];
                        try_candidate(y);
                    }
                }
            }
        }
    }
    if (!out.found)
        return out;

    QMat b = QMat::from_rows(lattice_basis, d);
    Cell check = voronoi_cell(GramMatrix(b * out.metric * b.transpose()));
    std::vector<QVec> verts;
    for (const auto &y : check.poly.vertices())
        verts.push_back(b.transpose() * y);
    if (sorted_points(verts) != sorted_points(poly.vertices()))
        throw Violation("recovered metric yields a different Voronoi cell");
    return out;
}

bool standard_vectors_orthogonal(const Cell &cell, const QVec &u) {
    if (decompose(cell).reducible())
        throw InvalidInput("orthogonality test requires an irreducible cell");
    ABCSets sets = ab_sets(cell, u);
    return std::all_of(sets.A.begin(), sets.A.end(),
                       [&](const QVec &s) { return sgn(inner(cell.form, s, u)) == 0; });
}

std::vector<std::optional<SegmentSpec>> split_segment_over_factors(const Cell &cell, const SegmentSpec &seg) {
    validate_segment(cell, seg);
    const std::size_t d = cell.dim();
    if (!is_free_segment(cell, seg.direction))
        throw InvalidInput("segment direction " + to_string(seg.direction) + " is not free");
    Decomposition dec = decompose(cell);
    if (!dec.reducible())
        throw InvalidInput("splitting requires a reducible cell");
    std::vector<std::optional<SegmentSpec>> out;
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        Subspace others(d);
        for (std::size_t j = 0; j < dec.factors.size(); ++j)
            if (j != i)
                others = others + dec.factors[j].space;
        const Factor &fac = dec.factors[i];
        QVec pu = project_along(others, fac.space, seg.direction);
        if (is_zero(pu)) {
            out.emplace_back(std::nullopt);
            continue;
        }
        QVec c = *coordinates(fac.basis, pu);
        QVec ui = primitive(c);
        std::size_t j0 = 0;
        while (sgn(ui[j0]) == 0)
            ++j0;
        SegmentSpec si{ui, seg.half_length * c[j0] / ui[j0]};
        if (!is_free_segment(fac.cell, ui))
            throw Violation("projected segment " + to_string(ui) + " is not free for its factor");
        out.emplace_back(si);
    }
    return out;
}

ProjectedCell project_cell_along(const Cell &cell, const QVec &u) {
    const std::size_t d = cell.dim();
    if (d < 2)
        throw InvalidInput("projection needs dimension at least 2");
    ABCSets sets = ab_sets(cell, u);
    std::vector<QVec> ab = sets.A;
    ab.insert(ab.end(), sets.B.begin(), sets.B.end());
    ProjectedCell out;
    out.basis = lattice_basis(ab, d);
    Subspace line = Subspace::span({u}, d);
    std::vector<QVec> pts;
    for (const auto &v : cell.poly.vertices())
        pts.push_back(*coordinates(out.basis, project_along(line, sets.span_ab, v)));
    out.poly = Polytope::from_points(pts, d - 1);
    std::vector<QVec> unit_basis;
    for (std::size_t i = 0; i + 1 < d; ++i)
        unit_basis.push_back(unit(d - 1, i));
    if (!is_parallelohedron(out.poly, unit_basis))
        throw Violation("projection along a free direction is not a parallelohedron");
    return out;
}

bool check_projection_voronoi(const Cell &cell, const QVec &u) {
    ExtendedCell ext = minkowski_extend(cell, SegmentSpec{u, Rat(1)});
    if (!recover_voronoi_metric(ext.poly, ext.lattice_basis).found)
        return true;
    ProjectedCell q = project_cell_along(cell, u);
    std::vector<QVec> unit_basis;
    for (std::size_t i = 0; i < q.poly.dim(); ++i)
        unit_basis.push_back(unit(q.poly.dim(), i));
    return recover_voronoi_metric(q.poly, unit_basis).found;
}

} // namespace parallelo
