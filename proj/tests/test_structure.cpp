#include "common.hpp"

#include "parallelo/cvp.hpp"
#include "parallelo/freespace.hpp"
#include "parallelo/structure.hpp"

#include <doctest.h>

#include <algorithm>

using namespace parallelo;
using namespace testforms;

namespace {

/// Exhaustive search over all 2^m bucket assignments.
bool cross_exists_bruteforce(const Cell &cell) {
    const std::size_t d = cell.dim();
    const std::size_t m = cell.classes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<QVec> b1, b2;
        for (std::size_t i = 0; i < m; ++i)
            ((mask >> i) & 1 ? b1 : b2).push_back(cell.classes[i]);
        if (rank(b1, d) + 1 <= d && rank(b2, d) + 1 <= d)
            return true;
    }
    return false;
}

/// p lies in the cell when it is no farther from 0 than from any box point.
bool in_cell_bruteforce(const GramMatrix &g, const QVec &p, long k) {
    for (const auto &t : box_points(g.dim(), k))
        if (norm_sq(g, p) > norm_sq(g, p - t))
            return false;
    return true;
}

/// Facet class s is bad when some lattice shift of v + s/2 lies on the facet of s.
bool bad_bruteforce(const GramMatrix &g, const QVec &v, const QVec &s, long k) {
    QVec q = v + Rat(1, 2) * s;
    for (const auto &t : box_points(g.dim(), k)) {
        QVec p = q - t;
        if (inner(g, s, p) == norm_sq(g, s) / 2 && in_cell_bruteforce(g, p, k))
            return true;
    }
    return false;
}

} // namespace

TEST_CASE("dilatation formula") {
    CHECK(dilate(cubic(2), from_ints({1, 0})).matrix() == mat({{2, 0}, {0, 1}}));
    CHECK(dilate(a2(), from_ints({1, 0})).matrix() == mat({{6, 3}, {3, 3}}));
    CHECK_THROWS_AS(dilate(a2(), from_ints({0, 0})), InvalidInput);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coord(-3, 3);
    for (std::size_t d = 2; d <= 4; ++d)
        for (int i = 0; i < 10; ++i) {
            GramMatrix g = random_form(rng, d);
            QVec n(d), x(d);
            for (auto &c : n)
                c = coord(rng);
            for (auto &c : x)
                c = coord(rng);
            if (is_zero(n))
                continue;
            GramMatrix h = dilate(g, n);
            CHECK(is_positive_definite(h.matrix()));
            Rat gx = inner(g, n, x);
            CHECK(norm_sq(h, x) == norm_sq(g, x) + gx * gx);
            CHECK((sgn(inner(g, n, x)) == 0) == (sgn(inner(h, n, x)) == 0));
        }
}

TEST_CASE("facet vectors not orthogonal to a normal") {
    auto z2 = fn_set(cubic(2), from_ints({1, 0}));
    CHECK(z2 == std::vector<QVec>{from_ints({-1, 0}), from_ints({1, 0})});
    CHECK(fn_set(a2(), from_ints({1, -1})).size() == 6);
    auto f = fn_set(fcc(), from_ints({-1, 1, 1}));
    CHECK(f.size() == 8);
    GramMatrix g = fcc();
    for (const auto &s : f)
        CHECK(inner(g, from_ints({-1, 1, 1}), s) != 0);
}

TEST_CASE("dilatation shrinks the span of the non-orthogonal facet vectors") {
    CHECK(check_dilatation_span(cubic(3), from_ints({0, 0, 1})));
    CHECK(check_dilatation_span(a2z(), from_ints({1, -2, 0})));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coord(-2, 2);
    int tested = 0;
    for (std::size_t d = 2; d <= 4; ++d)
        for (int i = 0; i < 12; ++i) {
            GramMatrix g = random_form(rng, d);
            QVec n(d);
            for (auto &c : n)
                c = coord(rng);
            if (is_zero(n))
                continue;
            ++tested;
            CHECK(check_dilatation_span(g, n));
        }
    CHECK(tested > 25);
}

TEST_CASE("crosses and their preservation") {
    Cell z2 = voronoi_cell(cubic(2));
    Subspace x = Subspace::span({from_ints({1, 0})}, 2), y = Subspace::span({from_ints({0, 1})}, 2);
    CHECK(is_cross(z2, x, y));
    CHECK_FALSE(is_cross(z2, x, x));
    CHECK(make_cross(z2, x, y).assignment == std::vector<int>{2, 1});
    CHECK(check_dilatation_keeps_cross(cubic(2), x, y));

    Subspace p1 = Subspace::span({unit(3, 0), unit(3, 1)}, 3), p2 = Subspace::span({unit(3, 1), unit(3, 2)}, 3);
    CHECK(form_normal(cubic(3), p1) == from_ints({0, 0, 1}));
    CHECK(check_dilatation_keeps_cross(cubic(3), p1, p2));
    CHECK_THROWS_AS(check_dilatation_keeps_cross(fcc(), p1, p2), InvalidInput);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 6; ++i) {
        GramMatrix g = direct_sum(random_form(rng, 2), random_form(rng, 1));
        Cell c = voronoi_cell(g);
        auto cr = find_cross(c);
        REQUIRE(cr);
        CHECK(check_dilatation_keeps_cross(g, cr->pi1, cr->pi2));
    }
}

TEST_CASE("twofold dilatation") {
    Subspace p1 = Subspace::span({unit(3, 0), unit(3, 1)}, 3), p2 = Subspace::span({unit(3, 1), unit(3, 2)}, 3);
    TwofoldResult t = twofold_dilatation(cubic(3), p1, p2);
    CHECK(t.rho_sq == Rat(1, 4));
    REQUIRE(t.n1.exact);
    REQUIRE(t.n2.exact);
    CHECK(*t.n1.exact == QVec{0, 0, Rat(1, 2)});
    CHECK(*t.n2.exact == QVec{Rat(1, 2), 0, 0});
    QMat expect = QMat::identity(3);
    expect(0, 0) = Rat(5, 4);
    expect(2, 2) = Rat(5, 4);
    CHECK(t.g2.matrix() == expect);
    CHECK(t.free_plane == Subspace::span({unit(3, 0), unit(3, 2)}, 3));

    Cell az = voronoi_cell(a2z());
    auto cr = find_cross(az);
    REQUIRE(cr);
    TwofoldResult ta = twofold_dilatation(a2z(), cr->pi1, cr->pi2);
    Cell dilated = voronoi_cell(ta.g2);
    for (const auto &b : six_belts(dilated))
        CHECK(std::any_of(b.facets.begin(), b.facets.end(), [&](std::size_t f) {
            const QVec &s = dilated.facet_vectors[f];
            return ta.free_plane.basis().size() == 2 &&
                   std::all_of(ta.free_plane.basis().begin(), ta.free_plane.basis().end(),
                               [&](const QVec &n) { return sgn(inner(ta.g2, s, n)) == 0; });
        }));

    CHECK_THROWS_AS(twofold_dilatation(fcc(), p1, p2), InvalidInput);
    CHECK_THROWS_AS(
        twofold_dilatation(cubic(2), Subspace::span({unit(2, 0)}, 2), Subspace::span({unit(2, 1)}, 2)),
        InvalidInput);
}

TEST_CASE("six-belt components") {
    CHECK(six_belt_components(voronoi_cell(cubic(3))).size() == 3);
    CHECK(six_belt_components(voronoi_cell(fcc())).size() == 1);
    CHECK(six_belt_components(voronoi_cell(square_hexagon())).size() == 3);
}

TEST_CASE("direct sum decomposition") {
    Decomposition z = decompose(voronoi_cell(cubic(3)));
    CHECK(z.factors.size() == 3);
    for (const auto &f : z.factors) {
        CHECK(f.space.rank() == 1);
        CHECK(f.irreducible);
    }
    Decomposition f = decompose(voronoi_cell(fcc()));
    CHECK_FALSE(f.reducible());
    CHECK(f.factors[0].irreducible);

    Decomposition sh = decompose(voronoi_cell(square_hexagon()));
    REQUIRE(sh.factors.size() == 3);
    std::vector<std::size_t> ranks, verts;
    for (const auto &fac : sh.factors) {
        ranks.push_back(fac.space.rank());
        verts.push_back(fac.cell.poly.vertices().size());
    }
    std::sort(ranks.begin(), ranks.end());
    std::sort(verts.begin(), verts.end());
    CHECK(ranks == std::vector<std::size_t>{1, 1, 2});
    CHECK(verts == std::vector<std::size_t>{2, 2, 6});

    // Round trip from random factors.
    std::mt19937_64 rng(99);
    for (int i = 0; i < 8; ++i) {
        GramMatrix a = random_form(rng, 2), b = random_form(rng, 2);
        Cell ca = voronoi_cell(a), cb = voronoi_cell(b);
        std::size_t expect = decompose(ca).factors.size() + decompose(cb).factors.size();
        Decomposition d = decompose(voronoi_cell(direct_sum(a, b)));
        CHECK(d.factors.size() == expect);
        std::size_t total = 0;
        for (const auto &fac : d.factors)
            total += fac.space.rank();
        CHECK(total == 4);
    }
}

TEST_CASE("cross search") {
    Cell z2 = voronoi_cell(cubic(2));
    auto c = find_cross(z2);
    REQUIRE(c);
    CHECK(is_cross(z2, c->pi1, c->pi2));

    Cell f = voronoi_cell(fcc());
    CHECK_FALSE(find_cross(f));
    CHECK_FALSE(cross_exists_bruteforce(f));

    Cell sh = voronoi_cell(square_hexagon());
    auto cs = find_cross(sh);
    REQUIRE(cs);
    CHECK(check_cross_reducible(sh));
    CHECK(check_factors_in_cross(sh, *cs));

    for (std::size_t d = 2; d <= 4; ++d) {
        Cell z = voronoi_cell(cubic(d));
        auto cz = find_cross(z);
        REQUIRE(cz);
        CHECK(check_cross_reducible(z));
        CHECK(check_factors_in_cross(z, *cz));
    }

    std::mt19937_64 rng(3);
    for (std::size_t d = 2; d <= 3; ++d)
        for (int i = 0; i < 10; ++i) {
            Cell r = voronoi_cell(random_form(rng, d));
            auto cr = find_cross(r);
            CHECK(cr.has_value() == cross_exists_bruteforce(r));
            CHECK(check_cross_reducible(r));
            if (cr) {
                CHECK(decompose(r).reducible());
                CHECK(check_factors_in_cross(r, *cr));
            }
        }
}

TEST_CASE("good and bad facets") {
    Cell z2 = voronoi_cell(cubic(2));
    GoodBadReport r = good_bad_facets(z2, QVec{0, Rat(1, 2)});
    REQUIRE(r.bad.size() == 1);
    CHECK(z2.classes[r.bad[0]] == from_ints({1, 0}));
    CHECK(sgn(inner(z2.form, z2.classes[r.bad[0]], r.v_prime)) == 0);
    CHECK(norm_sq(z2.form, r.v_prime) == Rat(1, 4));

    GoodBadReport g = good_bad_facets(cubic(2), QVec{Rat(1, 2), Rat(1, 4)});
    CHECK(g.bad.empty());
    CHECK(g.good.size() == 2);

    GoodBadReport i = good_bad_facets(z2, from_ints({3, -1}));
    CHECK(i.good.empty());
    CHECK(is_zero(i.v_prime));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-4, 4);
    for (std::size_t d = 2; d <= 3; ++d)
        for (int k = 0; k < 6; ++k) {
            GramMatrix gm = random_form(rng, d, 1);
            Cell c = voronoi_cell(gm);
            QVec v(d);
            for (auto &x : v) {
                x = Rat(num(rng), 4);
                x.canonicalize();
            }
            GoodBadReport rep = good_bad_facets(c, v);
            CHECK(rep.good.size() + rep.bad.size() == c.classes.size());
            for (auto b : rep.bad)
                CHECK(bad_bruteforce(gm, v, c.classes[b], 3));
            for (auto gd : rep.good)
                CHECK_FALSE(bad_bruteforce(gm, v, c.classes[gd], 3));
            CHECK(in_cell_bruteforce(gm, rep.v_prime, 3));
            CHECK(is_integral(v - rep.v_prime));
        }
}

TEST_CASE("projection along a perfect plane") {
    Cell aa = voronoi_cell(a2a2());
    PlaneAnalysis a = analyze_perfect_plane(aa, Subspace::span({from_ints({1, -2, 0, 0}), from_ints({0, 0, 1, -2})}, 4));
    CHECK_FALSE(a.prism);
    CHECK(a.r.vertices().size() == 4);
    REQUIRE(a.cross);
    CHECK(a.cross->pi1 != a.cross->pi2);

    // Every perfect plane of A2+A2 has two perfect lines and a cross for the projection.
    std::size_t planes = 0;
    for (const auto &ps : perfect_free_spaces(aa))
        if (ps.space.rank() == 2) {
            ++planes;
            PlaneAnalysis pa = analyze_perfect_plane(aa, ps.space);
            CHECK(pa.cross.has_value());
        }
    CHECK(planes == 9);

    Cell sh = voronoi_cell(square_hexagon());
    PlaneAnalysis s = analyze_perfect_plane(sh, Subspace::span({from_ints({0, 1, 0, 0}), from_ints({0, 0, 1, -2})}, 4));
    CHECK(s.prism);
    CHECK(s.prism_consistent);

    Cell z4 = voronoi_cell(cubic(4));
    PlaneAnalysis z = analyze_perfect_plane(z4, Subspace::span({unit(4, 0), unit(4, 1)}, 4));
    CHECK(z.prism);
    CHECK(z.prism_consistent);

    CHECK_THROWS_AS(analyze_perfect_plane(voronoi_cell(fcc()), Subspace::span({unit(3, 0), unit(3, 1)}, 3)),
                    InvalidInput);
}
