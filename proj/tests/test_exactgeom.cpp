#include "parallelo/intlattice.hpp"
#include "parallelo/polytope.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace parallelo;

namespace {

QMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<QVec> r;
    for (auto row : rows)
        r.push_back(from_ints(row));
    return QMat::from_rows(r, r[0].size());
}

QVec q(std::initializer_list<Rat> xs) { return QVec(xs); }

std::vector<Halfspace> box(std::size_t d, const Rat &h) {
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < d; ++i) {
        hs.push_back({unit(d, i), h});
        hs.push_back({-unit(d, i), h});
    }
    return hs;
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(to_string(parse_rat("-6/4")) == "-3/2");
    CHECK(to_string(parse_rat("4/2")) == "2");
    CHECK_THROWS_AS(parse_rat("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rat("abc"), InvalidInput);
    CHECK(canonical_direction(from_ints({0, -2, 4})) == from_ints({0, 1, -2}));
    CHECK(primitive(q({Rat(1, 2), Rat(-1, 3)})) == from_ints({3, -2}));
}

TEST_CASE("positive definiteness") {
    CHECK(is_positive_definite(QMat::identity(2)));
    CHECK(is_positive_definite(mat({{2, 1}, {1, 2}})));
    CHECK_FALSE(is_positive_definite(mat({{1, 2}, {2, 1}})));
    CHECK_FALSE(is_positive_definite(mat({{2, 1}, {0, 2}})));
    CHECK_THROWS_AS(GramMatrix(mat({{1, 2}, {2, 1}})), InvalidInput);
}

TEST_CASE("inner products") {
    GramMatrix a2(mat({{2, 1}, {1, 2}}));
    CHECK(inner(a2, from_ints({1, 0}), from_ints({0, 1})) == 1);
    CHECK(inner(GramMatrix::identity(3), from_ints({1, 2, 3}), from_ints({1, 2, 3})) == 14);
    CHECK(inner(a2, from_ints({1, -1}), from_ints({1, -1})) == 2);
    CHECK_THROWS_AS(inner(a2, from_ints({1, 0, 0}), from_ints({1, 0})), InvalidInput);
}

TEST_CASE("orthogonal complements") {
    GramMatrix a2(mat({{2, 1}, {1, 2}}));
    CHECK(orthogonal_complement(GramMatrix::identity(2), Subspace::span({from_ints({1, 0})}, 2)) ==
          Subspace::span({from_ints({0, 1})}, 2));
    CHECK(orthogonal_complement(a2, Subspace::span({from_ints({1, 0})}, 2)) ==
          Subspace::span({from_ints({1, -2})}, 2));
    CHECK(orthogonal_complement(a2, Subspace::full(2)).rank() == 0);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        QMat a(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                a(i, j) = dist(rng);
        QMat g = a.transpose() * a + QMat::identity(4);
        GramMatrix gm(g);
        std::vector<QVec> gens;
        for (int k = 0; k < trial % 4; ++k)
            gens.push_back(from_ints({dist(rng), dist(rng), dist(rng), dist(rng)}));
        Subspace s = Subspace::span(gens, 4);
        Subspace c = orthogonal_complement(gm, s);
        CHECK(c.rank() == 4 - s.rank());
        CHECK(orthogonal_complement(gm, c) == s);
        QVec x = from_ints({dist(rng), dist(rng), dist(rng), dist(rng)});
        if (!is_zero(x))
            CHECK(norm_sq(gm, x) > 0);
    }
}

TEST_CASE("projection along a subspace") {
    Subspace ey = Subspace::span({from_ints({0, 1})}, 2);
    Subspace ex = Subspace::span({from_ints({1, 0})}, 2);
    Subspace diag = Subspace::span({from_ints({1, 1})}, 2);
    CHECK(project_along(ey, ex, from_ints({3, 5})) == from_ints({3, 0}));
    CHECK(project_along(diag, ex, from_ints({2, 1})) == from_ints({1, 0}));
    CHECK(project_along(diag, ex, from_ints({7, 0})) == from_ints({7, 0}));
    CHECK_THROWS_AS(project_along(ex, ex, from_ints({1, 0})), InvalidInput);
}

TEST_CASE("integer lattice reductions") {
    // Z{(2,0),(0,2)} has index 4 in Z^2; Z{(1,1),(1,-1)} has index 2.
    CHECK(saturation_index({from_ints({2, 0}), from_ints({0, 2})}, 2) == 4);
    CHECK(saturation_index({from_ints({1, 1}), from_ints({1, -1})}, 2) == 2);
    CHECK(saturation_index({from_ints({1, 1}), from_ints({1, -1}), from_ints({1, 0})}, 2) == 1);
    CHECK(saturation_index({from_ints({2, 2, 0})}, 3) == 2);

    auto sb = saturated_basis({from_ints({2, 2, 0}), from_ints({0, 3, 3})}, 3);
    REQUIRE(sb.size() == 2);
    auto comp = complement_basis({from_ints({2, 2, 0}), from_ints({0, 3, 3})}, 3);
    REQUIRE(comp.size() == 1);
    std::vector<QVec> all = sb;
    all.push_back(comp[0]);
    CHECK(covolume(all) == 1);
    CHECK(Subspace::span(sb, 3) == Subspace::span({from_ints({1, 1, 0}), from_ints({0, 1, 1})}, 3));
    CHECK(rational_gcd({Rat(1, 2), Rat(1, 3)}) == Rat(1, 6));
    CHECK(rational_gcd({Rat(4), Rat(6)}) == 2);
}

TEST_CASE("double description on boxes and errors") {
    auto verts = dd_hull(box(2, Rat(1, 2)), 2);
    CHECK(verts.size() == 4);
    for (const auto &v : verts) {
        CHECK(abs(v[0]) == Rat(1, 2));
        CHECK(abs(v[1]) == Rat(1, 2));
    }
    std::vector<Halfspace> bad = {{from_ints({1}), -1}, {from_ints({-1}), -1}};
    CHECK_THROWS_AS(dd_hull(bad, 1), InvalidInput);
    std::vector<Halfspace> open = {{from_ints({1, 0}), 1}, {from_ints({-1, 0}), 1}, {from_ints({0, 1}), 1}};
    CHECK_THROWS_AS(dd_hull(open, 2), InvalidInput);

    Polytope cube = Polytope::from_halfspaces(box(3, Rat(1, 2)), 3);
    CHECK(cube.vertices().size() == 8);
    CHECK(volume(cube) == 1);
    FaceLattice lat(cube);
    CHECK(lat.faces(0).size() == 8);
    CHECK(lat.faces(1).size() == 12);
    CHECK(lat.faces(2).size() == 6);
}

TEST_CASE("hexagon round trip and volume") {
    // Hexagon of A2 in basis coordinates: s^T G x <= s^T G s / 2 for s in +-(1,0),(0,1),(1,-1).
    GramMatrix g(mat({{2, 1}, {1, 2}}));
    std::vector<Halfspace> hs;
    for (auto s : {from_ints({1, 0}), from_ints({0, 1}), from_ints({1, -1})})
        for (auto t : {s, -s})
            hs.push_back(normalized(g.apply(t), norm_sq(g, t) / 2));
    Polytope hex = Polytope::from_halfspaces(hs, 2);
    CHECK(hex.vertices().size() == 6);
    CHECK(hex.facets().size() == 6);
    CHECK(volume(hex) == 1);
    auto again = dd_facets(hex.vertices(), 2);
    CHECK(again.size() == 6);
    for (const auto &h : again)
        CHECK(hex.find_facet(h) != Polytope::npos);
}

TEST_CASE("random polytopes: double description agrees with brute force") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<QVec> pts;
            for (int k = 0; k < 10; ++k) {
                QVec p(d);
                for (auto &x : p) {
                    x = Rat(dist(rng), 2);
                    x.canonicalize();
                }
                pts.push_back(p);
            }
            if (affine_rank(pts) != d)
                continue;
            Polytope p = Polytope::from_points(pts, d);
            auto brute = enumerate_vertices_bruteforce(p.facets(), d);
            CHECK(brute == p.vertices());
            auto verts = dd_hull(p.facets(), d);
            CHECK(verts == p.vertices());
            // Every input point lies inside, every vertex is an input point.
            for (const auto &x : pts)
                CHECK(p.contains(x));
            for (const auto &v : p.vertices())
                CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
            // Euler characteristic of the boundary.
            FaceLattice lat(p);
            long chi = 0;
            for (std::size_t k = 0; k < d; ++k)
                chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(lat.faces(k).size());
            CHECK(chi == (d % 2 == 1 ? 2 : 0));
            // Volume is translation invariant and additive under a hyperplane cut.
            CHECK(volume(p.translated(unit(d, 0))) == volume(p));
            QVec c = p.vertex_centroid();
            std::vector<Halfspace> lo = p.facets(), hi = p.facets();
            lo.push_back({unit(d, 0), c[0]});
            hi.push_back({-unit(d, 0), -c[0]});
            CHECK(volume(Polytope::from_halfspaces(lo, d)) + volume(Polytope::from_halfspaces(hi, d)) ==
                  volume(p));
        }
    }
}

TEST_CASE("extreme points of lower-dimensional sets") {
    std::vector<QVec> seg = {from_ints({0, 0, 0}), from_ints({1, 1, 1}), from_ints({2, 2, 2})};
    CHECK(extreme_points(seg) == std::vector<QVec>{from_ints({0, 0, 0}), from_ints({2, 2, 2})});
    std::vector<QVec> sq = {from_ints({0, 0, 1}), from_ints({2, 0, 1}), from_ints({0, 2, 1}),
                            from_ints({2, 2, 1}), from_ints({1, 1, 1})};
    CHECK(extreme_points(sq).size() == 4);
    CHECK(extreme_points({from_ints({3, 4})}).size() == 1);
}
