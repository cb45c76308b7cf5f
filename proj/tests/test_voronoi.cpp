#include "common.hpp"

#include "parallelo/delaunay.hpp"
#include "parallelo/intlattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace parallelo;
using namespace testforms;

namespace {

// Minimal vectors of each nonzero parity class found by scanning a box.
std::vector<QVec> coset_minima_oracle(const GramMatrix &g, long k) {
    const std::size_t d = g.dim();
    std::map<std::vector<int>, std::pair<Rat, std::vector<QVec>>> best;
    for (const auto &v : box_points(d, k)) {
        if (is_zero(v))
            continue;
        std::vector<int> parity(d);
        for (std::size_t i = 0; i < d; ++i)
            parity[i] = static_cast<int>(mpz_odd_p(v[i].get_num_mpz_t()) != 0);
        if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; }))
            continue;
        Rat n = norm_sq(g, v);
        auto it = best.find(parity);
        if (it == best.end() || n < it->second.first)
            best[parity] = {n, {v}};
        else if (n == it->second.first)
            it->second.second.push_back(v);
    }
    std::vector<QVec> out;
    for (auto &[p, entry] : best)
        if (entry.second.size() == 2)
            out.insert(out.end(), entry.second.begin(), entry.second.end());
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

ClosestPoints cvp_oracle(const GramMatrix &g, const QVec &x, long k) {
    ClosestPoints best{Rat(-1), {}};
    for (const auto &v : box_points(g.dim(), k)) {
        Rat n = norm_sq(g, v - x);
        if (best.dist_sq < 0 || n < best.dist_sq)
            best = {n, {v}};
        else if (n == best.dist_sq)
            best.points.push_back(v);
    }
    return best;
}

std::vector<std::size_t> belt_sizes(const Cell &c) {
    std::vector<std::size_t> out;
    for (const auto &b : belts(c))
        out.push_back(b.facets.size());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("relevant vectors match coset minima") {
    CHECK(relevant_vectors(cubic(2)) ==
          std::vector<QVec>{from_ints({-1, 0}), from_ints({0, -1}), from_ints({0, 1}), from_ints({1, 0})});
    auto a2v = relevant_vectors(a2());
    CHECK(a2v.size() == 6);
    CHECK(std::find(a2v.begin(), a2v.end(), from_ints({1, -1})) != a2v.end());
    CHECK(relevant_vectors(fcc()).size() == 12);
    for (const auto &g : {cubic(3), a2(), fcc(), bcc(), a2a2(), square_hexagon(), a2z()})
        CHECK(relevant_vectors(g) == coset_minima_oracle(g, 3));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        GramMatrix g = random_form(rng, 3, 1);
        CHECK(relevant_vectors(g) == coset_minima_oracle(g, 4));
    }
}

TEST_CASE("closest lattice points") {
    auto cp = closest_lattice_points(cubic(2), {Rat(1, 2), Rat(1, 2)});
    CHECK(cp.dist_sq == Rat(1, 2));
    CHECK(cp.points.size() == 4);
    auto one = closest_lattice_points(cubic(2), {Rat(1, 4), Rat(0)});
    CHECK(one.points == std::vector<QVec>{from_ints({0, 0})});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-12, 12);
    for (int i = 0; i < 40; ++i) {
        GramMatrix g = random_form(rng, 3, 1);
        QVec x = {Rat(num(rng), 4), Rat(num(rng), 6), Rat(num(rng), 3)};
        for (auto &c : x)
            c.canonicalize();
        auto got = closest_lattice_points(g, x);
        auto want = cvp_oracle(g, x, 8);
        CHECK(got.dist_sq == want.dist_sq);
        CHECK(got.points == want.points);
    }
}

TEST_CASE("canonical Voronoi cells") {
    Cell sq = voronoi_cell(cubic(2));
    CHECK(sq.poly.vertices().size() == 4);
    for (const auto &v : sq.poly.vertices())
        CHECK((abs(v[0]) == Rat(1, 2) && abs(v[1]) == Rat(1, 2)));
    Cell hex = voronoi_cell(a2());
    CHECK(hex.poly.vertices().size() == 6);
    CHECK(volume(hex.poly) == 1);
    Cell f = voronoi_cell(fcc());
    CHECK(f.facet_count() == 12);
    CHECK(f.poly.vertices().size() == 14);
    CHECK(faces(f, 1).size() == 24);
    CHECK(faces(voronoi_cell(cubic(3)), 1).size() == 12);
    CHECK(faces(sq, 0).size() == 4);
    Cell b = voronoi_cell(bcc());
    CHECK(b.facet_count() == 14);
    CHECK(b.poly.vertices().size() == 24);
    for (std::size_t d = 2; d <= 4; ++d) {
        Cell z = voronoi_cell(cubic(d));
        CHECK(z.facet_count() == 2 * d);
        CHECK(volume(z.poly) == 1);
    }
}

TEST_CASE("belts") {
    CHECK(belt_sizes(voronoi_cell(cubic(3))) == std::vector<std::size_t>{4, 4, 4});
    CHECK(belt_sizes(voronoi_cell(fcc())) == std::vector<std::size_t>(4, 6));
    CHECK(belt_sizes(voronoi_cell(bcc())) == std::vector<std::size_t>(6, 6));
    CHECK(belt_sizes(voronoi_cell(cubic(2))) == std::vector<std::size_t>{4});
    CHECK(belt_sizes(voronoi_cell(a2())) == std::vector<std::size_t>{6});
    // Cycle order: consecutive facets share a ridge of the belt's class.
    Cell f = voronoi_cell(fcc());
    for (const auto &b : belts(f)) {
        for (std::size_t i = 0; i < b.facets.size(); ++i) {
            std::size_t x = b.facets[i], y = b.facets[(i + 1) % b.facets.size()];
            bool shared = std::any_of(b.ridges.begin(), b.ridges.end(), [&](std::size_t r) {
                const Bits &fs = faces(f, 1)[r].facets;
                return fs.test(x) && fs.test(y);
            });
            CHECK(shared);
        }
    }
}

TEST_CASE("Minkowski-Venkov conditions") {
    std::mt19937_64 rng(9);
    for (std::size_t d = 2; d <= 4; ++d)
        for (int i = 0; i < 5; ++i) {
            Cell c = voronoi_cell(random_form(rng, d));
            CHECK(check_minkowski_venkov(c.poly, c.lattice).pass());
            CHECK(c.facet_count() <= 2 * ((1UL << d) - 1));
            // Facet vectors generate Z^d.
            CHECK(saturation_index(c.facet_vectors, d) == 1);
            CHECK(lattice_basis(c.facet_vectors, d).size() == d);
        }
    std::vector<QVec> simplex = {from_ints({0, 0, 0}), from_ints({1, 0, 0}), from_ints({0, 1, 0}),
                                 from_ints({0, 0, 1})};
    auto rep = check_minkowski_venkov(Polytope::from_points(simplex, 3));
    CHECK_FALSE(rep.centrally_symmetric);
    CHECK_FALSE(rep.pass());
    std::vector<QVec> octa;
    for (std::size_t i = 0; i < 3; ++i) {
        octa.push_back(unit(3, i));
        octa.push_back(-unit(3, i));
    }
    auto orep = check_minkowski_venkov(Polytope::from_points(octa, 3));
    CHECK(orep.centrally_symmetric);
    CHECK_FALSE(orep.facets_symmetric);
    CHECK_FALSE(orep.pass());
}

TEST_CASE("standard vectors") {
    Cell sq = voronoi_cell(cubic(2));
    for (const auto &v : faces(sq, 0)) {
        QVec p = face_points(sq.poly, v)[0];
        auto t = standard_vector(sq, v);
        REQUIRE(t);
        CHECK(*t == Rat(2) * p);
    }
    Cell f = voronoi_cell(fcc());
    for (const auto &e : faces(f, 1))
        CHECK_FALSE(standard_vector(f, e));
    for (const auto &facet : faces(f, 2)) {
        auto t = standard_vector(f, facet);
        REQUIRE(t);
        std::size_t idx = facet.facets.find_first();
        CHECK(*t == f.facet_vectors[idx]);
    }
}

TEST_CASE("caps") {
    Cell sq = voronoi_cell(cubic(2));
    auto c1 = cap(sq, from_ints({1, 0}));
    REQUIRE(c1.size() == 1);
    CHECK(sq.facet_vectors[c1[0]] == from_ints({-1, 0}));
    auto c2 = cap(sq, from_ints({1, 1}));
    std::set<QVec, LexLess> vs;
    for (auto i : c2)
        vs.insert(sq.facet_vectors[i]);
    CHECK(vs == std::set<QVec, LexLess>{from_ints({-1, 0}), from_ints({0, -1})});
    Cell f = voronoi_cell(fcc());
    CHECK(cap(f, from_ints({-1, 1, 1})).size() == 4);
    CHECK_THROWS_AS(cap(f, zeros(3)), InvalidInput);
    // Caps of e and -e and the parallel facets partition all facets.
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5; ++i) {
        Cell c = voronoi_cell(random_form(rng, 3));
        QVec e = from_ints({1, -2, 1});
        auto a = cap(c, e), b = cap(c, -e);
        std::size_t par = 0;
        for (std::size_t k = 0; k < c.facet_count(); ++k)
            par += facet_parallel_to(c, k, e) ? 1 : 0;
        CHECK(a.size() + b.size() + par == c.facet_count());
        CHECK(a.size() == b.size());
    }
}

TEST_CASE("dual cells and their types") {
    Cell sq = voronoi_cell(cubic(2));
    for (const auto &v : faces(sq, 0)) {
        DualCell dc = dual_cell(sq, v);
        CHECK(dc.points.size() == 4);
        CHECK(classify_dual_cell(dc) == DualCellType::rectangle);
    }
    Cell hex = voronoi_cell(a2());
    for (const auto &v : faces(hex, 0))
        CHECK(classify_dual_cell(dual_cell(hex, v)) == DualCellType::triangle);
    for (const auto &e : faces(hex, 1)) {
        DualCell dc = dual_cell(hex, e);
        std::vector<QVec> expected = {zeros(2), hex.facet_vectors[e.facets.find_first()]};
        std::sort(expected.begin(), expected.end(), lex_less);
        CHECK(dc.points == expected);
        CHECK(classify_dual_cell(dc) == DualCellType::segment);
    }
    Cell cube = voronoi_cell(cubic(3));
    for (const auto &v : faces(cube, 0))
        CHECK(classify_dual_cell(dual_cell(cube, v)) == DualCellType::parallelepiped);

    Cell f = voronoi_cell(fcc());
    std::size_t octa = 0, tetra = 0;
    for (const auto &v : faces(f, 0)) {
        DualCellType t = classify_dual_cell(dual_cell(f, v));
        std::size_t degree = 0;
        for (const auto &e : faces(f, 1))
            degree += (e.vertices & v.vertices).any() ? 1 : 0;
        if (degree == 4) {
            CHECK(t == DualCellType::octahedron);
            ++octa;
        } else {
            CHECK(degree == 3);
            CHECK(t == DualCellType::tetrahedron);
            ++tetra;
        }
    }
    CHECK(octa == 6);
    CHECK(tetra == 8);
    Cell prism = voronoi_cell(a2z());
    for (const auto &v : faces(prism, 0))
        CHECK(classify_dual_cell(dual_cell(prism, v)) == DualCellType::prism3);
    for (const auto &e : faces(f, 1))
        CHECK(fan_type(f, e) == DualCellType::triangle);
    Cell z3 = voronoi_cell(cubic(3));
    for (const auto &e : faces(z3, 1))
        CHECK(fan_type(z3, e) == DualCellType::rectangle);
    Cell z4 = voronoi_cell(cubic(4));
    for (const auto &e : faces(z4, 1))
        CHECK(fan_type(z4, e) == DualCellType::parallelepiped);
    CHECK_THROWS_AS(fan_type(z4, faces(z4, 0)[0]), InvalidInput);
}

TEST_CASE("covering radius") {
    CHECK(covering_radius_sq(cubic(2)) == Rat(1, 2));
    CHECK(covering_radius_sq(cubic(3)) == Rat(3, 4));
    CHECK(covering_radius_sq(a2()) == Rat(2, 3));
    std::mt19937_64 rng(21);
    for (int i = 0; i < 5; ++i) {
        Cell c = voronoi_cell(random_form(rng, 3));
        Rat rho = covering_radius_sq(c);
        bool attained = false;
        for (const auto &v : faces(c, 0)) {
            DualCell dc = dual_cell(c, v);
            CHECK(dc.radius_sq <= rho);
            attained = attained || dc.radius_sq == rho;
        }
        CHECK(attained);
    }
}

TEST_CASE("duality of ridges: standard, four-belt, rectangle") {
    std::mt19937_64 rng(17);
    for (std::size_t d = 3; d <= 4; ++d)
        for (int i = 0; i < 4; ++i) {
            Cell c = voronoi_cell(random_form(rng, d));
            for (const auto &b : belts(c))
                for (auto r : b.ridges) {
                    const Face &ridge = faces(c, d - 2)[r];
                    bool standard = standard_vector(c, ridge).has_value();
                    bool rect = fan_type(c, ridge) == DualCellType::rectangle;
                    CHECK(standard == (b.facets.size() == 4));
                    CHECK(rect == (b.facets.size() == 4));
                }
        }
}
