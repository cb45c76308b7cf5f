#include "common.hpp"

#include "parallelo/freespace.hpp"
#include "parallelo/intlattice.hpp"

#include <doctest.h>

#include <algorithm>

using namespace parallelo;
using namespace testforms;

namespace {

std::vector<QVec> sorted(std::vector<QVec> v) {
    std::sort(v.begin(), v.end(), lex_less);
    return v;
}

// Maximal intersections of facet hyperplanes over all class subsets that hit every six-belt.
std::vector<Subspace> perfect_spaces_oracle(const Cell &c) {
    const std::size_t d = c.dim(), m = c.classes.size();
    std::vector<std::vector<QVec>> six;
    for (const auto &b : six_belts(c)) {
        std::vector<QVec> vs;
        for (auto f : b.facets)
            vs.push_back(canonical_direction(c.facet_vectors[f]));
        six.push_back(vs);
    }
    std::vector<Subspace> spaces;
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        std::vector<QVec> chosen;
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1UL)
                chosen.push_back(c.classes[i]);
        bool hits = std::all_of(six.begin(), six.end(), [&](const std::vector<QVec> &belt) {
            return std::any_of(belt.begin(), belt.end(), [&](const QVec &v) {
                return std::find(chosen.begin(), chosen.end(), v) != chosen.end();
            });
        });
        if (!hits)
            continue;
        std::vector<QVec> rows;
        for (const auto &s : chosen)
            rows.push_back(c.form.apply(s));
        Subspace sp = Subspace::span(nullspace(rows, d), d);
        if (sp.rank() > 0)
            spaces.push_back(sp);
    }
    std::vector<Subspace> out;
    for (const auto &s : spaces) {
        bool maximal = std::none_of(spaces.begin(), spaces.end(), [&](const Subspace &o) {
            return o.rank() > s.rank() && o.contains(s);
        });
        if (maximal && std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("free segments") {
    CHECK(is_free_segment(voronoi_cell(cubic(3)), from_ints({1, 2, 3})));
    Cell b = voronoi_cell(bcc());
    CHECK(is_free_segment(b, from_ints({1, 1, 0})));
    CHECK_FALSE(is_free_segment(b, from_ints({1, 0, 0})));
    CHECK_THROWS_AS(is_free_segment(b, zeros(3)), InvalidInput);
    // Free directions are invariant under positive scaling.
    CHECK(is_free_segment(b, from_ints({3, 3, 0})));
}

TEST_CASE("perfect free spaces") {
    auto z3 = perfect_free_spaces(voronoi_cell(cubic(3)));
    REQUIRE(z3.size() == 1);
    CHECK(z3[0].space.rank() == 3);

    Cell f = voronoi_cell(fcc());
    auto fs = perfect_free_spaces(f);
    // Three 4-fold axes (two witness classes each) and four zone directions
    // (the three classes of one six-belt each).
    CHECK(fs.size() == 7);
    std::size_t axes = 0;
    for (const auto &p : fs) {
        CHECK(p.space.rank() == 1);
        axes += p.witness_classes.size() == 2 ? 1 : 0;
    }
    CHECK(axes == 3);
    for (const auto &b : six_belts(f)) {
        QVec zone = b.direction.basis()[0];
        CHECK(std::any_of(fs.begin(), fs.end(), [&](const PerfectSpace &p) {
            return p.space == Subspace::span({zone}, 3);
        }));
    }
    CHECK(std::any_of(fs.begin(), fs.end(), [](const PerfectSpace &p) {
        return p.space == Subspace::span({from_ints({-1, 1, 1})}, 3);
    }));

    Cell aa = voronoi_cell(a2a2());
    auto as = perfect_free_spaces(aa);
    CHECK(as.size() == 9);
    for (const auto &p : as)
        CHECK(p.space.rank() == 2);

    for (const auto &g : {fcc(), bcc(), a2a2(), square_hexagon(), a2z()}) {
        Cell c = voronoi_cell(g);
        std::vector<Subspace> got;
        for (const auto &p : perfect_free_spaces(c)) {
            got.push_back(p.space);
            // Every vector of a perfect space is free.
            for (const auto &v : p.space.basis())
                CHECK(is_free_segment(c, v));
            if (p.space.rank() == 2)
                CHECK(is_free_segment(c, p.space.basis()[0] + p.space.basis()[1]));
        }
        CHECK(got == perfect_spaces_oracle(c));
    }
    std::mt19937_64 rng(33);
    for (int i = 0; i < 6; ++i) {
        Cell c = voronoi_cell(random_form(rng, 3, 1));
        std::vector<Subspace> got;
        for (const auto &p : perfect_free_spaces(c))
            got.push_back(p.space);
        CHECK(got == perfect_spaces_oracle(c));
    }
}

TEST_CASE("sets A, B, C") {
    Cell sq = voronoi_cell(cubic(2));
    ABCSets s1 = ab_sets(sq, from_ints({1, 0}));
    CHECK(s1.A.empty());
    CHECK(sorted(s1.B) == sorted({from_ints({0, 1}), from_ints({0, -1})}));
    CHECK(s1.span_ab.rank() == 1);
    ABCSets s2 = ab_sets(sq, from_ints({1, 1}));
    CHECK(s2.A == sorted({from_ints({1, -1}), from_ints({-1, 1})}));
    CHECK(s2.B.empty());
    CHECK(sorted(s2.C) == sorted({from_ints({-1, 0}), from_ints({0, -1})}));

    Cell f = voronoi_cell(fcc());
    ABCSets s3 = ab_sets(f, from_ints({-1, 1, 1}));
    CHECK(s3.A.empty());
    CHECK(sorted(s3.B) == sorted({from_ints({1, 0, 0}), from_ints({-1, 0, 0}), from_ints({0, 1, -1}),
                                  from_ints({0, -1, 1})}));
    CHECK(s3.span_ab.rank() == 2);
    CHECK_THROWS_AS(ab_sets(voronoi_cell(bcc()), from_ints({1, 0, 0})), InvalidInput);
}

TEST_CASE("cap and layer properties on canonical cells") {
    Cell sq = voronoi_cell(cubic(2));
    Cell f = voronoi_cell(fcc());
    for (const auto &u : {from_ints({1, 0}), from_ints({1, 1}), from_ints({2, -1})}) {
        CHECK(check_cap_differences(sq, u));
        CHECK(check_ab_saturated(sq, u));
        CHECK(check_parallel_facet_vectors(sq, u));
        CHECK(check_layer_projection(sq, u));
    }
    QVec axis = from_ints({-1, 1, 1});
    CHECK(check_cap_differences(f, axis));
    CHECK(check_ab_saturated(f, axis));
    CHECK(check_parallel_facet_vectors(f, axis));
    CHECK(check_layer_projection(f, axis));
    Cell z3 = voronoi_cell(cubic(3));
    CHECK(check_layer_projection(z3, from_ints({0, 0, 1})));
    CHECK(check_layer_projection(z3, from_ints({1, 2, 3})));
}

TEST_CASE("cap and layer properties on sampled cells") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> coord(-2, 2);
    int tested = 0;
    for (std::size_t d = 2; d <= 3; ++d)
        for (int i = 0; i < 6; ++i) {
            Cell c = voronoi_cell(random_form(rng, d));
            for (int k = 0; k < 6; ++k) {
                QVec u(d);
                for (auto &x : u)
                    x = coord(rng);
                if (is_zero(u) || !is_free_segment(c, u))
                    continue;
                ++tested;
                CHECK(ab_sets(c, u).span_ab.rank() == d - 1);
                CHECK(check_cap_differences(c, u));
                CHECK(check_ab_saturated(c, u));
                CHECK(check_parallel_facet_vectors(c, u));
                CHECK(check_layer_projection(c, u));
            }
        }
    CHECK(tested > 10);
}

TEST_CASE("perfect planes and their lines") {
    Cell aa = voronoi_cell(a2a2());
    Subspace p = Subspace::span({from_ints({1, -2, 0, 0}), from_ints({0, 0, 1, -2})}, 4);
    PerfectPlaneReport rep = perfect_lines_in_plane(aa, p);
    CHECK(sorted({rep.line1, rep.line2}) == sorted({from_ints({1, -2, 0, 0}), from_ints({0, 0, 1, -2})}));
    CHECK(check_span_jumps(aa, p));
    for (const auto &ps : perfect_free_spaces(aa)) {
        PerfectPlaneReport r = perfect_lines_in_plane(aa, ps.space);
        CHECK(r.b_plane.size() == 2);
        CHECK(check_span_jumps(aa, ps.space));
    }
    // Sectors: two directions strictly between the lines give the same span,
    // the line itself a different one.
    QVec l1 = from_ints({1, -2, 0, 0}), l2 = from_ints({0, 0, 1, -2});
    Subspace g1 = ab_sets(aa, l1 + l2).span_ab;
    Subspace g2 = ab_sets(aa, Rat(2) * l1 + l2).span_ab;
    CHECK(g1 == g2);
    CHECK_FALSE(ab_sets(aa, l1).span_ab == g1);

    Cell f = voronoi_cell(fcc());
    CHECK_THROWS_AS(perfect_lines_in_plane(f, Subspace::span({unit(3, 0), unit(3, 1)}, 3)), InvalidInput);
    Cell sh = voronoi_cell(square_hexagon());
    auto spaces = perfect_free_spaces(sh);
    REQUIRE(!spaces.empty());
    CHECK_THROWS_AS(perfect_lines_in_plane(sh, spaces[0].space), InvalidInput);
    // A plane inside the rank-3 perfect space: the e2 axis and a hexagon edge direction.
    Subspace q = Subspace::span({from_ints({0, 1, 0, 0}), from_ints({0, 0, 1, -2})}, 4);
    PerfectPlaneReport rq = perfect_lines_in_plane(sh, q);
    CHECK(sorted({rq.line1, rq.line2}) == sorted({from_ints({0, 1, 0, 0}), from_ints({0, 0, 1, -2})}));
    CHECK(check_span_jumps(sh, q));
}
