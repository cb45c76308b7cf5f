#include "parallelo/campaign.hpp"

#include "parallelo/delaunay.hpp"
#include "parallelo/extend.hpp"
#include "parallelo/freespace.hpp"
#include "parallelo/intlattice.hpp"
#include "parallelo/structure.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>

namespace parallelo {

GramMatrix sample_gram(std::uint64_t seed, std::size_t d, long entry_bound) {
    if (d < 1 || entry_bound < 1)
        throw InvalidInput("sampling needs d >= 1 and entry_bound >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-entry_bound, entry_bound);
    QMat a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            a(i, j) = dist(rng);
    return GramMatrix(a.transpose() * a + QMat::identity(d));
}

std::string to_string(Suite s) {
    switch (s) {
    case Suite::venkov:
        return "venkov";
    case Suite::free:
        return "free";
    case Suite::extend:
        return "extend";
    case Suite::recover:
        return "recover";
    case Suite::dilate:
        return "dilate";
    case Suite::cross:
        return "cross";
    case Suite::decompose:
        return "decompose";
    case Suite::lemmas:
        return "lemmas";
    }
    return "unknown";
}

Suite parse_suite(const std::string &name) {
    for (Suite s : all_suites())
        if (to_string(s) == name)
            return s;
    throw InvalidInput("unknown suite '" + name + "'");
}

const std::vector<Suite> &all_suites() {
    static const std::vector<Suite> suites = {Suite::venkov, Suite::free,      Suite::extend, Suite::recover,
                                              Suite::dilate, Suite::cross,     Suite::decompose,
                                              Suite::lemmas};
    return suites;
}

void validate(const CampaignConfig &config) {
    if (config.dims.empty())
        throw InvalidInput("campaign needs at least one dimension");
    for (auto d : config.dims)
        if (d < 2 || d > 5)
            throw InvalidInput("campaign dimensions must lie in {2,3,4,5}");
    if (config.count < 1)
        throw InvalidInput("campaign count must be at least 1");
    if (config.entry_bound < 1)
        throw InvalidInput("entry bound must be at least 1");
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t d, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(index)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<QVec> sample_directions(const Cell &cell, std::mt19937_64 &rng, std::size_t count) {
    const std::size_t d = cell.dim();
    std::uniform_int_distribution<long> coord(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, cell.classes.size() - 1);
    std::set<QVec, LexLess> seen;
    std::vector<QVec> out;
    for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
        QVec u;
        if (attempt % 2 == 0) {
            u.resize(d);
            for (auto &x : u)
                x = coord(rng);
        } else {
            std::vector<QVec> normals;
            for (std::size_t k = 0; k + 1 < d; ++k)
                normals.push_back(cell.form.apply(cell.classes[pick(rng)]));
            auto ns = nullspace(normals, d);
            if (ns.size() != 1)
                continue;
            u = ns[0];
        }
        if (is_zero(u))
            continue;
        u = primitive(u);
        if (seen.insert(canonical_direction(u)).second)
            out.push_back(u);
    }
    return out;
}

namespace {

struct Checker {
    SuiteOutcome out;
    void expect(bool ok, const std::string &what) {
        ++out.checks;
        if (!ok && out.pass) {
            out.pass = false;
            out.message = what;
        }
    }
};

Polytope segment_sum(const Cell &cell, const QVec &x) {
    std::vector<QVec> pts;
    for (const auto &v : cell.poly.vertices()) {
        pts.push_back(v + x);
        pts.push_back(v - x);
    }
    return Polytope::from_points(pts, cell.dim());
}

/// A form of dimension d with a block structure d1 + (d - d1).
GramMatrix split_form(std::mt19937_64 &rng, std::size_t d, long bound) {
    std::uniform_int_distribution<std::size_t> split(1, d - 1);
    std::size_t d1 = split(rng);
    return direct_sum(sample_gram(rng(), d1, bound), sample_gram(rng(), d - d1, bound));
}

void venkov_suite(Checker &c, const Cell &cell) {
    const std::size_t d = cell.dim();
    VenkovReport r = check_minkowski_venkov(cell.poly, cell.lattice);
    c.expect(r.centrally_symmetric, "cell is not centrally symmetric");
    c.expect(r.facets_symmetric, "facets are not centrally symmetric");
    c.expect(r.belts_ok, "a belt has neither 4 nor 6 facets");
    c.expect(volume(cell.poly, cell.lattice) == 1, "cell volume differs from the covolume 1");
    c.expect(cell.facet_count() <= 2 * ((std::size_t{1} << d) - 1), "more than 2(2^d-1) facets");
    c.expect(cell.facet_count() >= 2 * d, "fewer than 2d facets");
}

void free_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, std::size_t directions) {
    const std::size_t d = cell.dim();
    for (const auto &u : sample_directions(cell, rng, directions)) {
        bool free = is_free_segment(cell, u);
        bool tiles = check_minkowski_venkov(segment_sum(cell, Rat(1, 2) * u)).pass();
        c.expect(free == tiles, "belt freeness of " + to_string(u) + " disagrees with the conditions on P+I");
        if (free)
            c.expect(ab_sets(cell, u).span_ab.rank() + 1 == d, "rank of A u B differs from d-1");
    }
    bool has_plane = false;
    for (const auto &ps : perfect_free_spaces(cell)) {
        has_plane = has_plane || ps.space.rank() >= 2;
        for (const auto &b : ps.space.basis())
            c.expect(is_free_segment(cell, b), "perfect space contains a non-free direction");
    }
    if (has_plane)
        c.expect(decompose(cell).reducible(), "cell with a free plane is irreducible");
}

void extend_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, std::size_t directions) {
    for (const auto &u : sample_directions(cell, rng, directions)) {
        if (!is_free_segment(cell, u))
            continue;
        SegmentSpec seg{u, Rat(1, 2)};
        ExtendedCell e = minkowski_extend(cell, seg);
        Polytope hull = segment_sum(cell, seg.half_vector());
        c.expect(hull.vertices() == e.poly.vertices(), "extension vertices differ from the hull of V +- x");
        c.expect(is_parallelohedron(e.poly, e.lattice_basis), "P+I does not tile with its lattice");
        c.expect(volume(e.poly) == covolume(e.lattice_basis), "volume of P+I differs from the covolume");
    }
}

void recover_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, std::size_t directions) {
    bool irreducible = !decompose(cell).reducible();
    for (const auto &u : sample_directions(cell, rng, directions)) {
        if (!is_free_segment(cell, u))
            continue;
        ExtendedCell e = minkowski_extend(cell, {u, Rat(1, 2)});
        MetricRecovery r = recover_voronoi_metric(e.poly, e.lattice_basis);
        c.expect(r.found, "no Voronoi metric found for P+I along " + to_string(u));
        if (irreducible)
            c.expect(standard_vectors_orthogonal(cell, u), "standard vector not orthogonal to " + to_string(u));
        c.expect(check_projection_voronoi(cell, u), "projection along " + to_string(u) + " is not Voronoi");
    }
}

void dilate_suite(Checker &c, const GramMatrix &g, std::mt19937_64 &rng, long bound) {
    const std::size_t d = g.dim();
    std::uniform_int_distribution<long> coord(-2, 2);
    for (int k = 0; k < 3; ++k) {
        QVec n(d);
        for (auto &x : n)
            x = coord(rng);
        if (is_zero(n))
            continue;
        GramMatrix h = dilate(g, n);
        c.expect(check_dilatation_span(g, n), "span of F_n grows under dilatation by " + to_string(n));
        for (std::size_t i = 0; i < d; ++i)
            c.expect((sgn(inner(g, n, unit(d, i))) == 0) == (sgn(inner(h, n, unit(d, i))) == 0),
                     "orthogonality to n changes under dilatation");
    }
    GramMatrix s = split_form(rng, d, bound);
    Cell sc = voronoi_cell(s);
    if (auto cr = find_cross(sc)) {
        c.expect(check_dilatation_keeps_cross(s, cr->pi1, cr->pi2), "dilatation destroys a cross");
        if (d >= 3) {
            TwofoldResult t = twofold_dilatation(s, cr->pi1, cr->pi2);
            c.expect(t.free_plane.rank() == 2, "twofold dilatation plane is not of rank 2");
        }
    }
}

void cross_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, long bound) {
    for (const Cell &x : {cell, voronoi_cell(split_form(rng, cell.dim(), bound))}) {
        auto cr = find_cross(x);
        c.expect(check_cross_reducible(x), "cell with a cross is irreducible");
        if (cr)
            c.expect(check_factors_in_cross(x, *cr), "irreducible factor not parallel to a cross hyperplane");
    }
}

void decompose_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, long bound) {
    const std::size_t d = cell.dim();
    Decomposition dec = decompose(cell);
    std::size_t total = 0;
    for (const auto &f : dec.factors)
        total += f.space.rank();
    c.expect(total == d, "factor spaces do not add up to the ambient space");

    std::uniform_int_distribution<std::size_t> split(1, d - 1);
    std::size_t d1 = split(rng);
    GramMatrix a = sample_gram(rng(), d1, bound), b = sample_gram(rng(), d - d1, bound);
    std::size_t expect = decompose(voronoi_cell(a)).factors.size() + decompose(voronoi_cell(b)).factors.size();
    Decomposition sum = decompose(voronoi_cell(direct_sum(a, b)));
    c.expect(sum.factors.size() == expect, "decomposition of a direct sum has the wrong number of factors");
    for (const auto &f : sum.factors) {
        bool first = std::all_of(f.space.basis().begin(), f.space.basis().end(), [&](const QVec &v) {
            return std::all_of(v.begin() + static_cast<long>(d1), v.end(), [](const Rat &x) { return x == 0; });
        });
        bool second = std::all_of(f.space.basis().begin(), f.space.basis().end(), [&](const QVec &v) {
            return std::all_of(v.begin(), v.begin() + static_cast<long>(d1), [](const Rat &x) { return x == 0; });
        });
        c.expect(first || second, "factor of a direct sum straddles both blocks");
    }
}

void lemmas_suite(Checker &c, const Cell &cell, std::mt19937_64 &rng, std::size_t directions) {
    const std::size_t d = cell.dim();
    for (const auto &u : sample_directions(cell, rng, directions)) {
        if (!is_free_segment(cell, u))
            continue;
        c.expect(check_cap_differences(cell, u), "cap differences leave span(A u B)");
        c.expect(check_ab_saturated(cell, u), "Z(A u B) is not saturated");
        c.expect(check_parallel_facet_vectors(cell, u), "facet vectors in span(A u B) are not the parallel ones");
        c.expect(check_layer_projection(cell, u), "projection does not commute with the layer intersection");
    }
    std::vector<std::size_t> belt_size(faces(cell, d - 2).size(), 0);
    for (const auto &b : belts(cell))
        for (auto r : b.ridges)
            belt_size[r] = b.facets.size();
    const auto &ridges = faces(cell, d - 2);
    for (std::size_t i = 0; i < ridges.size(); ++i) {
        bool standard = standard_vector(cell, ridges[i]).has_value();
        bool rectangle = fan_type(cell, ridges[i]) == DualCellType::rectangle;
        c.expect(standard == (belt_size[i] == 4) && rectangle == standard,
                 "standard face, four-belt and rectangular dual cell disagree");
    }
    if (d >= 3)
        for (const auto &f : faces(cell, d - 3)) {
            try {
                fan_type(cell, f);
                c.expect(true, "");
            } catch (const InvalidInput &e) {
                c.expect(false, std::string("unclassified dual cell: ") + e.what());
            }
        }
    for (const auto &ps : perfect_free_spaces(cell))
        if (ps.space.rank() == 2)
            c.expect(check_span_jumps(cell, ps.space), "span(A u B) jumps off the perfect lines");
}

} // namespace

SuiteOutcome run_suite_on(Suite suite, const GramMatrix &g, std::uint64_t seed, std::size_t directions) {
    Checker c;
    std::mt19937_64 rng(seed);
    const long bound = 2;
    try {
        Cell cell = voronoi_cell(g);
        switch (suite) {
        case Suite::venkov:
            venkov_suite(c, cell);
            break;
        case Suite::free:
            free_suite(c, cell, rng, directions);
            break;
        case Suite::extend:
            extend_suite(c, cell, rng, directions);
            break;
        case Suite::recover:
            recover_suite(c, cell, rng, directions);
            break;
        case Suite::dilate:
            dilate_suite(c, g, rng, bound);
            break;
        case Suite::cross:
            cross_suite(c, cell, rng, bound);
            break;
        case Suite::decompose:
            decompose_suite(c, cell, rng, bound);
            break;
        case Suite::lemmas:
            lemmas_suite(c, cell, rng, directions);
            break;
        }
    } catch (const Violation &e) {
        c.expect(false, std::string("violation: ") + e.what());
    } catch (const InvalidInput &e) {
        c.expect(false, std::string("unexpected input error: ") + e.what());
    }
    return c.out;
}

CampaignReport run_campaign(const CampaignConfig &config) {
    validate(config);
    CampaignReport report;
    for (Suite s : config.suites)
        report.tallies[s];
    for (auto d : config.dims)
        for (std::size_t i = 0; i < config.count; ++i) {
            std::uint64_t seed = instance_seed(config.seed, d, i);
            GramMatrix g = sample_gram(seed, d, config.entry_bound);
            for (Suite s : config.suites) {
                auto start = std::chrono::steady_clock::now();
                SuiteOutcome o = run_suite_on(s, g, seed, config.directions);
                auto &t = report.tallies[s];
                t.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                t.checks += o.checks;
                if (o.pass) {
                    ++t.pass;
                } else {
                    ++t.fail;
                    report.failures.push_back({s, d, i, seed, config.directions, g, o.message});
                }
            }
        }
    return report;
}

} // namespace parallelo
