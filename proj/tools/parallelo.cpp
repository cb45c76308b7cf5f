#include "parallelo/campaign.hpp"
#include "parallelo/delaunay.hpp"
#include "parallelo/extend.hpp"
#include "parallelo/freespace.hpp"
#include "parallelo/io.hpp"
#include "parallelo/structure.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace parallelo;
using io::Json;

namespace {

constexpr int exit_failure = 1;
constexpr int exit_input = 2;

struct Result {
    Json output;
    bool ok = true;
};

std::string read_input(const std::string &path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw InvalidInput("cannot open input file '" + path + "'");
        buf << in.rdbuf();
    }
    return buf.str();
}

SegmentSpec segment_from(const Json &j, std::size_t d) {
    SegmentSpec seg{io::vec_from(j.at("direction")), j.contains("half_length") ? io::rat_from(j.at("half_length")) : Rat(1, 2)};
    if (seg.direction.size() != d)
        throw InvalidInput("direction of wrong dimension");
    return seg;
}

Result cmd_cell(const Json &j) { return {io::cell_summary(voronoi_cell(io::form_from(j)))}; }

Result cmd_belts(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    return {Json{{"belts", io::belts_json(cell)}}};
}

Result cmd_venkov(const Json &j) {
    VenkovReport r;
    if (j.contains("vertices")) {
        auto pts = io::vecs_from(j.at("vertices"));
        if (pts.empty())
            throw InvalidInput("empty vertex list");
        r = check_minkowski_venkov(Polytope::from_points(pts, pts[0].size()));
    } else {
        Cell cell = voronoi_cell(io::form_from(j));
        r = check_minkowski_venkov(cell.poly, cell.lattice);
    }
    return {io::venkov_json(r), r.pass()};
}

Result cmd_delaunay(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    const std::size_t d = cell.dim();
    std::vector<std::size_t> belt_size(faces(cell, d - 2).size(), 0);
    for (const auto &b : belts(cell))
        for (auto r : b.ridges)
            belt_size[r] = b.facets.size();
    std::map<std::string, std::size_t> ridge_types, fan_types;
    bool duality = true;
    const auto &ridges = d >= 2 ? faces(cell, d - 2) : std::vector<Face>{};
    for (std::size_t i = 0; i < ridges.size(); ++i) {
        DualCellType t = fan_type(cell, ridges[i]);
        ++ridge_types[to_string(t)];
        bool standard = standard_vector(cell, ridges[i]).has_value();
        duality = duality && standard == (belt_size[i] == 4) && standard == (t == DualCellType::rectangle);
    }
    if (d >= 3)
        for (const auto &f : faces(cell, d - 3))
            ++fan_types[to_string(fan_type(cell, f))];
    Json out{{"covering_radius_sq", io::to_json(covering_radius_sq(cell))},
             {"ridge_dual_types", ridge_types},
             {"fan_types", fan_types},
             {"duality_ok", duality}};
    return {out, duality};
}

Result cmd_free(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    SegmentSpec seg = segment_from(j, cell.dim());
    if (is_zero(seg.direction))
        throw InvalidInput("direction must be nonzero");
    bool free = is_free_segment(cell, seg.direction);
    std::vector<QVec> pts;
    for (const auto &v : cell.poly.vertices()) {
        pts.push_back(v + seg.half_vector());
        pts.push_back(v - seg.half_vector());
    }
    bool tiles = check_minkowski_venkov(Polytope::from_points(pts, cell.dim())).pass();
    Json out{{"free", free}, {"extension_venkov", tiles}, {"agree", free == tiles}};
    if (free)
        out["ab_rank"] = ab_sets(cell, seg.direction).span_ab.rank();
    return {out, free == tiles};
}

Result cmd_perfect(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    Json spaces = Json::array();
    bool plane = false;
    for (const auto &ps : perfect_free_spaces(cell)) {
        Json entry{{"space", io::to_json(ps.space)}, {"witness_classes", ps.witness_classes}};
        if (ps.space.rank() == 2 && cell.dim() >= 3) {
            PerfectPlaneReport r = perfect_lines_in_plane(cell, ps.space);
            entry["lines"] = io::to_json(std::vector<QVec>{r.line1, r.line2});
        }
        plane = plane || ps.space.rank() >= 2;
        spaces.push_back(entry);
    }
    bool reducible = decompose(cell).reducible();
    return {Json{{"spaces", spaces}, {"has_free_plane", plane}, {"reducible", reducible}}, !plane || reducible};
}

Result cmd_extend(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    ExtendedCell e = minkowski_extend(cell, segment_from(j, cell.dim()));
    Json out = io::extended_json(e);
    return {out, out["is_parallelohedron"].get<bool>()};
}

Result cmd_recover(const Json &j) {
    if (j.contains("vertices")) {
        auto pts = io::vecs_from(j.at("vertices"));
        if (pts.empty())
            throw InvalidInput("empty vertex list");
        const std::size_t d = pts[0].size();
        std::vector<QVec> basis;
        if (j.contains("lattice_basis")) {
            basis = io::vecs_from(j.at("lattice_basis"));
        } else {
            for (std::size_t i = 0; i < d; ++i)
                basis.push_back(unit(d, i));
        }
        MetricRecovery r = recover_voronoi_metric(Polytope::from_points(pts, d), basis);
        return {io::recovery_json(r), r.found};
    }
    Cell cell = voronoi_cell(io::form_from(j));
    ExtendedCell e = minkowski_extend(cell, segment_from(j, cell.dim()));
    MetricRecovery r = recover_voronoi_metric(e.poly, e.lattice_basis);
    Json out = io::recovery_json(r);
    out["lattice_basis"] = io::to_json(e.lattice_basis);
    return {out, r.found};
}

Result cmd_dilate(const Json &j) {
    GramMatrix g = io::form_from(j);
    QVec n = io::vec_from(j.at("n"));
    Rat scale = j.contains("scale_sq") ? io::rat_from(j.at("scale_sq")) : Rat(1);
    GramMatrix h = dilate(g, n, scale);
    bool inclusion = check_dilatation_span(g, n);
    Json out = io::form_to_json(h);
    out["fn_before"] = io::to_json(fn_set(g, n));
    out["fn_after"] = io::to_json(fn_set(dilate(g, n), n));
    out["span_inclusion"] = inclusion;
    return {out, inclusion};
}

Result cmd_twofold(const Json &j) {
    GramMatrix g = io::form_from(j);
    Subspace pi1 = io::subspace_from(j.at("pi1"), g.dim()), pi2 = io::subspace_from(j.at("pi2"), g.dim());
    return {io::twofold_json(twofold_dilatation(g, pi1, pi2))};
}

Result cmd_cross(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    auto cr = find_cross(cell);
    bool reducible = decompose(cell).reducible();
    Json out{{"cross", cr ? io::cross_json(*cr) : Json(nullptr)}, {"reducible", reducible}};
    bool ok = !cr || reducible;
    if (cr) {
        bool reduction = check_factors_in_cross(cell, *cr);
        out["factors_in_hyperplanes"] = reduction;
        ok = ok && reduction;
    }
    return {out, ok};
}

Result cmd_decompose(const Json &j) {
    return {io::decomposition_json(decompose(voronoi_cell(io::form_from(j))))};
}

Result cmd_analyze_plane(const Json &j) {
    Cell cell = voronoi_cell(io::form_from(j));
    PlaneAnalysis p = analyze_perfect_plane(cell, io::subspace_from(j.at("plane"), cell.dim()));
    return {io::plane_analysis_json(p), p.prism ? p.prism_consistent : p.cross.has_value()};
}

Result cmd_replay(const Json &j) {
    Suite s = parse_suite(j.at("suite").get<std::string>());
    GramMatrix g = io::form_from(j.at("form"));
    SuiteOutcome o = run_suite_on(s, g, j.at("seed").get<std::uint64_t>(), j.at("directions").get<std::size_t>());
    return {Json{{"suite", to_string(s)}, {"pass", o.pass}, {"checks", o.checks}, {"message", o.message}}, o.pass};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact Voronoi parallelohedra of lattices with arbitrary quadratic forms"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Indent the JSON output");
    app.fallthrough();

    std::string input = "-";
    using Handler = std::function<Result(const Json &)>;
    const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
        {"cell", "Voronoi cell, face counts and belts of a lattice form", cmd_cell},
        {"belts", "Belts of the Voronoi cell", cmd_belts},
        {"venkov", "Minkowski-Venkov conditions for a form's cell or a vertex list", cmd_venkov},
        {"delaunay", "Covering radius and dual cell types", cmd_delaunay},
        {"free", "Whether a segment is free, compared with the conditions on P+I", cmd_free},
        {"perfect", "Maximal perfect free spaces and perfect lines", cmd_perfect},
        {"extend", "Minkowski sum of the cell and a segment", cmd_extend},
        {"recover", "Voronoi metric of P+I or of a given polytope", cmd_recover},
        {"dilate", "Rank-one dilatation of the form", cmd_dilate},
        {"twofold", "Twofold dilatation of a cell with a cross", cmd_twofold},
        {"cross", "Exhaustive cross search", cmd_cross},
        {"decompose", "Direct sum decomposition of the cell", cmd_decompose},
        {"analyze-plane", "Projection along a perfect free plane: prism or cross", cmd_analyze_plane},
    };
    std::map<CLI::App *, Handler> handlers;
    for (const auto &[name, desc, handler] : commands) {
        CLI::App *sub = app.add_subcommand(name, desc);
        sub->add_option("input", input, "JSON input file, - for standard input");
        handlers[sub] = handler;
    }

    CampaignConfig config;
    std::vector<std::string> suite_names;
    std::string replay;
    bool timings = true;
    CLI::App *fuzz = app.add_subcommand("fuzz", "Randomized verification campaign");
    fuzz->add_option("--seed", config.seed, "Campaign seed");
    fuzz->add_option("--dims", config.dims, "Dimensions to sample")->delimiter(',');
    fuzz->add_option("--count", config.count, "Instances per dimension");
    fuzz->add_option("--bound", config.entry_bound, "Entry bound of the sampled factor matrix");
    fuzz->add_option("--directions", config.directions, "Directions per instance");
    fuzz->add_option("--suites", suite_names, "Suites to run (default all)")->delimiter(',');
    fuzz->add_option("--replay", replay, "Re-run one failure dump");
    fuzz->add_flag("!--no-timings", timings, "Omit wall-time fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : exit_input;
    }

    try {
        Result r;
        if (fuzz->parsed()) {
            if (!replay.empty()) {
                r = cmd_replay(io::parse(read_input(replay)));
            } else {
                if (!suite_names.empty()) {
                    config.suites.clear();
                    for (const auto &s : suite_names)
                        config.suites.push_back(parse_suite(s));
                }
                CampaignReport report = run_campaign(config);
                r = {io::campaign_json(config, report, timings), report.ok()};
            }
        } else {
            for (const auto &[sub, handler] : handlers)
                if (sub->parsed())
                    r = handler(io::parse(read_input(input)));
        }
        std::cout << r.output.dump(pretty ? 2 : -1) << '\n';
        return r.ok ? 0 : exit_failure;
    } catch (const InvalidInput &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const Json::exception &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const Violation &e) {
        std::cerr << "violation: " << e.what() << '\n';
        return exit_failure;
    }
}
