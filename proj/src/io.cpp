#include "parallelo/io.hpp"

#include <algorithm>
#include <map>

namespace parallelo::io {

Json to_json(const Rat &r) { return to_string(r); }

Json to_json(const QVec &v) {
    Json out = Json::array();
    for (const auto &x : v)
        out.push_back(to_json(x));
    return out;
}

Json to_json(const QMat &m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.push_back(to_json(m.row(i)));
    return out;
}

Json to_json(const std::vector<QVec> &vs) {
    Json out = Json::array();
    for (const auto &v : vs)
        out.push_back(to_json(v));
    return out;
}

Json to_json(const Subspace &s) { return Json{{"rank", s.rank()}, {"basis", to_json(s.basis())}}; }

Rat rat_from(const Json &j) {
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    if (j.is_number_integer())
        return Rat(j.get<long>());
    throw InvalidInput("expected a rational as an integer or a \"p/q\" string, got " + j.dump());
}

QVec vec_from(const Json &j) {
    if (!j.is_array())
        throw InvalidInput("expected an array of rationals, got " + j.dump());
    QVec v;
    for (const auto &x : j)
        v.push_back(rat_from(x));
    return v;
}

std::vector<QVec> vecs_from(const Json &j) {
    if (!j.is_array())
        throw InvalidInput("expected an array of vectors, got " + j.dump());
    std::vector<QVec> out;
    for (const auto &x : j)
        out.push_back(vec_from(x));
    return out;
}

QMat mat_from(const Json &j) {
    auto rows = vecs_from(j);
    if (rows.empty())
        throw InvalidInput("empty matrix");
    for (const auto &r : rows)
        if (r.size() != rows[0].size())
            throw InvalidInput("ragged matrix");
    return QMat::from_rows(rows, rows[0].size());
}

GramMatrix form_from(const Json &j) {
    if (!j.is_object() || !j.contains("gram"))
        throw InvalidInput("lattice form needs a \"gram\" field");
    QMat g = mat_from(j.at("gram"));
    if (g.rows() != g.cols())
        throw InvalidInput("Gram matrix must be square");
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != g.rows())
        throw InvalidInput("\"dim\" does not match the Gram matrix");
    if (j.contains("basis")) {
        QMat b = mat_from(j.at("basis"));
        if (b.rows() != g.rows() || b.cols() != g.rows())
            throw InvalidInput("basis must be a square matrix of the form's dimension");
        for (const auto &r : b.row_list())
            if (!is_integral(r))
                throw InvalidInput("basis must be integral");
        if (determinant(b) == 0)
            throw InvalidInput("basis is singular");
        g = b * g * b.transpose();
    }
    return GramMatrix(g);
}

Json form_to_json(const GramMatrix &g) { return Json{{"dim", g.dim()}, {"gram", to_json(g.matrix())}}; }

Subspace subspace_from(const Json &j, std::size_t d) {
    std::vector<QVec> vs = vecs_from(j.is_object() ? j.at("basis") : j);
    for (const auto &v : vs)
        if (v.size() != d)
            throw InvalidInput("subspace vector of wrong dimension");
    return Subspace::span(vs, d);
}

Json cell_summary(const Cell &cell) {
    const std::size_t d = cell.dim();
    std::map<std::size_t, std::size_t> belt_sizes;
    for (const auto &b : belts(cell))
        ++belt_sizes[b.facets.size()];
    Json counts = Json::object();
    for (std::size_t k = 0; k < d; ++k)
        counts[std::to_string(k)] = faces(cell, k).size();
    return Json{{"dim", d},
                {"facet_count", cell.facet_count()},
                {"vertex_count", cell.poly.vertices().size()},
                {"face_counts", counts},
                {"belt_count", belts(cell).size()},
                {"four_belts", belt_sizes[4]},
                {"six_belts", belt_sizes[6]},
                {"volume", to_json(volume(cell.poly, cell.lattice))},
                {"covering_radius_sq", to_json(covering_radius_sq(cell))},
                {"facet_vectors", to_json(cell.facet_vectors)},
                {"vertices", to_json(cell.poly.vertices())}};
}

Json belts_json(const Cell &cell) {
    Json out = Json::array();
    for (const auto &b : belts(cell)) {
        std::vector<QVec> fv;
        for (auto f : b.facets)
            fv.push_back(cell.facet_vectors[f]);
        out.push_back(Json{{"size", b.facets.size()}, {"direction", to_json(b.direction)}, {"facet_vectors", to_json(fv)}});
    }
    return out;
}

Json venkov_json(const VenkovReport &r) {
    return Json{{"centrally_symmetric", r.centrally_symmetric},
                {"facets_symmetric", r.facets_symmetric},
                {"belts_ok", r.belts_ok},
                {"pass", r.pass()}};
}

Json extended_json(const ExtendedCell &e) {
    Json facets = Json::array();
    for (std::size_t i = 0; i < e.provenance.size(); ++i) {
        const auto &p = e.provenance[i];
        facets.push_back(Json{{"normal", to_json(e.poly.facets()[i].normal)},
                              {"offset", to_json(e.poly.facets()[i].offset)},
                              {"origin", to_string(p.origin)},
                              {"source", to_json(p.source)},
                              {"facet_vector", to_json(p.facet_vector)}});
    }
    return Json{{"direction", to_json(e.segment.direction)},
                {"half_length", to_json(e.segment.half_length)},
                {"vertices", to_json(e.poly.vertices())},
                {"facets", facets},
                {"lattice_basis", to_json(e.lattice_basis)},
                {"layer_shift", to_json(e.layer_shift)},
                {"volume", to_json(volume(e.poly))},
                {"is_parallelohedron", is_parallelohedron(e.poly, e.lattice_basis)}};
}

Json recovery_json(const MetricRecovery &r) {
    Json out{{"found", r.found},
             {"nullspace_rank", r.nullspace_rank},
             {"candidates_tried", r.candidates_tried}};
    if (r.found) {
        out["metric"] = to_json(r.metric);
        out["multipliers"] = to_json(QVec(r.multipliers.begin(), r.multipliers.end()));
    }
    return out;
}

Json cross_json(const Cross &c) {
    return Json{{"pi1", to_json(c.pi1)}, {"pi2", to_json(c.pi2)}, {"assignment", c.assignment}};
}

namespace {

Json scaled_json(const ScaledNormal &n) {
    Json out{{"direction", to_json(n.direction)}, {"scale_sq", to_json(n.scale_sq)}};
    out["exact"] = n.exact ? to_json(*n.exact) : Json(nullptr);
    return out;
}

} // namespace

Json twofold_json(const TwofoldResult &t) {
    return Json{{"rho_sq", to_json(t.rho_sq)},   {"alpha", to_json(t.alpha)},
                {"beta", to_json(t.beta)},       {"n1", scaled_json(t.n1)},
                {"n2", scaled_json(t.n2)},       {"g1", to_json(t.g1.matrix())},
                {"g2", to_json(t.g2.matrix())},  {"free_plane", to_json(t.free_plane)}};
}

Json decomposition_json(const Decomposition &dec) {
    Json factors = Json::array();
    for (const auto &f : dec.factors)
        factors.push_back(Json{{"space", to_json(f.space)},
                               {"classes", f.classes},
                               {"basis", to_json(f.basis)},
                               {"gram", to_json(f.cell.form.matrix())},
                               {"vertex_count", f.cell.poly.vertices().size()},
                               {"irreducible", f.irreducible}});
    return Json{{"reducible", dec.reducible()}, {"factor_count", dec.factors.size()}, {"factors", factors}};
}

Json good_bad_json(const GoodBadReport &r) {
    return Json{{"v", to_json(r.v)}, {"good", r.good}, {"bad", r.bad}, {"v_prime", to_json(r.v_prime)}};
}

Json plane_analysis_json(const PlaneAnalysis &p) {
    Json out{{"line1", to_json(p.line1)},
             {"line2", to_json(p.line2)},
             {"basis", to_json(p.basis)},
             {"projection_vertices", to_json(p.r.vertices())},
             {"projection_metric", to_json(p.r_metric)},
             {"c1", to_json(p.c1)},
             {"c2", to_json(p.c2)},
             {"v1", to_json(p.v1)},
             {"v2", to_json(p.v2)},
             {"prism", p.prism},
             {"prism_consistent", p.prism_consistent}};
    out["report1"] = p.report1 ? good_bad_json(*p.report1) : Json(nullptr);
    out["report2"] = p.report2 ? good_bad_json(*p.report2) : Json(nullptr);
    out["cross"] = p.cross ? cross_json(*p.cross) : Json(nullptr);
    return out;
}

Json failure_json(const InstanceFailure &f) {
    return Json{{"suite", to_string(f.suite)}, {"dim", f.dim},         {"index", f.index},
                {"seed", f.seed},               {"directions", f.directions}, {"form", form_to_json(f.form)},
                {"message", f.message}};
}

Json campaign_json(const CampaignConfig &config, const CampaignReport &report, bool timings) {
    Json suites = Json::object();
    for (const auto &[s, t] : report.tallies) {
        Json entry{{"pass", t.pass}, {"fail", t.fail}, {"checks", t.checks}};
        if (timings)
            entry["seconds"] = t.seconds;
        suites[to_string(s)] = entry;
    }
    Json names = Json::array();
    for (Suite s : config.suites)
        names.push_back(to_string(s));
    Json failures = Json::array();
    for (const auto &f : report.failures)
        failures.push_back(failure_json(f));
    return Json{{"config",
                 {{"seed", config.seed},
                  {"dims", config.dims},
                  {"count", config.count},
                  {"entry_bound", config.entry_bound},
                  {"directions", config.directions},
                  {"suites", names}}},
                {"suites", suites},
                {"failures", failures},
                {"ok", report.ok()}};
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace parallelo::io
