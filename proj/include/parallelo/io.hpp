#pragma once

#include "parallelo/campaign.hpp"
#include "parallelo/delaunay.hpp"
#include "parallelo/extend.hpp"
#include "parallelo/freespace.hpp"
#include "parallelo/structure.hpp"

#include <json.hpp>

#include <string>

namespace parallelo::io {

using Json = nlohmann::ordered_json;

/// Rationals are written as "p/q" strings; integers and strings are accepted on input.
Json to_json(const Rat &r);
Json to_json(const QVec &v);
Json to_json(const QMat &m);
Json to_json(const std::vector<QVec> &vs);
Json to_json(const Subspace &s);

Rat rat_from(const Json &j);
QVec vec_from(const Json &j);
std::vector<QVec> vecs_from(const Json &j);
QMat mat_from(const Json &j);

/// {"dim": d, "gram": [[...]]} with an optional integer "basis" B; the loaded
/// form is then B G B^T. Throws InvalidInput on malformed or non-definite input.
GramMatrix form_from(const Json &j);
Json form_to_json(const GramMatrix &g);

/// {"basis": [[...]]} or a bare list of spanning vectors.
Subspace subspace_from(const Json &j, std::size_t d);

Json cell_summary(const Cell &cell);
Json belts_json(const Cell &cell);
Json venkov_json(const VenkovReport &r);
Json extended_json(const ExtendedCell &e);
Json recovery_json(const MetricRecovery &r);
Json cross_json(const Cross &c);
Json twofold_json(const TwofoldResult &t);
Json decomposition_json(const Decomposition &dec);
Json good_bad_json(const GoodBadReport &r);
Json plane_analysis_json(const PlaneAnalysis &p);

Json failure_json(const InstanceFailure &f);
/// Timing fields are omitted when `timings` is false.
Json campaign_json(const CampaignConfig &config, const CampaignReport &report, bool timings = true);

/// Parses text, mapping syntax errors to InvalidInput.
Json parse(const std::string &text);

} // namespace parallelo::io
