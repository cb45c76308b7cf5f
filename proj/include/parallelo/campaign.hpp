#pragma once

#include "parallelo/linalg.hpp"
#include "parallelo/voronoi.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace parallelo {

/// A^T A + I with A uniform in [-entry_bound, entry_bound]^{d x d}, seeded by `seed`.
GramMatrix sample_gram(std::uint64_t seed, std::size_t d, long entry_bound);

enum class Suite { venkov, free, extend, recover, dilate, cross, decompose, lemmas };

std::string to_string(Suite s);
/// Throws InvalidInput for an unknown name.
Suite parse_suite(const std::string &name);
const std::vector<Suite> &all_suites();

struct CampaignConfig {
    std::uint64_t seed = 1;
    std::vector<std::size_t> dims = {2, 3};
    std::size_t count = 10;
    long entry_bound = 2;
    std::vector<Suite> suites = all_suites();
    std::size_t directions = 8; // per instance, for the direction-based suites
};

/// Throws InvalidInput unless dims lie in {2,...,5}, count >= 1 and entry_bound >= 1.
void validate(const CampaignConfig &config);

/// Seed of instance `index` at dimension d.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t d, std::size_t index);

/// Primitive directions: random small vectors and directions parallel to
/// d-1 random facets, deduplicated up to sign, in order of generation.
std::vector<QVec> sample_directions(const Cell &cell, std::mt19937_64 &rng, std::size_t count);

struct SuiteOutcome {
    bool pass = true;
    std::string message;     // first failure
    std::size_t checks = 0;  // individual checks performed
};

/// Runs one suite on one form; randomness is drawn from `seed` only.
SuiteOutcome run_suite_on(Suite suite, const GramMatrix &g, std::uint64_t seed, std::size_t directions);

struct InstanceFailure {
    Suite suite;
    std::size_t dim = 0;
    std::size_t index = 0;
    std::uint64_t seed = 0; // instance seed
    std::size_t directions = 0;
    GramMatrix form;
    std::string message;
};

struct SuiteTally {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t checks = 0;
    double seconds = 0;
};

struct CampaignReport {
    std::map<Suite, SuiteTally> tallies;
    std::vector<InstanceFailure> failures;
    bool ok() const { return failures.empty(); }
};

CampaignReport run_campaign(const CampaignConfig &config);

} // namespace parallelo
