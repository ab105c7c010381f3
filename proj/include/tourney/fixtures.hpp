#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tourney/formats.hpp"
#include "tourney/model.hpp"
#include "tourney/ranking.hpp"

namespace tourney {

/// Bundled tournament data: goal means, per-pair average points, combined
/// actual/average results and the published columns and rankings they must
/// reproduce. Loaded from a JSON manifest that references three pair tables.
struct FixtureSet {
    struct Published {
        std::vector<double> continuous_points;
        std::vector<double> raw_goal_difference;
        std::vector<int> discrete_points;
        std::vector<int> combined_points;
        std::vector<int> combined_preliminary_rank;
        /// Quoted tie-break values for selected teams (rounded total goal
        /// difference).
        std::map<std::string, int> tiebreak_goal_difference;
    };
    struct DistanceCheck {
        std::string a;
        std::string b;
        std::int64_t expected = 0;
    };

    std::string model_id;
    PairwiseGoalModel goals;
    PairTable points;
    PairTable combined;
    std::uint64_t games_per_pair = 1000;
    Published published;
    /// actual, continuous, discrete, proposed
    std::map<std::string, Ranking> rankings;
    std::vector<PlayoffOverride> playoff_winners;
    std::vector<DistanceCheck> distances;

    const Roster& teams() const { return goals.teams(); }
};

/// Throws IngestError on a malformed manifest or tables that disagree on
/// the team list.
FixtureSet load_fixture(const std::filesystem::path& manifest);

struct GoldenCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    bool is_distance = false;
};

std::vector<GoldenCheck> golden_checks(const FixtureSet& fixture);

/// Manifests reproduced by default, relative to the data directory.
inline const std::vector<std::string> kBundledManifests{"robocup2012.json", "robocup2013.json"};

}  // namespace tourney
