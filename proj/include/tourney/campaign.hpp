#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tourney/formats.hpp"
#include "tourney/model.hpp"
#include "tourney/ranking.hpp"

namespace tourney {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::uint32_t kTruthGamesPerPair = 1000;

struct CampaignSpec {
    FormatSpec format;
    std::shared_ptr<const GameSampler> sampler;
    std::uint64_t n_tournaments = 1;
    Ranking truth;
    std::uint64_t master_seed = kDefaultSeed;
    /// Index of the first tournament; tournament k always uses stream k, so
    /// campaigns over disjoint index ranges merge into the combined campaign.
    std::uint64_t first_tournament = 0;
    /// 0 picks TOURNEY_WORKERS from the environment, else the hardware count.
    unsigned workers = 0;
};

/// Empirical distribution of L1 distances, one bin per observed value.
class DiscrepancyDistribution {
public:
    DiscrepancyDistribution() = default;
    /// Throws InvalidInput on odd or out-of-range keys or an empty map.
    static DiscrepancyDistribution from_counts(std::size_t n_teams, std::map<std::int64_t, std::uint64_t> counts);

    std::size_t n_teams() const { return n_teams_; }
    const std::map<std::int64_t, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t n_samples() const { return n_samples_; }
    double mean() const { return mean_; }
    /// Sample variance of the recorded distances.
    double variance() const { return variance_; }
    double standard_error() const;
    /// Smallest observed value v with P(L1 <= v) >= p.
    std::int64_t quantile(double p) const;
    std::int64_t median() const { return quantile(0.5); }
    /// p5, p25, p75, p95.
    std::array<std::int64_t, 4> quantiles() const;
    /// P(L1 <= value).
    double cumulative(std::int64_t value) const;

    friend bool operator==(const DiscrepancyDistribution& a, const DiscrepancyDistribution& b) {
        return a.n_teams_ == b.n_teams_ && a.counts_ == b.counts_;
    }

private:
    std::size_t n_teams_ = 0;
    std::map<std::int64_t, std::uint64_t> counts_;
    std::uint64_t n_samples_ = 0;
    double mean_ = 0.0;
    double variance_ = 0.0;
};

/// Sums counts. Throws InvalidComparison on different team counts.
DiscrepancyDistribution merge(const DiscrepancyDistribution& a, const DiscrepancyDistribution& b);

/// Worker count actually used for `requested` (see CampaignSpec::workers).
unsigned resolve_workers(unsigned requested);

/// Runs spec.n_tournaments independent tournaments and histograms their L1
/// distance to spec.truth. Output is independent of the worker count.
/// Errors from a tournament are rethrown annotated with its index.
DiscrepancyDistribution run_campaign(const CampaignSpec& spec);

/// Continuous-scheme ranking of an iterated round-robin on the ground-truth
/// stream of `master_seed`.
Ranking ground_truth(const GameSampler& sampler, std::uint64_t master_seed,
                     std::uint32_t games_per_pair = kTruthGamesPerPair);

struct ComparisonSummary {
    /// b minus a.
    double mean_delta = 0.0;
    double median_delta = 0.0;
    std::array<double, 4> quantile_deltas{};
    /// Standard error of mean_delta for independent campaigns.
    double mean_delta_standard_error = 0.0;
    /// a's cumulative mass is at least b's at every L1 value.
    bool dominance_holds = true;
    std::optional<std::int64_t> first_violation;
};

/// Throws InvalidComparison if the distributions cover different team counts.
ComparisonSummary compare_campaigns(const DiscrepancyDistribution& a, const DiscrepancyDistribution& b);

/// Ordered key=value pairs written as '#' lines ahead of tabular output.
using OutputHeader = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& out, const OutputHeader& header);
/// '#' header (plus n_teams), then `l1,count` rows for observed values.
void write_histogram(std::ostream& out, const DiscrepancyDistribution& dist, const OutputHeader& header);
/// Reads write_histogram output back.
DiscrepancyDistribution read_histogram(std::istream& in, std::string_view source = "<stream>");
std::string summary_json(const DiscrepancyDistribution& dist, const OutputHeader& header);
std::string comparison_json(const ComparisonSummary& summary);

}  // namespace tourney
