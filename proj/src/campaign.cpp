#include "tourney/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "tourney/detail/text.hpp"
#include "tourney/error.hpp"

namespace tourney {

DiscrepancyDistribution DiscrepancyDistribution::from_counts(std::size_t n_teams,
                                                             std::map<std::int64_t, std::uint64_t> counts) {
    const auto bound = max_l1_distance(n_teams);
    DiscrepancyDistribution d;
    d.n_teams_ = n_teams;
    for (auto it = counts.begin(); it != counts.end();) {
        const auto [value, count] = *it;
        if (value < 0 || value > bound || value % 2 != 0) {
            throw InvalidInput(fmt::format("L1 value {} is not an even integer in [0, {}]", value, bound));
        }
        if (count == 0) {
            it = counts.erase(it);
            continue;
        }
        d.n_samples_ += count;
        ++it;
    }
    if (d.n_samples_ == 0) {
        throw InvalidInput("a discrepancy distribution needs at least one sample");
    }
    d.counts_ = std::move(counts);
    double sum = 0.0;
    for (const auto& [value, count] : d.counts_) {
        sum += static_cast<double>(value) * static_cast<double>(count);
    }
    d.mean_ = sum / static_cast<double>(d.n_samples_);
    if (d.n_samples_ > 1) {
        double ss = 0.0;
        for (const auto& [value, count] : d.counts_) {
            const double dev = static_cast<double>(value) - d.mean_;
            ss += dev * dev * static_cast<double>(count);
        }
        d.variance_ = ss / static_cast<double>(d.n_samples_ - 1);
    }
    return d;
}

double DiscrepancyDistribution::standard_error() const {
    return std::sqrt(variance_ / static_cast<double>(n_samples_));
}

std::int64_t DiscrepancyDistribution::quantile(double p) const {
    const double target = p * static_cast<double>(n_samples_);
    std::uint64_t cumulative = 0;
    for (const auto& [value, count] : counts_) {
        cumulative += count;
        if (static_cast<double>(cumulative) >= target) {
            return value;
        }
    }
    return counts_.rbegin()->first;
}

std::array<std::int64_t, 4> DiscrepancyDistribution::quantiles() const {
    return {quantile(0.05), quantile(0.25), quantile(0.75), quantile(0.95)};
}

double DiscrepancyDistribution::cumulative(std::int64_t value) const {
    std::uint64_t c = 0;
    for (const auto& [v, count] : counts_) {
        if (v > value) {
            break;
        }
        c += count;
    }
    return static_cast<double>(c) / static_cast<double>(n_samples_);
}

DiscrepancyDistribution merge(const DiscrepancyDistribution& a, const DiscrepancyDistribution& b) {
    if (a.n_teams() != b.n_teams()) {
        throw InvalidComparison(
            fmt::format("cannot merge distributions over {} and {} teams", a.n_teams(), b.n_teams()));
    }
    auto counts = a.counts();
    for (const auto& [value, count] : b.counts()) {
        counts[value] += count;
    }
    return DiscrepancyDistribution::from_counts(a.n_teams(), std::move(counts));
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("TOURNEY_WORKERS")) {
        if (auto v = detail::parse_int<unsigned>(detail::trim(env)); v && *v > 0) {
            return *v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

DiscrepancyDistribution run_campaign(const CampaignSpec& spec) {
    if (!spec.sampler) {
        throw InvalidInput("campaign has no game sampler");
    }
    if (spec.n_tournaments < 1) {
        throw InvalidInput("a campaign needs at least one tournament");
    }
    const auto n = spec.sampler->team_count();
    if (spec.truth.size() != n) {
        throw InvalidComparison(fmt::format("truth ranks {} teams, model has {}", spec.truth.size(), n));
    }
    validate(spec.format, n);

    const auto bound = static_cast<std::size_t>(max_l1_distance(n));
    const auto workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(spec.workers), spec.n_tournaments));

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::uint64_t error_index = 0;
    std::exception_ptr error;
    std::vector<std::vector<std::uint64_t>> local(workers, std::vector<std::uint64_t>(bound + 1, 0));

    auto work = [&](unsigned w) {
        auto& counts = local[w];
        while (!failed.load(std::memory_order_relaxed)) {
            const auto offset = next.fetch_add(1, std::memory_order_relaxed);
            if (offset >= spec.n_tournaments) {
                break;
            }
            const auto k = spec.first_tournament + offset;
            try {
                auto rng = Rng::stream(spec.master_seed, k, stream_domain::tournament);
                const auto outcome = run_format(spec.format, *spec.sampler, rng);
                ++counts.at(static_cast<std::size_t>(l1_distance(outcome.ranking, spec.truth)));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error || k < error_index) {
                    error = std::current_exception();
                    error_index = k;
                }
                failed = true;
            }
        }
    };

    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception& e) {
            throw Error(fmt::format("tournament {}: {}", error_index, e.what()));
        }
    }

    std::map<std::int64_t, std::uint64_t> counts;
    for (const auto& l : local) {
        for (std::size_t v = 0; v <= bound; ++v) {
            if (l[v] != 0) {
                counts[static_cast<std::int64_t>(v)] += l[v];
            }
        }
    }
    return DiscrepancyDistribution::from_counts(n, std::move(counts));
}

Ranking ground_truth(const GameSampler& sampler, std::uint64_t master_seed, std::uint32_t games_per_pair) {
    auto rng = Rng::stream(master_seed, 0, stream_domain::ground_truth);
    return run_iterated_round_robin(sampler, games_per_pair, Scheme::continuous, TieBreakPolicy{}, rng).ranking;
}

ComparisonSummary compare_campaigns(const DiscrepancyDistribution& a, const DiscrepancyDistribution& b) {
    if (a.n_teams() != b.n_teams()) {
        throw InvalidComparison(
            fmt::format("cannot compare distributions over {} and {} teams", a.n_teams(), b.n_teams()));
    }
    ComparisonSummary s;
    s.mean_delta = b.mean() - a.mean();
    s.median_delta = static_cast<double>(b.median() - a.median());
    const auto qa = a.quantiles();
    const auto qb = b.quantiles();
    for (std::size_t i = 0; i < qa.size(); ++i) {
        s.quantile_deltas[i] = static_cast<double>(qb[i] - qa[i]);
    }
    s.mean_delta_standard_error = std::sqrt(a.standard_error() * a.standard_error() +
                                            b.standard_error() * b.standard_error());
    // Compare cumulative counts exactly: a.count(<=v) * b.n >= b.count(<=v) * a.n.
    std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> bins;
    for (const auto& [v, c] : a.counts()) bins[v].first += c;
    for (const auto& [v, c] : b.counts()) bins[v].second += c;
    __extension__ unsigned __int128 ca = 0;
    __extension__ unsigned __int128 cb = 0;
    for (const auto& [v, pair] : bins) {
        ca += pair.first;
        cb += pair.second;
        if (ca * b.n_samples() < cb * a.n_samples()) {
            s.dominance_holds = false;
            s.first_violation = v;
            break;
        }
    }
    return s;
}

void write_header(std::ostream& out, const OutputHeader& header) {
    for (const auto& [key, value] : header) {
        out << "# " << key << '=' << value << '\n';
    }
}

void write_histogram(std::ostream& out, const DiscrepancyDistribution& dist, const OutputHeader& header) {
    write_header(out, header);
    out << "# n_teams=" << dist.n_teams() << '\n';
    out << "l1,count\n";
    for (const auto& [value, count] : dist.counts()) {
        out << value << ',' << count << '\n';
    }
}

DiscrepancyDistribution read_histogram(std::istream& in, std::string_view source) {
    std::optional<std::size_t> n_teams;
    std::map<std::int64_t, std::uint64_t> counts;
    bool header_seen = false;
    std::string text;
    for (std::size_t number = 1; std::getline(in, text); ++number) {
        const auto line = detail::trim(text);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const auto body = detail::trim(line.substr(1));
            if (body.starts_with("n_teams=")) {
                n_teams = detail::parse_int<std::size_t>(body.substr(8));
                if (!n_teams) {
                    throw IngestError(fmt::format("{}:{}: bad n_teams", source, number));
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "l1,count") {
                throw IngestError(fmt::format("{}:{}: expected header 'l1,count'", source, number));
            }
            header_seen = true;
            continue;
        }
        const auto cells = detail::split(line);
        const auto value = cells.size() == 2 ? detail::parse_int<std::int64_t>(cells[0]) : std::nullopt;
        const auto count = cells.size() == 2 ? detail::parse_int<std::uint64_t>(cells[1]) : std::nullopt;
        if (!value || !count) {
            throw IngestError(fmt::format("{}:{}: expected 'l1,count' integers", source, number));
        }
        counts[*value] += *count;
    }
    if (!n_teams) {
        throw IngestError(fmt::format("{}: missing '# n_teams=' header line", source));
    }
    try {
        return DiscrepancyDistribution::from_counts(*n_teams, std::move(counts));
    } catch (const InvalidInput& e) {
        throw IngestError(fmt::format("{}: {}", source, e.what()));
    }
}

std::string summary_json(const DiscrepancyDistribution& dist, const OutputHeader& header) {
    nlohmann::ordered_json doc;
    for (const auto& [key, value] : header) {
        doc[key] = value;
    }
    doc["n_teams"] = dist.n_teams();
    doc["n_samples"] = dist.n_samples();
    doc["mean"] = dist.mean();
    doc["standard_error"] = dist.standard_error();
    doc["median"] = dist.median();
    const auto q = dist.quantiles();
    doc["quantiles"] = {{"p5", q[0]}, {"p25", q[1]}, {"p75", q[2]}, {"p95", q[3]}};
    return doc.dump(2) + "\n";
}

std::string comparison_json(const ComparisonSummary& s) {
    nlohmann::ordered_json doc;
    doc["mean_delta"] = s.mean_delta;
    doc["mean_delta_standard_error"] = s.mean_delta_standard_error;
    doc["median_delta"] = s.median_delta;
    doc["quantile_deltas"] = {{"p5", s.quantile_deltas[0]},
                              {"p25", s.quantile_deltas[1]},
                              {"p75", s.quantile_deltas[2]},
                              {"p95", s.quantile_deltas[3]}};
    doc["dominance"] = s.dominance_holds ? "holds" : "fails";
    if (s.first_violation) {
        doc["first_violation"] = *s.first_violation;
    }
    return doc.dump(2) + "\n";
}

}  // namespace tourney
