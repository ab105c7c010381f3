#include "tourney/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tourney/campaign.hpp"
#include "tourney/error.hpp"
#include "tourney/fixtures.hpp"
#include "tourney/formats.hpp"
#include "tourney/scoring.hpp"

#ifndef TOURNEY_VERSION
#define TOURNEY_VERSION "0.0.0"
#endif
#ifndef TOURNEY_DATA_DIR
#define TOURNEY_DATA_DIR "data"
#endif

namespace tourney::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string model;
    std::string pool;
    std::uint64_t seed = kDefaultSeed;
    std::string out;

    // rank
    std::string scheme = "continuous";
    std::string points;
    std::uint32_t games_per_pair = kTruthGamesPerPair;

    // simulate / campaign
    std::vector<std::string> formats;
    std::string config;
    bool best_of_three = false;
    std::uint64_t n = 10000;

    // compare
    std::string hist_a;
    std::string hist_b;

    std::string data_dir = TOURNEY_DATA_DIR;
};

/// Relative model paths that do not exist are also looked up in the bundled
/// data directory, so `rank --model robocup2012.csv` works from anywhere.
fs::path resolve_data_path(const std::string& given, const std::string& data_dir) {
    fs::path p(given);
    if (!fs::exists(p) && p.is_relative() && fs::exists(fs::path(data_dir) / p)) {
        return fs::path(data_dir) / p;
    }
    return p;
}

struct LoadedModel {
    PairwiseGoalModel model;
    fs::path path;
    std::shared_ptr<const GameSampler> sampler;
};

LoadedModel load_inputs(const Options& o) {
    const auto path = resolve_data_path(o.model, o.data_dir);
    auto model = load_model_file(path);
    std::shared_ptr<const GameSampler> sampler;
    if (!o.pool.empty()) {
        std::ifstream in(o.pool);
        if (!in) {
            throw IngestError(fmt::format("{}: cannot open file", o.pool));
        }
        const auto games = read_game_pool(in, model.teams(), o.pool);
        sampler = std::make_shared<EmpiricalPoolSampler>(model.size(), games);
    } else {
        sampler = std::make_shared<PoissonSampler>(model);
    }
    return {std::move(model), path, std::move(sampler)};
}

OutputHeader base_header(std::string_view command, const LoadedModel* m, std::uint64_t seed) {
    OutputHeader h{{"command", std::string(command)}};
    if (m != nullptr) {
        h.emplace_back("model", m->model.id);
        h.emplace_back("sampler", std::string(m->sampler->backend()));
    }
    h.emplace_back("seed", std::to_string(seed));
    h.emplace_back("version", TOURNEY_VERSION);
    return h;
}

/// Writes to --out when given, else to `out`.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& body) {
    if (path.empty()) {
        body(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IngestError(fmt::format("{}: cannot open for writing", path));
    }
    body(file);
}

std::vector<AverageResult> averages_from_ledger(std::size_t n, std::span<const LedgerEntry> ledger,
                                                std::uint64_t games_per_pair) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<GameResult>> by_pair;
    for (const auto& e : ledger) {
        by_pair[{e.game.home.index, e.game.away.index}].push_back(e.game);
    }
    std::vector<AverageResult> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto avg = average_results(by_pair.at({i, j}));
            avg.games_counted = games_per_pair;
            out.push_back(avg);
        }
    }
    return out;
}

int cmd_rank(const Options& o, std::ostream& out) {
    const auto m = load_inputs(o);
    const auto scheme = parse_scheme(o.scheme);
    const auto n = m.model.size();
    auto header = base_header("rank", &m, o.seed);
    header.emplace_back("scheme", std::string(to_string(scheme)));

    std::optional<Standings> standings;
    if (scheme == Scheme::discrete) {
        standings = discrete_standings(n, pair_averages(m.model, nullptr, o.games_per_pair));
        header.emplace_back("points_source", "rounded_goal_means");
    } else {
        fs::path points_path = o.points;
        if (points_path.empty()) {
            auto sibling = m.path;
            sibling.replace_filename(m.path.stem().string() + "_points.csv");
            if (fs::exists(sibling)) {
                points_path = sibling;
            }
        }
        if (!points_path.empty()) {
            const auto points = read_pair_table_file(resolve_data_path(points_path.string(), o.data_dir));
            if (points.teams != m.model.teams()) {
                throw IngestError(fmt::format("{}: team list differs from {}", points_path.string(), m.path.string()));
            }
            standings = continuous_standings(n, pair_averages(m.model, &points, o.games_per_pair));
            header.emplace_back("points_source", points_path.filename().string());
        } else {
            // No per-pair points on record: estimate them with an oracle run.
            auto rng = Rng::stream(o.seed, 0, stream_domain::cli);
            const auto outcome =
                run_iterated_round_robin(*m.sampler, o.games_per_pair, Scheme::continuous, TieBreakPolicy{}, rng);
            standings = continuous_standings(n, averages_from_ledger(n, outcome.ledger, o.games_per_pair));
            header.emplace_back("points_source", fmt::format("oracle(games_per_pair={})", o.games_per_pair));
        }
    }

    const auto ranking = rank(*standings, TieBreakPolicy{});
    const int point_decimals = scheme == Scheme::discrete ? 0 : 3;
    const int goal_decimals = scheme == Scheme::discrete ? 0 : m.model.decimals();
    emit(o.out, out, [&](std::ostream& s) {
        write_header(s, header);
        s << "team,points,goals_for,goals_against,goal_diff,raw_goal_diff,rank\n";
        for (std::size_t i = 0; i < n; ++i) {
            const auto& r = standings->teams[i];
            double raw = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    raw += m.model.matrix()(i, j) - m.model.matrix()(j, i);
                }
            }
            s << fmt::format("{},{:.{}f},{:.{}f},{:.{}f},{:+.{}f},{:+.{}f},{}\n", m.model.teams().names()[i],
                             r.points, point_decimals, r.goals_for, goal_decimals, r.goals_against, goal_decimals,
                             r.goal_difference(), goal_decimals, raw, m.model.decimals(),
                             ranking.place(TeamId{i}));
        }
    });
    return kOk;
}

FormatSpec format_from_options(const Options& o, const std::string& kind, const Roster& teams) {
    FormatSpec spec;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) {
            throw IngestError(fmt::format("{}: cannot open file", o.config));
        }
        std::stringstream text;
        text << in.rdbuf();
        spec = parse_format_spec(text.str(), teams);
    }
    if (!kind.empty()) {
        spec.kind = parse_format_kind(kind);
    }
    if (o.best_of_three) {
        spec.best_of_three = true;
    }
    return spec;
}

void apply_cli_overrides(FormatSpec& spec, const Options& o, const CLI::App& sub) {
    if (sub.count("--games-per-pair") > 0) {
        spec.games_per_pair = o.games_per_pair;
    }
    if (sub.count("--scheme") > 0) {
        spec.scheme = parse_scheme(o.scheme);
    }
}

void describe_format(OutputHeader& h, const FormatSpec& spec) {
    h.emplace_back("format", std::string(to_string(spec.kind)));
    if (spec.kind == FormatKind::iterated_round_robin) {
        h.emplace_back("games_per_pair", std::to_string(spec.games_per_pair));
        h.emplace_back("scheme", std::string(to_string(spec.scheme)));
    }
    if (spec.kind == FormatKind::proposed) {
        h.emplace_back("best_of_three", spec.best_of_three ? "true" : "false");
    }
}

int cmd_simulate(const Options& o, const CLI::App& sub, std::ostream& out) {
    const auto m = load_inputs(o);
    auto spec = format_from_options(o, o.formats.empty() ? std::string{} : o.formats.front(), m.model.teams());
    apply_cli_overrides(spec, o, sub);
    Ranking truth;
    if (spec.seeding.empty()) {
        truth = ground_truth(*m.sampler, o.seed);
        spec.seeding = truth.order();
    }
    validate(spec, m.model.size());
    // Same stream as tournament 0 of a campaign with this seed.
    auto rng = Rng::stream(o.seed, 0, stream_domain::tournament);
    const auto outcome = run_format(spec, *m.sampler, rng);

    auto header = base_header("simulate", &m, o.seed);
    describe_format(header, spec);
    header.emplace_back("seeding", format_ranking(Ranking::from_order(spec.seeding), m.model.teams()));
    header.emplace_back("games_total", std::to_string(outcome.games_total));
    write_header(out, header);
    out << "place,team\n";
    const auto order = outcome.ranking.order();
    for (std::size_t k = 0; k < order.size(); ++k) {
        out << (k + 1) << ',' << m.model.teams().name(order[k]) << '\n';
    }
    if (!o.out.empty()) {
        emit(o.out, out, [&](std::ostream& s) {
            write_header(s, header);
            write_ledger(s, outcome.ledger, m.model.teams());
        });
    }
    return kOk;
}

int cmd_campaign(const Options& o, const CLI::App& sub, std::ostream& out) {
    const auto m = load_inputs(o);
    const auto truth = ground_truth(*m.sampler, o.seed);
    std::vector<std::string> kinds = o.formats;
    if (kinds.empty()) {
        kinds = {"f2012", "f2013", "proposed"};
    }
    const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
    fs::create_directories(dir);

    auto header = base_header("campaign", &m, o.seed);
    header.emplace_back("truth", format_ranking(truth, m.model.teams()));
    header.emplace_back("truth_source", fmt::format("oracle(games_per_pair={},scheme=continuous)", kTruthGamesPerPair));
    header.emplace_back("n_tournaments", std::to_string(o.n));
    write_header(out, header);
    out << "format,n_samples,mean,standard_error,median,p5,p25,p75,p95\n";

    for (const auto& kind : kinds) {
        auto spec = format_from_options(o, kind, m.model.teams());
        apply_cli_overrides(spec, o, sub);
        if (spec.seeding.empty()) {
            spec.seeding = truth.order();
        }
        CampaignSpec cs{spec, m.sampler, o.n, truth, o.seed};
        const auto dist = run_campaign(cs);

        auto file_header = header;
        describe_format(file_header, spec);
        const auto stem = fmt::format("{}_{}", m.model.id, to_string(spec.kind));
        emit((dir / (stem + "_hist.csv")).string(), out,
             [&](std::ostream& s) { write_histogram(s, dist, file_header); });
        emit((dir / (stem + "_summary.json")).string(), out,
             [&](std::ostream& s) { s << summary_json(dist, file_header); });

        const auto q = dist.quantiles();
        out << fmt::format("{},{},{:.4f},{:.4f},{},{},{},{},{}\n", to_string(spec.kind), dist.n_samples(),
                           dist.mean(), dist.standard_error(), dist.median(), q[0], q[1], q[2], q[3]);
    }
    return kOk;
}

DiscrepancyDistribution read_histogram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError(fmt::format("{}: cannot open file", path));
    }
    return read_histogram(in, path);
}

int cmd_compare(const Options& o, std::ostream& out) {
    const auto a = read_histogram_file(o.hist_a);
    const auto b = read_histogram_file(o.hist_b);
    const auto summary = compare_campaigns(a, b);
    emit(o.out, out, [&](std::ostream& s) { s << comparison_json(summary); });
    return kOk;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
    std::vector<GoldenCheck> checks;
    for (const auto& name : kBundledManifests) {
        const auto fixture = load_fixture(fs::path(o.data_dir) / name);
        auto c = golden_checks(fixture);
        checks.insert(checks.end(), c.begin(), c.end());
    }
    std::size_t failed = 0;
    std::size_t distances = 0;
    emit(o.out, out, [&](std::ostream& s) {
        write_header(s, base_header("reproduce", nullptr, o.seed));
        s << "status,check,detail\n";
        for (const auto& c : checks) {
            failed += c.passed ? 0 : 1;
            distances += c.is_distance ? 1 : 0;
            s << fmt::format("{},{},\"{}\"\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
        }
        s << fmt::format("# checks={} failed={} l1_checks={}\n", checks.size(), failed, distances);
    });
    return failed == 0 ? kOk : kGoldenFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Tournament format evaluation against a pairwise goal model", "tourney_eval"};
    app.set_version_flag("--version", TOURNEY_VERSION);
    app.require_subcommand(1);

    auto add_seed = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    };
    auto add_model = [&](CLI::App* s) {
        s->add_option("--model", o.model, "Goal-means table (CSV)")->required();
        s->add_option("--pool", o.pool, "Sample from a recorded game log instead of the Poisson model");
        s->add_option("--data-dir", o.data_dir, "Fallback directory for relative data paths")->capture_default_str();
    };
    const std::vector<std::string> schemes{"continuous", "discrete"};
    const std::vector<std::string> kinds{"oracle", "f2012", "f2013", "proposed"};

    auto* rank_cmd = app.add_subcommand("rank", "Rank teams from a goal-means table");
    add_model(rank_cmd);
    rank_cmd->add_option("--scheme", o.scheme)->check(CLI::IsMember(schemes))->capture_default_str();
    rank_cmd->add_option("--points", o.points, "Per-pair average points table (CSV)");
    rank_cmd->add_option("--games-per-pair", o.games_per_pair, "Games per pair behind the means")->capture_default_str();
    rank_cmd->add_option("--out", o.out, "Write the table here instead of stdout");
    add_seed(rank_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "Run one tournament");
    add_model(sim_cmd);
    sim_cmd->add_option("--format", o.formats)->check(CLI::IsMember(kinds))->expected(1);
    sim_cmd->add_option("--config", o.config, "Format spec (JSON)");
    sim_cmd->add_option("--games-per-pair", o.games_per_pair);
    sim_cmd->add_option("--scheme", o.scheme)->check(CLI::IsMember(schemes));
    sim_cmd->add_flag("--best-of-three", o.best_of_three);
    sim_cmd->add_option("--out", o.out, "Write the game ledger here");
    add_seed(sim_cmd);

    auto* camp_cmd = app.add_subcommand("campaign", "Monte Carlo discrepancy campaign");
    add_model(camp_cmd);
    camp_cmd->add_option("--format", o.formats, "Repeatable; default f2012, f2013, proposed")
        ->check(CLI::IsMember(kinds));
    camp_cmd->add_option("--config", o.config, "Format spec (JSON)");
    camp_cmd->add_option("--games-per-pair", o.games_per_pair);
    camp_cmd->add_option("--scheme", o.scheme)->check(CLI::IsMember(schemes));
    camp_cmd->add_flag("--best-of-three", o.best_of_three);
    camp_cmd->add_option("--n", o.n, "Tournaments per format")->check(CLI::PositiveNumber)->capture_default_str();
    camp_cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    add_seed(camp_cmd);

    auto* cmp_cmd = app.add_subcommand("compare", "Compare two campaign histograms (b minus a)");
    cmp_cmd->add_option("a", o.hist_a)->required();
    cmp_cmd->add_option("b", o.hist_b)->required();
    cmp_cmd->add_option("--out", o.out);

    auto* rep_cmd = app.add_subcommand("reproduce", "Check the bundled fixtures against published values");
    rep_cmd->add_option("--data-dir", o.data_dir)->capture_default_str();
    rep_cmd->add_option("--out", o.out);
    add_seed(rep_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*rank_cmd) return cmd_rank(o, out);
        if (*sim_cmd) return cmd_simulate(o, *sim_cmd, out);
        if (*camp_cmd) return cmd_campaign(o, *camp_cmd, out);
        if (*cmp_cmd) return cmd_compare(o, out);
        if (*rep_cmd) return cmd_reproduce(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsage;
}

}  // namespace tourney::cli
