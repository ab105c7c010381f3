#include "tourney/fixtures.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "tourney/error.hpp"
#include "tourney/scoring.hpp"

namespace tourney {

namespace {

PairwiseGoalModel placeholder_model() {
    return PairwiseGoalModel(Roster({"a", "b"}), SquareMatrix<double>(2, 0.0));
}

template <typename T>
std::vector<T> column(const nlohmann::json& doc, const char* key, std::size_t n, const std::string& source) {
    if (!doc.contains(key)) {
        return {};
    }
    auto values = doc.at(key).get<std::vector<T>>();
    if (values.size() != n) {
        throw IngestError(fmt::format("{}: '{}' has {} entries, expected {}", source, key, values.size(), n));
    }
    return values;
}

}  // namespace

FixtureSet load_fixture(const std::filesystem::path& manifest) {
    const auto source = manifest.string();
    std::ifstream in(manifest);
    if (!in) {
        throw IngestError(fmt::format("{}: cannot open file", source));
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(fmt::format("{}: {}", source, e.what()));
    }

    const auto dir = manifest.parent_path();
    FixtureSet f{.model_id = {}, .goals = placeholder_model(), .points = {}, .combined = {}, .games_per_pair = 1000,
                 .published = {}, .rankings = {}, .playoff_winners = {}, .distances = {}};
    try {
        f.model_id = doc.at("model_id").get<std::string>();
        f.goals = load_model_file(dir / doc.at("goals_table").get<std::string>());
        f.goals.id = f.model_id;
        f.points = read_pair_table_file(dir / doc.at("points_table").get<std::string>());
        f.combined = read_pair_table_file(dir / doc.at("combined_table").get<std::string>());
        f.games_per_pair = doc.value("games_per_pair", std::uint64_t{1000});

        const auto names = doc.at("teams").get<std::vector<std::string>>();
        if (names != f.goals.teams().names() || names != f.points.teams.names() ||
            names != f.combined.teams.names()) {
            throw IngestError(fmt::format("{}: team list differs between manifest and tables", source));
        }
        const auto n = names.size();

        const auto& pub = doc.at("published");
        f.published.continuous_points = column<double>(pub, "continuous_points", n, source);
        f.published.raw_goal_difference = column<double>(pub, "raw_goal_difference", n, source);
        f.published.discrete_points = column<int>(pub, "discrete_points", n, source);
        f.published.combined_points = column<int>(pub, "combined_points", n, source);
        f.published.combined_preliminary_rank = column<int>(pub, "combined_preliminary_rank", n, source);
        if (pub.contains("tiebreak_goal_difference")) {
            f.published.tiebreak_goal_difference =
                pub.at("tiebreak_goal_difference").get<std::map<std::string, int>>();
        }

        for (const auto& [key, places] : doc.at("rankings").items()) {
            auto p = places.get<std::vector<int>>();
            if (p.size() != n) {
                throw IngestError(fmt::format("{}: ranking '{}' has {} places, expected {}", source, key, p.size(), n));
            }
            f.rankings.emplace(key, Ranking::from_places(std::move(p)));
        }
        if (doc.contains("playoff_winners")) {
            for (const auto& [key, name] : doc.at("playoff_winners").items()) {
                const auto dash = key.find('-');
                const int upper = std::stoi(key.substr(0, dash));
                f.playoff_winners.push_back({upper, f.teams().at(name.get<std::string>())});
            }
        }
        for (const auto& d : doc.value("distances", nlohmann::json::array())) {
            f.distances.push_back(
                {d.at("a").get<std::string>(), d.at("b").get<std::string>(), d.at("expected").get<std::int64_t>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(fmt::format("{}: {}", source, e.what()));
    } catch (const InvalidInput& e) {
        throw IngestError(fmt::format("{}: {}", source, e.what()));
    }
    return f;
}

namespace {

template <typename Expected, typename Actual, typename Close>
GoldenCheck column_check(std::string name, const Roster& teams, const std::vector<Expected>& expected,
                         const Actual& actual, Close close, int decimals) {
    GoldenCheck c{std::move(name), true, {}};
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (!close(expected[i], actual(i))) {
            bad.push_back(i);
        }
    }
    if (!bad.empty()) {
        c.passed = false;
        for (const auto i : bad) {
            c.detail += fmt::format("{}{}: expected {:.{}f}, got {:.{}f}", c.detail.empty() ? "" : "; ",
                                    teams.names()[i], static_cast<double>(expected[i]), decimals,
                                    static_cast<double>(actual(i)), decimals);
        }
    } else {
        c.detail = fmt::format("{} teams match", expected.size());
    }
    return c;
}

GoldenCheck ranking_check(std::string name, const Roster& teams, const Ranking& expected, const Ranking& actual) {
    GoldenCheck c{std::move(name), expected == actual, {}};
    c.detail = c.passed ? format_ranking(actual, teams)
                        : fmt::format("expected {}, got {}", format_ranking(expected, teams),
                                      format_ranking(actual, teams));
    return c;
}

}  // namespace

std::vector<GoldenCheck> golden_checks(const FixtureSet& f) {
    std::vector<GoldenCheck> checks;
    const auto& teams = f.teams();
    const auto n = teams.size();
    const auto& pub = f.published;
    const TieBreakPolicy policy;
    auto ranking = [&](const std::string& key) -> const Ranking* {
        const auto it = f.rankings.find(key);
        return it == f.rankings.end() ? nullptr : &it->second;
    };
    auto guarded = [&](const std::string& name, auto body) {
        try {
            body();
        } catch (const std::exception& e) {
            checks.push_back({name, false, e.what()});
        }
    };
    const auto& id = f.model_id;

    guarded(id + " discrete points", [&] {
        const auto st = discrete_standings(n, pair_averages(f.goals, nullptr, f.games_per_pair));
        if (!pub.discrete_points.empty()) {
            checks.push_back(column_check(
                id + " discrete points", teams, pub.discrete_points, [&](std::size_t i) { return st.teams[i].points; },
                [](int e, double a) { return static_cast<double>(e) == a; }, 0));
        }
        if (const auto* expected = ranking("discrete")) {
            checks.push_back(ranking_check(id + " discrete ranking", teams, *expected, rank(st, policy)));
        }
    });

    guarded(id + " raw goal difference", [&] {
        const auto st = continuous_standings(n, pair_averages(f.goals, &f.points, f.games_per_pair));
        if (!pub.raw_goal_difference.empty()) {
            checks.push_back(column_check(
                id + " raw goal difference", teams, pub.raw_goal_difference,
                [&](std::size_t i) { return st.teams[i].goal_difference(); },
                [](double e, double a) { return std::abs(e - a) <= 0.05 + 1e-9; }, 1));
        }
        if (!pub.tiebreak_goal_difference.empty()) {
            GoldenCheck c{id + " tie-break goal difference", true, {}};
            for (const auto& [name, expected] : pub.tiebreak_goal_difference) {
                const auto t = teams.at(name);
                const auto got = static_cast<int>(std::round(st.teams[t.index].goal_difference()));
                c.passed = c.passed && got == expected;
                c.detail += fmt::format("{}{} {:+d} (expected {:+d})", c.detail.empty() ? "" : "; ", name, got,
                                        expected);
            }
            checks.push_back(std::move(c));
        }
        if (!pub.continuous_points.empty()) {
            checks.push_back(column_check(
                id + " continuous points", teams, pub.continuous_points,
                [&](std::size_t i) { return st.teams[i].points; },
                [](double e, double a) { return std::abs(e - a) <= 5e-4; }, 3));
        }
        if (const auto* expected = ranking("continuous")) {
            checks.push_back(ranking_check(id + " continuous ranking", teams, *expected, rank(st, policy)));
        }
    });

    guarded(id + " proposed-format replay", [&] {
        const auto replay = rank_from_fixed_results(f.combined, policy, f.playoff_winners);
        if (!pub.combined_points.empty()) {
            checks.push_back(column_check(
                id + " preliminary round-robin points", teams, pub.combined_points,
                [&](std::size_t i) { return replay.preliminary_standings.teams[i].points; },
                [](int e, double a) { return static_cast<double>(e) == a; }, 0));
        }
        if (!pub.combined_preliminary_rank.empty()) {
            checks.push_back(ranking_check(id + " preliminary round-robin ranking", teams,
                                           Ranking::from_places(pub.combined_preliminary_rank), replay.preliminary));
        }
        if (const auto* expected = ranking("proposed")) {
            checks.push_back(ranking_check(id + " proposed-format ranking", teams, *expected, replay.final));
        }
    });

    for (const auto& d : f.distances) {
        const auto name = fmt::format("{} L1({}, {})", id, d.a, d.b);
        const auto* a = ranking(d.a);
        const auto* b = ranking(d.b);
        if (a == nullptr || b == nullptr) {
            checks.push_back({name, false, "ranking missing from fixture", true});
            continue;
        }
        const auto got = l1_distance(*a, *b);
        checks.push_back({name, got == d.expected, fmt::format("expected {}, got {}", d.expected, got), true});
    }
    return checks;
}

}  // namespace tourney
