#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tourney/error.hpp"
#include "tourney/formats.hpp"
#include "tourney/scoring.hpp"

using namespace tourney;

namespace {

struct Fixture {
    PairwiseGoalModel goals;
    PairTable points;
};

Fixture load(const std::string& year) {
    return {load_model_file(testing::data_path("robocup" + year + ".csv")),
            read_pair_table_file(testing::data_path("robocup" + year + "_points.csv"))};
}

std::vector<int> int_points(const Standings& s) {
    std::vector<int> out;
    for (const auto& t : s.teams) {
        out.push_back(static_cast<int>(t.points));
    }
    return out;
}

/// Entries of `all` that involve `team`.
std::vector<AverageResult> involving(TeamId team, const std::vector<AverageResult>& all) {
    std::vector<AverageResult> out;
    for (const auto& a : all) {
        if (a.team == team || a.opponent == team) {
            out.push_back(a);
        }
    }
    return out;
}

double points_of(const Roster& teams, const char* name, const std::vector<AverageResult>& all) {
    const auto t = teams.at(name);
    return continuous_points(t, teams.size(), involving(t, all));
}

}  // namespace

TEST_CASE("points per game") {
    const TeamId a{0};
    const TeamId b{1};
    CHECK(points_per_game({a, b, 2, 1}) == GamePoints{3, 0});
    CHECK(points_per_game({a, b, 0, 0}) == GamePoints{1, 1});
    CHECK(points_per_game({a, b, 1, 4}) == GamePoints{0, 3});
}

TEST_CASE("discretize pair") {
    auto avg = [](double f, double a) { return AverageResult{TeamId{0}, TeamId{1}, f, a, 0, 0, 1}; };
    auto check = [](const GameResult& g, std::uint32_t h, std::uint32_t w) {
        CHECK(g.home_goals == h);
        CHECK(g.away_goals == w);
    };
    check(discretize_pair(avg(1.9, 1.2)), 2, 1);
    check(discretize_pair(avg(0.46, 0.56)), 0, 1);
    check(discretize_pair(avg(0.5, 0.5)), 1, 1);
    check(discretize_pair(avg(2.5, 1.49)), 3, 1);
    CHECK(round_goals(0.0) == 0);
}

TEST_CASE("continuous points from the published per-pair averages") {
    const auto f12 = load("2012");
    const auto avgs = pair_averages(f12.goals, &f12.points, 1000);
    const auto& teams = f12.goals.teams();
    CHECK(std::abs(points_of(teams, "Wright", avgs) - 18.899) <= 5e-4);
    CHECK(std::abs(points_of(teams, "AUT", avgs) - 0.377) <= 5e-4);
    CHECK(std::abs(points_of(teams, "Helios", avgs) - 18.152) <= 5e-4);

    const auto f13 = load("2013");
    const auto st = continuous_standings(8, pair_averages(f13.goals, &f13.points, 1000));
    CHECK(std::abs(st.teams[f13.goals.teams().at("Wright").index].points - 18.308) <= 5e-4);
    CHECK(std::abs(st.teams[f13.goals.teams().at("Helios").index].points - 16.937) <= 5e-4);
    const auto r = rank(st, TieBreakPolicy{});
    CHECK(r.place(f13.goals.teams().at("Oxsy")) == 3);
    CHECK(r.place(f13.goals.teams().at("Yushan")) == 4);
}

TEST_CASE("continuous points require a complete round-robin") {
    const auto f12 = load("2012");
    auto avgs = pair_averages(f12.goals, &f12.points, 1000);
    avgs.pop_back();
    CHECK_THROWS_AS(continuous_standings(8, avgs), IncompleteRoundRobin);
    CHECK_THROWS_AS(continuous_points(TeamId{7}, 8, involving(TeamId{7}, avgs)), IncompleteRoundRobin);
    CHECK_THROWS_AS(continuous_points(TeamId{7}, 8, avgs), InvalidInput);
    CHECK_THROWS_AS(discrete_standings(8, avgs), IncompleteRoundRobin);
}

TEST_CASE("winning every game gives 3(n-1)") {
    const auto model = testing::dominant_team(6);
    Rng rng(1);
    const auto outcome = run_iterated_round_robin(PoissonSampler(model), 20, Scheme::continuous, {}, rng);
    CHECK(outcome.ranking.place(TeamId{0}) == 1);
    std::vector<AverageResult> avgs;
    for (std::size_t j = 1; j < 6; ++j) {
        avgs.push_back({TeamId{0}, TeamId{j}, 60, 0, 3, 0, 20});
    }
    CHECK(continuous_points(TeamId{0}, 6, avgs) == 15.0);
}

TEST_CASE("discrete standings reproduce the published points") {
    const auto f12 = load("2012");
    const auto st12 = discrete_standings(8, pair_averages(f12.goals, nullptr, 1000));
    CHECK(int_points(st12) == std::vector<int>{19, 19, 10, 12, 6, 0, 13, 3});
    const auto r12 = rank(st12, TieBreakPolicy{});
    CHECK(r12.places()[0] == 2);  // Helios
    CHECK(r12.places()[1] == 1);  // Wright
    CHECK(r12 == Ranking::from_places({2, 1, 5, 4, 6, 8, 3, 7}));
    const auto wright = st12.teams[1].goal_difference();
    const auto helios = st12.teams[0].goal_difference();
    CHECK(wright == 39.0);
    CHECK(wright > helios);

    const auto f13 = load("2013");
    const auto st13 = discrete_standings(8, pair_averages(f13.goals, nullptr, 1000));
    CHECK(int_points(st13) == std::vector<int>{21, 18, 11, 1, 7, 11, 1, 10});
    CHECK(rank(st13, TieBreakPolicy{}) == Ranking::from_places({1, 2, 3, 8, 6, 4, 7, 5}));
}

TEST_CASE("two-team forced draw") {
    const std::vector<AverageResult> avgs{{TeamId{0}, TeamId{1}, 1.0, 1.0, 1, 1, 1}};
    const auto st = discrete_standings(2, avgs);
    CHECK(st.teams[0].points == 1.0);
    CHECK(st.teams[1].points == 1.0);
}

TEST_CASE("discrete total points = 3 decisive + 2 drawn") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 9;
        std::vector<AverageResult> avgs;
        int decisive = 0;
        int drawn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                AverageResult a{TeamId{i}, TeamId{j}, u(gen), u(gen), 0, 0, 1};
                const auto g = discretize_pair(a);
                (g.home_goals == g.away_goals ? drawn : decisive) += 1;
                avgs.push_back(a);
            }
        }
        const auto st = discrete_standings(n, avgs);
        double total = 0.0;
        for (const auto& t : st.teams) {
            total += t.points;
        }
        CHECK(total == 3.0 * decisive + 2.0 * drawn);
    }
}

TEST_CASE("continuous points equal the per-game mean when every pair has N games") {
    const auto model = load_model_file(testing::data_path("robocup2013.csv"));
    const PoissonSampler sampler(model);
    constexpr std::uint32_t kN = 50;
    Rng rng(4);
    std::vector<GameResult> all;
    std::vector<AverageResult> avgs;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = i + 1; j < 8; ++j) {
            std::vector<GameResult> pair;
            for (std::uint32_t k = 0; k < kN; ++k) {
                pair.push_back(sampler.sample(TeamId{i}, TeamId{j}, rng));
            }
            avgs.push_back(average_results(pair));
            all.insert(all.end(), pair.begin(), pair.end());
        }
    }
    const auto per_game = tally_games(8, all);
    const auto cont = continuous_standings(8, avgs);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(cont.teams[i].points == doctest::Approx(per_game.teams[i].points / kN));
        CHECK(continuous_points(TeamId{i}, 8, involving(TeamId{i}, avgs)) == doctest::Approx(per_game.teams[i].points / kN));
    }
}

TEST_CASE("rank is invariant under positive rescaling") {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> pts(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 8;
        Standings s(n);
        for (auto& t : s.teams) {
            t.points = pts(gen);
            t.goals_for = pts(gen);
            t.goals_against = pts(gen);
        }
        const auto before = rank(s, TieBreakPolicy{});
        for (auto& t : s.teams) {
            t.points *= 2.75;
        }
        CHECK(rank(s, TieBreakPolicy{}) == before);
    }
}

TEST_CASE("tie-break policy") {
    CHECK_THROWS_AS(TieBreakPolicy({TieBreak::points, TieBreak::points, TieBreak::seed_order}), InvalidInput);
    CHECK_THROWS_AS(TieBreakPolicy({TieBreak::points, TieBreak::goal_difference}), InvalidInput);
    CHECK(parse_tie_break("head_to_head") == TieBreak::head_to_head);
    CHECK(to_string(TieBreak::goals_for) == "goals_for");
    CHECK_THROWS_AS(parse_tie_break("luck"), InvalidInput);

    SUBCASE("identical standings fall back to seed order") {
        const Standings s(4);
        const std::vector<TeamId> seeds{TeamId{2}, TeamId{0}, TeamId{3}, TeamId{1}};
        CHECK(rank(s, TieBreakPolicy{}, seeds).order() == seeds);
        CHECK(rank(s, TieBreakPolicy{}).order() == std::vector<TeamId>{TeamId{0}, TeamId{1}, TeamId{2}, TeamId{3}});
    }
    SUBCASE("criteria apply in order") {
        Standings s(3);
        s.teams[0] = {4, 2, 2, 2};
        s.teams[1] = {4, 5, 1, 2};
        s.teams[2] = {4, 6, 2, 2};
        // Same points; GD 0, +4, +4; GF separates 2 from 1.
        CHECK(rank(s, TieBreakPolicy{}).order() == std::vector<TeamId>{TeamId{2}, TeamId{1}, TeamId{0}});
        CHECK(rank(s, TieBreakPolicy({TieBreak::points, TieBreak::seed_order})).order() ==
              std::vector<TeamId>{TeamId{0}, TeamId{1}, TeamId{2}});
    }
    SUBCASE("head to head among the tied teams only") {
        const TeamId a{0}, b{1}, c{2};
        const std::vector<GameResult> games{{a, b, 0, 1}, {a, c, 1, 0}, {b, c, 0, 1}};
        const auto s = tally_games(3, games);
        const TieBreakPolicy h2h({TieBreak::points, TieBreak::head_to_head, TieBreak::seed_order});
        // Three-way tie on 3 points and each mini-league is 3 points, so seed order decides.
        CHECK(rank(s, h2h).order() == std::vector<TeamId>{a, b, c});
        const std::vector<GameResult> more{{a, b, 1, 1}, {a, c, 2, 0}, {b, c, 3, 0}};
        const auto s2 = tally_games(3, more);
        // a and b both 4 points; draw between them keeps seed order; c last.
        CHECK(rank(s2, h2h).order() == std::vector<TeamId>{a, b, c});
    }
}

TEST_CASE("tally games") {
    const TeamId a{0}, b{1};
    const std::vector<GameResult> games{{a, b, 3, 1}, {b, a, 2, 2}};
    const auto s = tally_games(2, games);
    CHECK(s.teams[0].points == 4);
    CHECK(s.teams[1].points == 1);
    CHECK(s.teams[0].goals_for == 5);
    CHECK(s.teams[0].goals_against == 3);
    CHECK(s.teams[0].games_played == 2);
    CHECK(s.head_to_head(0, 1) == 4);
    CHECK(s.head_to_head(1, 0) == 1);
}
