#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "tourney/error.hpp"
#include "tourney/model.hpp"
#include "tourney/rng.hpp"

using namespace tourney;

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments draw(double lambda, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = rng.poisson(lambda);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    return {mean, (sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1)};
}

}  // namespace

TEST_CASE("poisson mean and variance within 4 SE for lambda <= 16") {
    constexpr std::size_t kDraws = 100000;
    for (const double lambda : {0.05, 0.46, 1.0, 2.3, 4.5, 9.0, 16.0}) {
        CAPTURE(lambda);
        const auto m = draw(lambda, kDraws, 1000 + static_cast<std::uint64_t>(lambda * 100));
        const double se_mean = std::sqrt(lambda / kDraws);
        // Var of the sample variance for Poisson: (mu4 - sigma^4) / n = (lambda + 2 lambda^2) / n.
        const double se_var = std::sqrt((lambda + 2.0 * lambda * lambda) / kDraws);
        CHECK(std::abs(m.mean - lambda) < 4.0 * se_mean);
        CHECK(std::abs(m.variance - lambda) < 4.0 * se_var);
    }
}

TEST_CASE("poisson handles large means by splitting") {
    const auto m = draw(1800.0, 20000, 5);
    CHECK(std::abs(m.mean - 1800.0) < 4.0 * std::sqrt(1800.0 / 20000));
    CHECK(std::abs(m.variance - 1800.0) < 4.0 * std::sqrt((1800.0 + 2.0 * 1800.0 * 1800.0) / 20000));
}

TEST_CASE("poisson zero mean is always zero") {
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) {
        CHECK(rng.poisson(0.0) == 0);
    }
}

TEST_CASE("rng streams are reproducible and distinct") {
    auto a = Rng::stream(42, 7, stream_domain::tournament);
    auto b = Rng::stream(42, 7, stream_domain::tournament);
    auto c = Rng::stream(42, 8, stream_domain::tournament);
    auto d = Rng::stream(42, 7, stream_domain::ground_truth);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
    Rng u(1);
    for (int k = 0; k < 1000; ++k) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("bundled fixtures load") {
    const auto m12 = load_model_file(testing::data_path("robocup2012.csv"));
    CHECK(m12.size() == 8);
    CHECK(m12.id == "robocup2012");
    CHECK(m12.mean_goals(m12.teams().at("Helios"), m12.teams().at("Wright")) == doctest::Approx(2.3));
    const auto m13 = load_model_file(testing::data_path("robocup2013.csv"));
    CHECK(m13.size() == 8);
    CHECK(m13.mean_goals(m13.teams().at("Wright"), m13.teams().at("Helios")) == doctest::Approx(1.9));
}

TEST_CASE("ingestion errors") {
    auto fails_with = [](const std::string& text, const std::string& fragment) {
        std::istringstream in(text);
        try {
            (void)load_model(in, "m.csv");
            FAIL("expected an ingestion error");
        } catch (const IngestError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };
    SUBCASE("empty") { fails_with("", "empty"); }
    SUBCASE("negative cell") { fails_with("team,A,B\nA,,-1\nB,2,\n", "negative"); }
    SUBCASE("unparsable cell names line and column") { fails_with("team,A,B\nA,,x\nB,2,\n", "m.csv:2: row 'A', column 'B'"); }
    SUBCASE("missing cell") { fails_with("team,A,B\nA,,\nB,2,\n", "missing value"); }
    SUBCASE("non-square") { fails_with("team,A,B\nA,,1\n", "non-square"); }
    SUBCASE("short row") { fails_with("team,A,B\nA,,1\nB,2\n", "value cells"); }
    SUBCASE("duplicate team") { fails_with("team,A,A\nA,,1\nA,2,\n", "duplicate"); }
    SUBCASE("row name mismatch") { fails_with("team,A,B\nA,,1\nC,2,\n", "does not match"); }
}

TEST_CASE("model round-trips at declared precision") {
    for (const auto* name : {"robocup2012.csv", "robocup2013.csv"}) {
        const auto model = load_model_file(testing::data_path(name));
        std::ostringstream out;
        write_model(out, model);
        std::istringstream in(out.str());
        const auto again = load_model(in);
        CHECK(again.teams() == model.teams());
        CHECK(again.matrix() == model.matrix());
        std::ostringstream out2;
        write_model(out2, again);
        CHECK(out2.str() == out.str());
    }
}

TEST_CASE("no rounding at ingestion") {
    const auto t = testing::table_from("team,A,B\nA,,0.125\nB,1.0625,\n");
    CHECK(t.values(0, 1) == 0.125);
    CHECK(t.values(1, 0) == 1.0625);
    CHECK(t.decimals == 4);
}

TEST_CASE("sample_game") {
    const auto model = load_model_file(testing::data_path("robocup2012.csv"));
    const auto helios = model.teams().at("Helios");
    const auto wright = model.teams().at("Wright");

    SUBCASE("same pair, same seed, same result") {
        Rng a(99);
        Rng b(99);
        CHECK(sample_game(model, TeamId{0}, TeamId{1}, a) == sample_game(model, TeamId{0}, TeamId{1}, b));
    }
    SUBCASE("a team cannot play itself") {
        Rng rng(1);
        CHECK_THROWS_AS(sample_game(model, helios, helios, rng), InvalidPairing);
        CHECK_THROWS_AS(sample_game(model, helios, TeamId{8}, rng), InvalidPairing);
    }
    SUBCASE("zero rates give 0:0") {
        const PairwiseGoalModel zero(testing::letters(2), SquareMatrix<double>(2, 0.0));
        Rng rng(1);
        for (int k = 0; k < 100; ++k) {
            const auto g = sample_game(zero, TeamId{0}, TeamId{1}, rng);
            CHECK(g.home_goals == 0);
            CHECK(g.away_goals == 0);
        }
    }
    SUBCASE("Helios-Wright means within 3 SE of 2.3 each side") {
        constexpr std::size_t kGames = 100000;
        Rng rng(2012);
        std::vector<GameResult> games;
        for (std::size_t k = 0; k < kGames; ++k) {
            games.push_back(sample_game(model, helios, wright, rng));
        }
        const auto avg = average_results(games);
        const double se = std::sqrt(2.3 / kGames);
        CHECK(avg.games_counted == kGames);
        CHECK(std::abs(avg.mean_for - 2.3) < 3 * se);
        CHECK(std::abs(avg.mean_against - 2.3) < 3 * se);

        const std::span<const GameResult> first(games.data(), 1000);
        const auto small = average_results(first);
        const double se_small = std::sqrt(2.3 / 1000);
        CHECK(std::abs(small.mean_for - 2.3) < 3 * se_small);
        CHECK(std::abs(small.mean_against - 2.3) < 3 * se_small);
    }
}

TEST_CASE("average_results") {
    const TeamId a{0};
    const TeamId b{1};
    SUBCASE("hand example") {
        const std::vector<GameResult> games{{a, b, 2, 1}, {a, b, 0, 1}, {a, b, 1, 1}};
        const auto r = average_results(games);
        CHECK(r.mean_for == 1.0);
        CHECK(r.mean_against == 1.0);
        CHECK(r.games_counted == 3);
        CHECK(r.mean_points_for == doctest::Approx(4.0 / 3.0));
        CHECK(r.mean_points_against == doctest::Approx(4.0 / 3.0));
    }
    SUBCASE("single game") {
        const std::vector<GameResult> games{{a, b, 5, 0}};
        const auto r = average_results(games);
        CHECK(r.mean_for == 5.0);
        CHECK(r.mean_against == 0.0);
    }
    SUBCASE("mixed orientation is folded to the first home team") {
        const std::vector<GameResult> games{{a, b, 2, 0}, {b, a, 3, 1}};
        const auto r = average_results(games);
        CHECK(r.team == a);
        CHECK(r.mean_for == 1.5);
        CHECK(r.mean_against == 1.5);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(average_results({}), InvalidInput);
        const std::vector<GameResult> mixed{{a, b, 1, 0}, {a, TeamId{2}, 1, 0}};
        CHECK_THROWS_AS(average_results(mixed), InvalidInput);
    }
}

TEST_CASE("empirical pool sampler") {
    const auto teams = testing::letters(3);
    std::istringstream in("home,away,home_goals,away_goals\nA,B,2,0\nB,A,1,1\nA,C,0,3\nC,B,4,4\n");
    const auto pool = read_game_pool(in, teams);
    REQUIRE(pool.size() == 4);
    const EmpiricalPoolSampler sampler(3, pool);
    CHECK(sampler.backend() == "empirical_pool");
    Rng rng(5);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (int k = 0; k < 200; ++k) {
        const auto g = sampler.sample(TeamId{1}, TeamId{0}, rng);
        CHECK(g.home == TeamId{1});
        seen.insert({g.home_goals, g.away_goals});
    }
    // A-B games seen from B's side: 0:2 and 1:1.
    CHECK(seen == std::set<std::pair<std::uint32_t, std::uint32_t>>{{0, 2}, {1, 1}});
    const auto g = sampler.sample(TeamId{0}, TeamId{2}, rng);
    CHECK(g.home_goals == 0);
    CHECK(g.away_goals == 3);

    const std::vector<GameResult> incomplete{{TeamId{0}, TeamId{1}, 1, 0}};
    CHECK_THROWS_AS(EmpiricalPoolSampler(3, incomplete), InvalidInput);

    std::istringstream bad("home,away,home_goals,away_goals\nA,Z,1,0\n");
    CHECK_THROWS_AS(read_game_pool(bad, teams), IngestError);
}

TEST_CASE("roster") {
    const Roster r({"x", "y"});
    CHECK(r.find("y") == TeamId{1});
    CHECK_FALSE(r.find("z").has_value());
    CHECK_THROWS_AS(r.at("z"), InvalidInput);
    CHECK_THROWS_AS(Roster({"x", "x"}), InvalidInput);
    CHECK_THROWS_AS(PairwiseGoalModel(testing::letters(1), SquareMatrix<double>(1, 0.0)), InvalidInput);
}
