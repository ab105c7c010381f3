#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "tourney/error.hpp"
#include "tourney/ranking.hpp"

using namespace tourney;

namespace {

Ranking random_ranking(std::size_t n, std::mt19937_64& gen) {
    std::vector<int> places(n);
    std::iota(places.begin(), places.end(), 1);
    std::shuffle(places.begin(), places.end(), gen);
    return Ranking::from_places(places);
}

}  // namespace

TEST_CASE("ranking construction validates permutations") {
    CHECK_NOTHROW(Ranking::from_places({2, 1, 3}));
    CHECK_THROWS_AS(Ranking::from_places({1, 1, 3}), InvalidInput);
    CHECK_THROWS_AS(Ranking::from_places({0, 1, 2}), InvalidInput);
    CHECK_THROWS_AS(Ranking::from_places({1, 2, 4}), InvalidInput);
    const std::vector<TeamId> order{TeamId{2}, TeamId{0}, TeamId{1}};
    const auto r = Ranking::from_order(order);
    CHECK(r.place(TeamId{2}) == 1);
    CHECK(r.place(TeamId{0}) == 2);
    CHECK(r.order() == order);
    const std::vector<TeamId> dup{TeamId{0}, TeamId{0}, TeamId{1}};
    CHECK_THROWS_AS(Ranking::from_order(dup), InvalidInput);
}

TEST_CASE("l1 examples") {
    const auto actual = Ranking::from_places({1, 2, 3, 4, 5, 6, 7, 8});
    const auto continuous = Ranking::from_places({2, 1, 5, 4, 6, 8, 3, 7});
    CHECK(l1_distance(actual, continuous) == 12);
    CHECK(l1_distance(continuous, continuous) == 0);
    const auto reversed = Ranking::from_places({8, 7, 6, 5, 4, 3, 2, 1});
    CHECK(l1_distance(actual, reversed) == 32);
    CHECK(max_l1_distance(8) == 32);
    CHECK_THROWS_AS(l1_distance(actual, Ranking::from_places({1, 2})), InvalidComparison);
}

TEST_CASE("l1 metric properties over random permutations") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + trial % 11;
        const auto a = random_ranking(n, gen);
        const auto b = random_ranking(n, gen);
        const auto c = random_ranking(n, gen);
        const auto ab = l1_distance(a, b);
        CHECK(ab >= 0);
        CHECK(ab % 2 == 0);
        CHECK(ab <= max_l1_distance(n));
        CHECK(ab == l1_distance(b, a));
        CHECK((ab == 0) == (a == b));
        CHECK(ab <= l1_distance(a, c) + l1_distance(c, b));

        // Relabel teams by the same permutation in both rankings.
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<int> pa(n);
        std::vector<int> pb(n);
        for (std::size_t i = 0; i < n; ++i) {
            pa[perm[i]] = a.places()[i];
            pb[perm[i]] = b.places()[i];
        }
        CHECK(l1_distance(Ranking::from_places(pa), Ranking::from_places(pb)) == ab);
    }
}

TEST_CASE("max l1 is attained by reversal") {
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<int> fwd(n);
        std::vector<int> rev(n);
        for (std::size_t i = 0; i < n; ++i) {
            fwd[i] = static_cast<int>(i + 1);
            rev[i] = static_cast<int>(n - i);
        }
        CHECK(l1_distance(Ranking::from_places(fwd), Ranking::from_places(rev)) == max_l1_distance(n));
    }
}

TEST_CASE("format and parse rankings") {
    const auto teams = testing::letters(3);
    const auto r = Ranking::from_places({3, 1, 2});
    CHECK(format_ranking(r, teams) == "B,C,A");
    CHECK(parse_ranking("B, C, A", teams) == r);
    CHECK_THROWS(parse_ranking("B,C", teams));
    CHECK_THROWS(parse_ranking("B,C,Z", teams));
    CHECK_THROWS(parse_ranking("B,B,A", teams));
}
