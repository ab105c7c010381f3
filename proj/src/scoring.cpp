#include "tourney/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "tourney/error.hpp"

namespace tourney {

GamePoints points_per_game(const GameResult& game) {
    if (game.home_goals > game.away_goals) {
        return {kWinPoints, 0};
    }
    if (game.home_goals < game.away_goals) {
        return {0, kWinPoints};
    }
    return {kDrawPoints, kDrawPoints};
}

std::string_view to_string(TieBreak criterion) {
    switch (criterion) {
        case TieBreak::points: return "points";
        case TieBreak::goal_difference: return "goal_difference";
        case TieBreak::goals_for: return "goals_for";
        case TieBreak::head_to_head: return "head_to_head";
        case TieBreak::seed_order: return "seed_order";
    }
    return "?";
}

TieBreak parse_tie_break(std::string_view name) {
    for (auto c : {TieBreak::points, TieBreak::goal_difference, TieBreak::goals_for, TieBreak::head_to_head,
                   TieBreak::seed_order}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw InvalidInput(fmt::format("unknown tie-break criterion '{}'", name));
}

TieBreakPolicy::TieBreakPolicy()
    : criteria_{TieBreak::points, TieBreak::goal_difference, TieBreak::goals_for, TieBreak::seed_order} {}

TieBreakPolicy::TieBreakPolicy(std::vector<TieBreak> criteria) : criteria_(std::move(criteria)) {
    if (criteria_.empty() || criteria_.back() != TieBreak::seed_order) {
        throw InvalidInput("tie-break policy must end with seed_order");
    }
    for (std::size_t i = 0; i < criteria_.size(); ++i) {
        for (std::size_t j = i + 1; j < criteria_.size(); ++j) {
            if (criteria_[i] == criteria_[j]) {
                throw InvalidInput(fmt::format("tie-break criterion '{}' repeated", to_string(criteria_[i])));
            }
        }
    }
}

Standings tally_games(std::size_t n, std::span<const GameResult> games) {
    Standings s(n);
    for (const auto& g : games) {
        if (g.home == g.away || g.home.index >= n || g.away.index >= n) {
            throw InvalidPairing(fmt::format("game {} vs {} is not a valid pairing among {} teams", g.home.index,
                                             g.away.index, n));
        }
        const auto pts = points_per_game(g);
        auto& home = s.teams[g.home.index];
        auto& away = s.teams[g.away.index];
        home.points += pts.home;
        away.points += pts.away;
        home.goals_for += g.home_goals;
        home.goals_against += g.away_goals;
        away.goals_for += g.away_goals;
        away.goals_against += g.home_goals;
        ++home.games_played;
        ++away.games_played;
        s.head_to_head(g.home.index, g.away.index) += pts.home;
        s.head_to_head(g.away.index, g.home.index) += pts.away;
    }
    return s;
}

double continuous_points(TeamId team, std::size_t n, std::span<const AverageResult> averages) {
    std::vector<bool> seen(n, false);
    double total = 0.0;
    for (const auto& a : averages) {
        TeamId opponent;
        double points = 0.0;
        if (a.team == team) {
            opponent = a.opponent;
            points = a.mean_points_for;
        } else if (a.opponent == team) {
            opponent = a.team;
            points = a.mean_points_against;
        } else {
            throw InvalidInput(fmt::format("average for pair ({}, {}) does not involve team {}", a.team.index,
                                           a.opponent.index, team.index));
        }
        if (opponent.index >= n || opponent == team) {
            throw InvalidPairing(fmt::format("invalid opponent {} for team {}", opponent.index, team.index));
        }
        if (seen[opponent.index]) {
            throw IncompleteRoundRobin(fmt::format("opponent {} of team {} listed twice", opponent.index, team.index));
        }
        if (std::isnan(points)) {
            throw InvalidInput("pair averages carry no per-game points");
        }
        seen[opponent.index] = true;
        total += points;
    }
    for (std::size_t o = 0; o < n; ++o) {
        if (o != team.index && !seen[o]) {
            throw IncompleteRoundRobin(fmt::format("team {} has no result against opponent {}", team.index, o));
        }
    }
    return total;
}

std::uint32_t round_goals(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw InvalidInput(fmt::format("mean goals must be finite and nonnegative, got {}", mean));
    }
    // std::round rounds halves away from zero.
    return static_cast<std::uint32_t>(std::round(mean));
}

GameResult discretize_pair(const AverageResult& average) {
    return GameResult{average.team, average.opponent, round_goals(average.mean_for),
                      round_goals(average.mean_against)};
}

namespace {

// Each unordered pair must appear exactly once.
void check_complete(std::size_t n, std::span<const AverageResult> pair_averages) {
    SquareMatrix<int> seen(n, 0);
    for (const auto& a : pair_averages) {
        const auto i = a.team.index;
        const auto j = a.opponent.index;
        if (i >= n || j >= n || i == j) {
            throw InvalidPairing(fmt::format("pair ({}, {}) is not valid among {} teams", i, j, n));
        }
        const auto lo = std::min(i, j);
        const auto hi = std::max(i, j);
        if (++seen(lo, hi) > 1) {
            throw IncompleteRoundRobin(fmt::format("pair ({}, {}) listed more than once", lo, hi));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (seen(i, j) == 0) {
                throw IncompleteRoundRobin(fmt::format("no result for pair ({}, {})", i, j));
            }
        }
    }
}

}  // namespace

Standings continuous_standings(std::size_t n, std::span<const AverageResult> pair_averages) {
    check_complete(n, pair_averages);
    Standings s(n);
    for (const auto& a : pair_averages) {
        if (std::isnan(a.mean_points_for) || std::isnan(a.mean_points_against)) {
            throw InvalidInput("pair averages carry no per-game points");
        }
        auto& t = s.teams[a.team.index];
        auto& o = s.teams[a.opponent.index];
        t.points += a.mean_points_for;
        o.points += a.mean_points_against;
        t.goals_for += a.mean_for;
        t.goals_against += a.mean_against;
        o.goals_for += a.mean_against;
        o.goals_against += a.mean_for;
        t.games_played += a.games_counted;
        o.games_played += a.games_counted;
        s.head_to_head(a.team.index, a.opponent.index) += a.mean_points_for;
        s.head_to_head(a.opponent.index, a.team.index) += a.mean_points_against;
    }
    return s;
}

Standings discrete_standings(std::size_t n, std::span<const AverageResult> pair_averages) {
    check_complete(n, pair_averages);
    std::vector<GameResult> games;
    games.reserve(pair_averages.size());
    for (const auto& a : pair_averages) {
        games.push_back(discretize_pair(a));
    }
    return tally_games(n, games);
}

std::vector<AverageResult> pair_averages(const PairwiseGoalModel& goals, const PairTable* points,
                                         std::uint64_t games_counted) {
    const auto n = goals.size();
    if (points != nullptr && points->teams != goals.teams()) {
        throw InvalidInput("points table and goal model list different teams");
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<AverageResult> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.push_back(AverageResult{TeamId{i}, TeamId{j}, goals.matrix()(i, j), goals.matrix()(j, i),
                                        points ? points->values(i, j) : nan, points ? points->values(j, i) : nan,
                                        games_counted});
        }
    }
    return out;
}

Ranking rank(const Standings& standings, const TieBreakPolicy& policy, std::span<const TeamId> seed_order) {
    const auto n = standings.size();
    std::vector<std::size_t> seed_pos(n);
    if (seed_order.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            seed_pos[i] = i;
        }
    } else {
        // Validates that the seeding is a permutation.
        const auto seeding = Ranking::from_order(seed_order);
        if (seeding.size() != n) {
            throw InvalidInput(fmt::format("seed order lists {} teams, standings have {}", seeding.size(), n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            seed_pos[i] = static_cast<std::size_t>(seeding.place(TeamId{i}) - 1);
        }
    }

    // Refine groups of still-tied teams one criterion at a time; keys are
    // compared exactly, larger is better except for seed position.
    std::vector<std::vector<std::size_t>> groups(1);
    for (std::size_t i = 0; i < n; ++i) {
        groups[0].push_back(i);
    }
    for (const auto criterion : policy.criteria()) {
        std::vector<std::vector<std::size_t>> refined;
        for (auto& group : groups) {
            if (group.size() == 1) {
                refined.push_back(std::move(group));
                continue;
            }
            auto key = [&](std::size_t t) -> double {
                const auto& r = standings.teams[t];
                switch (criterion) {
                    case TieBreak::points: return r.points;
                    case TieBreak::goal_difference: return r.goal_difference();
                    case TieBreak::goals_for: return r.goals_for;
                    case TieBreak::head_to_head: {
                        double sum = 0.0;
                        for (const auto other : group) {
                            if (other != t) {
                                sum += standings.head_to_head(t, other);
                            }
                        }
                        return sum;
                    }
                    case TieBreak::seed_order: return -static_cast<double>(seed_pos[t]);
                }
                return 0.0;
            };
            std::vector<std::pair<double, std::size_t>> keyed;
            for (const auto t : group) {
                keyed.emplace_back(key(t), t);
            }
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            std::vector<std::size_t> current{keyed.front().second};
            for (std::size_t k = 1; k < keyed.size(); ++k) {
                if (keyed[k].first != keyed[k - 1].first) {
                    refined.push_back(std::move(current));
                    current.clear();
                }
                current.push_back(keyed[k].second);
            }
            refined.push_back(std::move(current));
        }
        groups = std::move(refined);
    }

    std::vector<TeamId> order;
    for (const auto& group : groups) {
        for (const auto t : group) {
            order.push_back(TeamId{t});
        }
    }
    return Ranking::from_order(order);
}

void write_standings(std::ostream& out, const Standings& standings, const Ranking& ranking, const Roster& teams,
                     int decimals) {
    out << "team,points,goals_for,goals_against,goal_diff,rank\n";
    for (std::size_t i = 0; i < standings.size(); ++i) {
        const auto& r = standings.teams[i];
        out << fmt::format("{},{:.{}f},{:.{}f},{:.{}f},{:+.{}f},{}\n", teams.names()[i], r.points, decimals,
                           r.goals_for, decimals, r.goals_against, decimals, r.goal_difference(), decimals,
                           ranking.place(TeamId{i}));
    }
}

}  // namespace tourney
