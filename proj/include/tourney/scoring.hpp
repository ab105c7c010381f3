#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "tourney/model.hpp"
#include "tourney/ranking.hpp"

namespace tourney {

inline constexpr int kWinPoints = 3;
inline constexpr int kDrawPoints = 1;

struct GamePoints {
    int home = 0;
    int away = 0;

    friend bool operator==(const GamePoints&, const GamePoints&) = default;
};

/// 3 for a win, 1 for a draw, 0 for a loss.
GamePoints points_per_game(const GameResult& game);

struct TeamRecord {
    double points = 0.0;
    double goals_for = 0.0;
    double goals_against = 0.0;
    std::uint64_t games_played = 0;

    double goal_difference() const { return goals_for - goals_against; }
};

struct Standings {
    explicit Standings(std::size_t n) : teams(n), head_to_head(n, 0.0) {}

    std::size_t size() const { return teams.size(); }

    std::vector<TeamRecord> teams;
    /// head_to_head(i, j): points team i earned against team j.
    SquareMatrix<double> head_to_head;
};

enum class TieBreak { points, goal_difference, goals_for, head_to_head, seed_order };

std::string_view to_string(TieBreak criterion);
/// Throws InvalidInput on an unknown name.
TieBreak parse_tie_break(std::string_view name);

/// Ordered ranking criteria. Always terminates in seed_order so that every
/// standings table ranks to a permutation.
class TieBreakPolicy {
public:
    /// points, goal_difference, goals_for, seed_order
    TieBreakPolicy();
    /// Throws InvalidInput on repeated criteria or when seed_order is not last.
    explicit TieBreakPolicy(std::vector<TieBreak> criteria);

    const std::vector<TieBreak>& criteria() const { return criteria_; }

    friend bool operator==(const TieBreakPolicy&, const TieBreakPolicy&) = default;

private:
    std::vector<TieBreak> criteria_;
};

/// Accumulates points, goals and head-to-head points over a list of games.
Standings tally_games(std::size_t n, std::span<const GameResult> games);

/// Sum over opponents of the mean per-game points `team` earned. Entries may
/// be oriented from either side but must all involve `team`; throws
/// IncompleteRoundRobin unless every opponent appears exactly once.
double continuous_points(TeamId team, std::size_t n, std::span<const AverageResult> averages);

/// Nearest integer, halves away from zero.
std::uint32_t round_goals(double mean);

/// Rounds both means of a pair to a single integer game (team = home).
GameResult discretize_pair(const AverageResult& average);

/// Continuous scheme: points are the summed mean per-game points, goals the
/// raw mean goals. Expects exactly one entry per unordered pair.
Standings continuous_standings(std::size_t n, std::span<const AverageResult> pair_averages);

/// Discrete scheme: each pair's means are rounded to one game which is scored
/// 3/1/0. Goal totals accumulate the rounded values.
Standings discrete_standings(std::size_t n, std::span<const AverageResult> pair_averages);

/// One AverageResult per unordered pair (i < j) built from goal means and,
/// when given, a table of mean per-game points. Without a points table the
/// point fields are NaN and only discrete_standings accepts the result.
std::vector<AverageResult> pair_averages(const PairwiseGoalModel& goals, const PairTable* points,
                                         std::uint64_t games_counted);

/// Orders teams by the policy's criteria, lexicographically, best first.
/// `seed_order` lists teams from highest to lowest seed; empty means index
/// order.
Ranking rank(const Standings& standings, const TieBreakPolicy& policy, std::span<const TeamId> seed_order = {});

/// team,points,goals_for,goals_against,goal_diff,rank in roster order.
void write_standings(std::ostream& out, const Standings& standings, const Ranking& ranking, const Roster& teams,
                     int decimals);

}  // namespace tourney
