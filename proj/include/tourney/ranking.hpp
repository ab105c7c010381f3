#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tourney/model.hpp"

namespace tourney {

/// Assignment of places 1..n to teams; always a permutation.
class Ranking {
public:
    Ranking() = default;

    /// places[i] is the place of team i. Throws InvalidInput unless the
    /// places are exactly a permutation of 1..n.
    static Ranking from_places(std::vector<int> places);
    /// order[k] is the team placed k + 1. Throws InvalidInput unless every
    /// team appears exactly once.
    static Ranking from_order(std::span<const TeamId> order);

    std::size_t size() const { return places_.size(); }
    int place(TeamId team) const { return places_.at(team.index); }
    std::span<const int> places() const { return places_; }
    /// Teams from first to last place.
    std::vector<TeamId> order() const;

    friend bool operator==(const Ranking&, const Ranking&) = default;

private:
    explicit Ranking(std::vector<int> places) : places_(std::move(places)) {}
    std::vector<int> places_;
};

/// Sum over teams of |place in a - place in b| (Spearman footrule).
/// Throws InvalidComparison if the rankings cover different team counts.
std::int64_t l1_distance(const Ranking& a, const Ranking& b);

/// Largest possible l1_distance between two permutations of n teams.
constexpr std::int64_t max_l1_distance(std::size_t n) {
    return static_cast<std::int64_t>(n * n / 2);
}

/// Comma-separated team names from first to last place.
std::string format_ranking(const Ranking& ranking, const Roster& teams);
/// Inverse of format_ranking; every roster team must appear exactly once.
Ranking parse_ranking(std::string_view ordered_names, const Roster& teams);

}  // namespace tourney
