#include "tourney/ranking.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "tourney/detail/text.hpp"
#include "tourney/error.hpp"

namespace tourney {

Ranking Ranking::from_places(std::vector<int> places) {
    const auto n = places.size();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const int p = places[i];
        if (p < 1 || static_cast<std::size_t>(p) > n || used[p - 1]) {
            throw InvalidInput(fmt::format("places do not form a permutation of 1..{} (team {} has place {})", n,
                                           i, p));
        }
        used[p - 1] = true;
    }
    return Ranking(std::move(places));
}

Ranking Ranking::from_order(std::span<const TeamId> order) {
    const auto n = order.size();
    std::vector<int> places(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto t = order[k].index;
        if (t >= n || places[t] != 0) {
            throw InvalidInput(fmt::format("order is not a permutation of {} teams (team {} at position {})", n, t,
                                           k + 1));
        }
        places[t] = static_cast<int>(k + 1);
    }
    return Ranking(std::move(places));
}

std::vector<TeamId> Ranking::order() const {
    std::vector<TeamId> out(places_.size());
    for (std::size_t i = 0; i < places_.size(); ++i) {
        out[places_[i] - 1] = TeamId{i};
    }
    return out;
}

std::int64_t l1_distance(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) {
        throw InvalidComparison(fmt::format("cannot compare rankings of {} and {} teams", a.size(), b.size()));
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total += std::abs(a.places()[i] - b.places()[i]);
    }
    return total;
}

std::string format_ranking(const Ranking& ranking, const Roster& teams) {
    std::string out;
    for (const auto team : ranking.order()) {
        if (!out.empty()) {
            out += ',';
        }
        out += teams.name(team);
    }
    return out;
}

Ranking parse_ranking(std::string_view ordered_names, const Roster& teams) {
    std::vector<TeamId> order;
    for (const auto name : detail::split(ordered_names)) {
        order.push_back(teams.at(name));
    }
    if (order.size() != teams.size()) {
        throw InvalidInput(fmt::format("ranking lists {} teams, roster has {}", order.size(), teams.size()));
    }
    return Ranking::from_order(order);
}

}  // namespace tourney
