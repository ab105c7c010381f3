#include "tourney/model.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "tourney/detail/text.hpp"
#include "tourney/error.hpp"
#include "tourney/scoring.hpp"

namespace tourney {

__extension__ using u128 = unsigned __int128;

Roster::Roster(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string_view> seen;
    for (const auto& name : names_) {
        if (name.empty()) {
            throw InvalidInput("team names must be non-empty");
        }
        if (!seen.insert(name).second) {
            throw InvalidInput(fmt::format("duplicate team name '{}'", name));
        }
    }
}

std::optional<TeamId> Roster::find(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return TeamId{static_cast<std::size_t>(it - names_.begin())};
}

TeamId Roster::at(std::string_view name) const {
    if (auto id = find(name)) {
        return *id;
    }
    throw InvalidInput(fmt::format("unknown team '{}'", name));
}

PairTable read_pair_table(std::istream& in, std::string_view source) {
    struct Line {
        std::size_t number;
        std::string text;
    };
    std::vector<Line> lines;
    std::string text;
    for (std::size_t number = 1; std::getline(in, text); ++number) {
        const auto trimmed = detail::trim(text);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        lines.push_back({number, std::string(trimmed)});
    }
    if (lines.empty()) {
        throw IngestError(fmt::format("{}: empty table (no header row)", source));
    }

    const auto header = detail::split(lines.front().text);
    const std::size_t n = header.size() - 1;
    if (n < 2) {
        throw IngestError(fmt::format("{}:{}: header must name at least 2 teams", source, lines.front().number));
    }
    std::vector<std::string> names;
    std::set<std::string_view> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c].empty()) {
            throw IngestError(fmt::format("{}:{}: column {} has an empty team name", source,
                                          lines.front().number, c + 1));
        }
        if (!seen.insert(header[c]).second) {
            throw IngestError(fmt::format("{}:{}: duplicate team name '{}' in column {}", source,
                                          lines.front().number, header[c], c + 1));
        }
        names.emplace_back(header[c]);
    }

    if (lines.size() - 1 != n) {
        throw IngestError(fmt::format("{}: non-square table: {} team columns but {} team rows", source, n,
                                      lines.size() - 1));
    }

    PairTable table{Roster(names), SquareMatrix<double>(n), 0};
    for (std::size_t r = 0; r < n; ++r) {
        const auto& line = lines[r + 1];
        const auto cells = detail::split(line.text);
        if (cells.size() != n + 1) {
            throw IngestError(fmt::format("{}:{}: non-square table: row '{}' has {} value cells, expected {}",
                                          source, line.number, cells.front(), cells.size() - 1, n));
        }
        if (cells.front() != names[r]) {
            throw IngestError(fmt::format("{}:{}: row team '{}' does not match column team '{}'", source,
                                          line.number, cells.front(), names[r]));
        }
        for (std::size_t c = 0; c < n; ++c) {
            const auto cell = cells[c + 1];
            if (r == c) {
                if (!cell.empty() && !detail::parse_double(cell)) {
                    throw IngestError(fmt::format("{}:{}: row '{}', column '{}': unparsable diagonal cell '{}'",
                                                  source, line.number, names[r], names[c], cell));
                }
                continue;
            }
            if (cell.empty()) {
                throw IngestError(fmt::format("{}:{}: row '{}', column '{}': missing value", source, line.number,
                                              names[r], names[c]));
            }
            const auto value = detail::parse_double(cell);
            if (!value || !std::isfinite(*value)) {
                throw IngestError(fmt::format("{}:{}: row '{}', column '{}': unparsable value '{}'", source,
                                              line.number, names[r], names[c], cell));
            }
            table.values(r, c) = *value;
            table.decimals = std::max(table.decimals, detail::fractional_digits(cell));
        }
    }
    return table;
}

PairTable read_pair_table_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError(fmt::format("{}: cannot open file", path.string()));
    }
    return read_pair_table(in, path.string());
}

void write_pair_table(std::ostream& out, const PairTable& table) {
    const auto n = table.teams.size();
    out << "team";
    for (const auto& name : table.teams.names()) {
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t r = 0; r < n; ++r) {
        out << table.teams.names()[r];
        for (std::size_t c = 0; c < n; ++c) {
            out << ',';
            if (r != c) {
                out << fmt::format("{:.{}f}", table.values(r, c), table.decimals);
            }
        }
        out << '\n';
    }
}

PairwiseGoalModel::PairwiseGoalModel(Roster teams, SquareMatrix<double> mean_goals, int decimals)
    : teams_(std::move(teams)), means_(std::move(mean_goals)), decimals_(decimals) {
    const auto n = teams_.size();
    if (n < 2) {
        throw InvalidInput("a goal model needs at least 2 teams");
    }
    if (means_.size() != n) {
        throw InvalidInput(fmt::format("goal matrix is {}x{} but the roster has {} teams", means_.size(),
                                       means_.size(), n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                means_(i, j) = 0.0;
                continue;
            }
            const double v = means_(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw InvalidInput(fmt::format("mean goals of '{}' against '{}' must be finite and nonnegative, got {}",
                                               teams_.names()[i], teams_.names()[j], v));
            }
        }
    }
}

PairwiseGoalModel load_model(std::istream& in, std::string_view source) {
    auto table = read_pair_table(in, source);
    const auto n = table.teams.size();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c && table.values(r, c) < 0.0) {
                throw IngestError(fmt::format("{}: row '{}', column '{}': negative mean goals {}", source,
                                              table.teams.names()[r], table.teams.names()[c], table.values(r, c)));
            }
        }
    }
    return PairwiseGoalModel(std::move(table.teams), std::move(table.values), table.decimals);
}

PairwiseGoalModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError(fmt::format("{}: cannot open file", path.string()));
    }
    auto model = load_model(in, path.string());
    model.id = path.stem().string();
    return model;
}

void write_model(std::ostream& out, const PairwiseGoalModel& model) {
    write_pair_table(out, PairTable{model.teams(), model.matrix(), model.decimals()});
}

GameResult sample_game(const PairwiseGoalModel& model, TeamId i, TeamId j, Rng& rng) {
    if (i == j) {
        throw InvalidPairing(fmt::format("team {} cannot play itself", i.index));
    }
    if (i.index >= model.size() || j.index >= model.size()) {
        throw InvalidPairing(fmt::format("pairing ({}, {}) outside a {}-team model", i.index, j.index, model.size()));
    }
    GameResult game{i, j, 0, 0};
    game.home_goals = rng.poisson(model.mean_goals(i, j));
    game.away_goals = rng.poisson(model.mean_goals(j, i));
    return game;
}

AverageResult average_results(std::span<const GameResult> games) {
    if (games.empty()) {
        throw InvalidInput("cannot average an empty list of games");
    }
    const TeamId team = games.front().home;
    const TeamId opponent = games.front().away;
    double goals_for = 0.0;
    double goals_against = 0.0;
    double points_for = 0.0;
    double points_against = 0.0;
    for (const auto& g : games) {
        const auto pts = points_per_game(g);
        if (g.home == team && g.away == opponent) {
            goals_for += g.home_goals;
            goals_against += g.away_goals;
            points_for += pts.home;
            points_against += pts.away;
        } else if (g.home == opponent && g.away == team) {
            goals_for += g.away_goals;
            goals_against += g.home_goals;
            points_for += pts.away;
            points_against += pts.home;
        } else {
            throw InvalidInput(fmt::format("mixed pairs: expected games between {} and {}, found {} vs {}",
                                           team.index, opponent.index, g.home.index, g.away.index));
        }
    }
    const auto count = static_cast<double>(games.size());
    return AverageResult{team,
                         opponent,
                         goals_for / count,
                         goals_against / count,
                         points_for / count,
                         points_against / count,
                         games.size()};
}

EmpiricalPoolSampler::EmpiricalPoolSampler(std::size_t team_count, std::span<const GameResult> pool)
    : n_(team_count), by_pair_(team_count * team_count) {
    for (const auto& g : pool) {
        if (g.home == g.away || g.home.index >= n_ || g.away.index >= n_) {
            throw InvalidInput(fmt::format("pool game ({} vs {}) is not a valid pairing", g.home.index,
                                           g.away.index));
        }
        if (g.home.index < g.away.index) {
            by_pair_[slot(g.home.index, g.away.index)].emplace_back(g.home_goals, g.away_goals);
        } else {
            by_pair_[slot(g.away.index, g.home.index)].emplace_back(g.away_goals, g.home_goals);
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (by_pair_[slot(i, j)].empty()) {
                throw InvalidInput(fmt::format("game pool has no result for pair ({}, {})", i, j));
            }
        }
    }
}

std::size_t EmpiricalPoolSampler::slot(std::size_t i, std::size_t j) const { return i * n_ + j; }

GameResult EmpiricalPoolSampler::sample(TeamId home, TeamId away, Rng& rng) const {
    if (home == away) {
        throw InvalidPairing(fmt::format("team {} cannot play itself", home.index));
    }
    const bool flipped = home.index > away.index;
    const auto& games = flipped ? by_pair_[slot(away.index, home.index)] : by_pair_[slot(home.index, away.index)];
    // Multiply-shift keeps the draw a pure function of the stream.
    const auto pick = static_cast<std::size_t>(
        (static_cast<u128>(rng.next()) * games.size()) >> 64);
    const auto [low_goals, high_goals] = games[pick];
    return flipped ? GameResult{home, away, high_goals, low_goals} : GameResult{home, away, low_goals, high_goals};
}

std::vector<GameResult> read_game_pool(std::istream& in, const Roster& teams, std::string_view source) {
    std::vector<GameResult> games;
    std::string text;
    bool header_seen = false;
    for (std::size_t number = 1; std::getline(in, text); ++number) {
        const auto line = detail::trim(text);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto cells = detail::split(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() != 4 || cells[0] != "home" || cells[1] != "away") {
                throw IngestError(fmt::format("{}:{}: expected header 'home,away,home_goals,away_goals'", source,
                                              number));
            }
            continue;
        }
        if (cells.size() != 4) {
            throw IngestError(fmt::format("{}:{}: expected 4 cells, found {}", source, number, cells.size()));
        }
        auto home = teams.find(cells[0]);
        auto away = teams.find(cells[1]);
        if (!home || !away) {
            throw IngestError(fmt::format("{}:{}: unknown team '{}'", source, number, home ? cells[1] : cells[0]));
        }
        auto hg = detail::parse_int<std::uint32_t>(cells[2]);
        auto ag = detail::parse_int<std::uint32_t>(cells[3]);
        if (!hg || !ag) {
            throw IngestError(fmt::format("{}:{}: goals must be nonnegative integers", source, number));
        }
        if (*home == *away) {
            throw IngestError(fmt::format("{}:{}: team '{}' cannot play itself", source, number, cells[0]));
        }
        games.push_back({*home, *away, *hg, *ag});
    }
    if (!header_seen) {
        throw IngestError(fmt::format("{}: empty game pool", source));
    }
    return games;
}

}  // namespace tourney
