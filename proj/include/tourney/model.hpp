#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/rng.hpp"

namespace tourney {

/// Dense team index within one tournament context. Names live in a Roster.
struct TeamId {
    std::size_t index = 0;

    friend auto operator<=>(const TeamId&, const TeamId&) = default;
};

class Roster {
public:
    Roster() = default;
    explicit Roster(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(TeamId id) const { return names_.at(id.index); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<TeamId> find(std::string_view name) const;
    /// Like find() but throws InvalidInput naming the unknown team.
    TeamId at(std::string_view name) const;

    friend bool operator==(const Roster&, const Roster&) = default;

private:
    std::vector<std::string> names_;
};

template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

/// Square table of per-ordered-pair values with a team-name header row and
/// column. Cell (i, j) is the value of the row team against the column team;
/// the diagonal is unused.
struct PairTable {
    Roster teams;
    SquareMatrix<double> values;
    /// Largest number of fractional digits seen in any cell.
    int decimals = 0;
};

/// Reads the comma-separated pair-table format. Blank lines and lines starting
/// with '#' are ignored. Throws IngestError naming the source, line and column.
PairTable read_pair_table(std::istream& in, std::string_view source = "<stream>");
PairTable read_pair_table_file(const std::filesystem::path& path);
/// Writes every off-diagonal value with `table.decimals` fractional digits.
void write_pair_table(std::ostream& out, const PairTable& table);

/// Expected goals per ordered team pair; the generative ground truth.
/// Need not be symmetric or transitive.
class PairwiseGoalModel {
public:
    /// Throws InvalidInput if n < 2 or an off-diagonal mean is negative or
    /// not finite.
    PairwiseGoalModel(Roster teams, SquareMatrix<double> mean_goals, int decimals = 1);

    std::size_t size() const { return teams_.size(); }
    const Roster& teams() const { return teams_; }
    double mean_goals(TeamId scorer, TeamId opponent) const { return means_(scorer.index, opponent.index); }
    const SquareMatrix<double>& matrix() const { return means_; }
    int decimals() const { return decimals_; }

    std::string id;

private:
    Roster teams_;
    SquareMatrix<double> means_;
    int decimals_;
};

PairwiseGoalModel load_model(std::istream& in, std::string_view source = "<stream>");
/// Also sets the model id to the file stem.
PairwiseGoalModel load_model_file(const std::filesystem::path& path);
void write_model(std::ostream& out, const PairwiseGoalModel& model);

struct GameResult {
    TeamId home;
    TeamId away;
    std::uint32_t home_goals = 0;
    std::uint32_t away_goals = 0;

    friend bool operator==(const GameResult&, const GameResult&) = default;
};

/// Means over a set of games between one pair, oriented from `team`'s side.
struct AverageResult {
    TeamId team;
    TeamId opponent;
    double mean_for = 0.0;
    double mean_against = 0.0;
    double mean_points_for = 0.0;
    double mean_points_against = 0.0;
    std::uint64_t games_counted = 0;
};

/// Two independent Poisson goal counts with means model(i, j) and model(j, i).
/// Throws InvalidPairing when i == j.
GameResult sample_game(const PairwiseGoalModel& model, TeamId i, TeamId j, Rng& rng);

/// Averages games that all involve the same unordered pair, oriented from the
/// first game's home team. Throws InvalidInput on an empty list or mixed pairs.
AverageResult average_results(std::span<const GameResult> games);

/// Source of game results for the format engines. Formats only ever see this
/// interface, so the Poisson and empirical-pool backends are interchangeable.
class GameSampler {
public:
    virtual ~GameSampler() = default;
    virtual std::size_t team_count() const = 0;
    virtual GameResult sample(TeamId home, TeamId away, Rng& rng) const = 0;
    /// Short backend name recorded in output headers.
    virtual std::string_view backend() const = 0;
};

class PoissonSampler final : public GameSampler {
public:
    explicit PoissonSampler(PairwiseGoalModel model) : model_(std::move(model)) {}

    std::size_t team_count() const override { return model_.size(); }
    GameResult sample(TeamId home, TeamId away, Rng& rng) const override {
        return sample_game(model_, home, away, rng);
    }
    std::string_view backend() const override { return "poisson"; }

    const PairwiseGoalModel& model() const { return model_; }

private:
    PairwiseGoalModel model_;
};

/// Draws uniformly from recorded games of the requested pair, re-oriented to
/// the requested home side.
class EmpiricalPoolSampler final : public GameSampler {
public:
    /// Throws InvalidInput if any unordered pair has no recorded game.
    EmpiricalPoolSampler(std::size_t team_count, std::span<const GameResult> pool);

    std::size_t team_count() const override { return n_; }
    GameResult sample(TeamId home, TeamId away, Rng& rng) const override;
    std::string_view backend() const override { return "empirical_pool"; }

private:
    std::size_t n_;
    // Games stored from the lower index's side, per unordered pair.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_pair_;
    std::size_t slot(std::size_t i, std::size_t j) const;
};

/// Reads a raw game log: header `home,away,home_goals,away_goals`, teams by name.
std::vector<GameResult> read_game_pool(std::istream& in, const Roster& teams,
                                       std::string_view source = "<stream>");

}  // namespace tourney
