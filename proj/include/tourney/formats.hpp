#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/model.hpp"
#include "tourney/ranking.hpp"
#include "tourney/rng.hpp"
#include "tourney/scoring.hpp"

namespace tourney {

enum class FormatKind { iterated_round_robin, format_2012, format_2013_double_elim, proposed };

/// Short names: oracle, f2012, f2013, proposed.
std::string_view to_string(FormatKind kind);
/// Accepts short names and the long enumerator names.
FormatKind parse_format_kind(std::string_view name);

enum class Scheme { continuous, discrete };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

enum class FinalResolution { uniform_coin, higher_seed };

/// How a knockout game that ends level gets a winner: up to max_replays
/// single-game replays, then the final resolution.
struct DecisivePolicy {
    std::uint32_t max_replays = 1;
    FinalResolution final_resolution = FinalResolution::uniform_coin;

    friend bool operator==(const DecisivePolicy&, const DecisivePolicy&) = default;
};

struct FormatSpec {
    FormatKind kind = FormatKind::proposed;
    /// Oracle only.
    std::uint32_t games_per_pair = 1000;
    /// Oracle only.
    Scheme scheme = Scheme::continuous;
    /// Proposed format only.
    bool best_of_three = false;
    DecisivePolicy decisive;
    TieBreakPolicy tie_break;
    /// Highest seed first. Empty means roster order.
    std::vector<TeamId> seeding;
};

/// Throws InvalidInput / UnsupportedSize if the spec cannot run on n teams.
void validate(const FormatSpec& spec, std::size_t n);

/// Declarative form: {"kind", "games_per_pair", "scheme", "best_of_three",
/// "decisive_policy": {"max_replays", "final_resolution"}, "tie_break": [...],
/// "seeding": [team names]}. Missing keys keep their defaults.
FormatSpec parse_format_spec(std::string_view json_text, const Roster& teams);
std::string format_spec_to_json(const FormatSpec& spec, const Roster& teams);

enum class Stage {
    round_robin,
    group,
    semifinal,
    final,
    third_place,
    classification_5_6,
    classification_7_8,
    wb_round1,
    wb_semifinal,
    wb_final,
    lb_round1,
    lb_round2,
    lb_round3,
    lb_final,
    grand_final,
    preliminary,
    playoff_1_2,
    playoff_3_4,
    playoff_5_6,
    playoff_7_8,
};

std::string_view to_string(Stage stage);

enum class EntryKind {
    /// A scheduled fixture; counted in games_total.
    game,
    /// Extra game after a level knockout result; not counted.
    replay,
    /// Coin or seed decision after replays; `winner` is set.
    decider,
};

std::string_view to_string(EntryKind kind);

struct LedgerEntry {
    Stage stage = Stage::round_robin;
    std::uint32_t fixture = 0;
    EntryKind kind = EntryKind::game;
    /// For deciders: home is the higher seed, away the lower, goals zero.
    GameResult game;
    TeamId winner;

    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct TournamentOutcome {
    Ranking ranking;
    std::vector<LedgerEntry> ledger;
    /// Scheduled fixtures: 20 (2012), 16 (2013), 32 or 36..40 (proposed,
    /// single / best-of-three playoffs), n(n-1)/2 * games_per_pair (oracle).
    std::uint32_t games_total = 0;
};

/// Ground-truth oracle: every unordered pair plays games_per_pair games.
TournamentOutcome run_iterated_round_robin(const GameSampler& sampler, std::uint32_t games_per_pair, Scheme scheme,
                                           const TieBreakPolicy& policy, Rng& rng,
                                           std::span<const TeamId> seeding = {});

/// Two snake-seeded groups of four, two-legged semifinals on aggregate,
/// final, third place and two classification games. n must be 8.
TournamentOutcome run_format_2012(const GameSampler& sampler, std::span<const TeamId> seeding,
                                  const DecisivePolicy& decisive, Rng& rng, const TieBreakPolicy& policy = {});

/// Eight-team double elimination (14 games, no bracket reset) plus two
/// classification games. n must be 8.
TournamentOutcome run_format_2013_double_elim(const GameSampler& sampler, std::span<const TeamId> seeding,
                                              const DecisivePolicy& decisive, Rng& rng);

/// Single round-robin then playoffs 1v2, 3v4, 5v6, 7v8. n must be 8.
TournamentOutcome run_proposed(const GameSampler& sampler, bool best_of_three, const DecisivePolicy& decisive,
                               Rng& rng, const TieBreakPolicy& policy = {}, std::span<const TeamId> seeding = {});

TournamentOutcome run_format(const FormatSpec& spec, const GameSampler& sampler, Rng& rng);

/// Re-runs the format's state machine on recorded results. Throws
/// InvalidInput if the ledger does not match the fixtures the format asks
/// for, or has entries left over.
Ranking replay_ledger(const FormatSpec& spec, std::size_t n, std::span<const LedgerEntry> ledger);

/// stage,fixture,kind,home,away,home_goals,away_goals,winner
void write_ledger(std::ostream& out, std::span<const LedgerEntry> ledger, const Roster& teams);

/// Explicit winner of the playoff between places upper_place and
/// upper_place + 1 (upper_place in {1, 3, 5, 7}).
struct PlayoffOverride {
    int upper_place = 1;
    TeamId winner;
};

struct FixedResultsReplay {
    Standings preliminary_standings{0};
    Ranking preliminary;
    Ranking final;
};

/// Deterministic proposed-format replay over a fixed table of (possibly
/// non-integer) scores, one game per pair. Playoffs are decided by the same
/// table's head-to-head cells unless overridden; a level cell goes to the
/// higher preliminary place.
FixedResultsReplay rank_from_fixed_results(const PairTable& scores, const TieBreakPolicy& policy = {},
                                           std::span<const PlayoffOverride> overrides = {});

}  // namespace tourney
