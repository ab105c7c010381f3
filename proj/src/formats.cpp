#include "tourney/formats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(FormatKind kind) {
    switch (kind) {
        case FormatKind::iterated_round_robin: return "oracle";
        case FormatKind::format_2012: return "f2012";
        case FormatKind::format_2013_double_elim: return "f2013";
        case FormatKind::proposed: return "proposed";
    }
    return "?";
}

FormatKind parse_format_kind(std::string_view name) {
    if (name == "oracle" || name == "iterated_round_robin") return FormatKind::iterated_round_robin;
    if (name == "f2012" || name == "format_2012") return FormatKind::format_2012;
    if (name == "f2013" || name == "format_2013_double_elim") return FormatKind::format_2013_double_elim;
    if (name == "proposed") return FormatKind::proposed;
    throw InvalidInput(fmt::format("unknown format '{}'", name));
}

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::continuous ? "continuous" : "discrete";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "continuous") return Scheme::continuous;
    if (name == "discrete") return Scheme::discrete;
    throw InvalidInput(fmt::format("unknown scheme '{}'", name));
}

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::round_robin: return "round_robin";
        case Stage::group: return "group";
        case Stage::semifinal: return "semifinal";
        case Stage::final: return "final";
        case Stage::third_place: return "third_place";
        case Stage::classification_5_6: return "classification_5_6";
        case Stage::classification_7_8: return "classification_7_8";
        case Stage::wb_round1: return "wb_round1";
        case Stage::wb_semifinal: return "wb_semifinal";
        case Stage::wb_final: return "wb_final";
        case Stage::lb_round1: return "lb_round1";
        case Stage::lb_round2: return "lb_round2";
        case Stage::lb_round3: return "lb_round3";
        case Stage::lb_final: return "lb_final";
        case Stage::grand_final: return "grand_final";
        case Stage::preliminary: return "preliminary";
        case Stage::playoff_1_2: return "playoff_1_2";
        case Stage::playoff_3_4: return "playoff_3_4";
        case Stage::playoff_5_6: return "playoff_5_6";
        case Stage::playoff_7_8: return "playoff_7_8";
    }
    return "?";
}

std::string_view to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::game: return "game";
        case EntryKind::replay: return "replay";
        case EntryKind::decider: return "decider";
    }
    return "?";
}

namespace {

constexpr std::size_t kBracketTeams = 8;

std::optional<TeamId> winner_of(const GameResult& g) {
    if (g.home_goals > g.away_goals) return g.home;
    if (g.away_goals > g.home_goals) return g.away;
    return std::nullopt;
}

/// Where format engines get their results from: live sampling or a recorded
/// ledger.
class MatchSource {
public:
    virtual ~MatchSource() = default;
    virtual GameResult play(Stage stage, std::uint32_t fixture, EntryKind kind, TeamId home, TeamId away) = 0;
    virtual TeamId decide(Stage stage, std::uint32_t fixture, TeamId higher, TeamId lower,
                          FinalResolution resolution) = 0;
};

class LiveSource final : public MatchSource {
public:
    LiveSource(const GameSampler& sampler, Rng& rng, std::vector<LedgerEntry>& ledger)
        : sampler_(sampler), rng_(rng), ledger_(ledger) {}

    GameResult play(Stage stage, std::uint32_t fixture, EntryKind kind, TeamId home, TeamId away) override {
        const auto g = sampler_.sample(home, away, rng_);
        ledger_.push_back({stage, fixture, kind, g, {}});
        return g;
    }

    TeamId decide(Stage stage, std::uint32_t fixture, TeamId higher, TeamId lower,
                  FinalResolution resolution) override {
        TeamId winner = higher;
        if (resolution == FinalResolution::uniform_coin && rng_.coin()) {
            winner = lower;
        }
        ledger_.push_back({stage, fixture, EntryKind::decider, GameResult{higher, lower, 0, 0}, winner});
        return winner;
    }

private:
    const GameSampler& sampler_;
    Rng& rng_;
    std::vector<LedgerEntry>& ledger_;
};

class ReplaySource final : public MatchSource {
public:
    explicit ReplaySource(std::span<const LedgerEntry> ledger) : ledger_(ledger) {}

    GameResult play(Stage stage, std::uint32_t fixture, EntryKind kind, TeamId home, TeamId away) override {
        const auto& e = next(stage, fixture, kind, home, away);
        return e.game;
    }

    TeamId decide(Stage stage, std::uint32_t fixture, TeamId higher, TeamId lower,
                  FinalResolution resolution) override {
        const auto& e = next(stage, fixture, EntryKind::decider, higher, lower);
        if (e.winner != higher && e.winner != lower) {
            throw InvalidInput(fmt::format("ledger entry {}: decider winner {} is not in the pairing", pos_ - 1,
                                           e.winner.index));
        }
        if (resolution == FinalResolution::higher_seed && e.winner != higher) {
            throw InvalidInput(fmt::format("ledger entry {}: higher_seed decider must pick team {}", pos_ - 1,
                                           higher.index));
        }
        return e.winner;
    }

    void finish() const {
        if (pos_ != ledger_.size()) {
            throw InvalidInput(fmt::format("ledger has {} unconsumed entries", ledger_.size() - pos_));
        }
    }

private:
    const LedgerEntry& next(Stage stage, std::uint32_t fixture, EntryKind kind, TeamId home, TeamId away) {
        if (pos_ >= ledger_.size()) {
            throw InvalidInput(fmt::format("ledger ended before {} fixture {}", to_string(stage), fixture));
        }
        const auto& e = ledger_[pos_];
        if (e.stage != stage || e.fixture != fixture || e.kind != kind || e.game.home != home ||
            e.game.away != away) {
            throw InvalidInput(fmt::format(
                "ledger entry {}: expected {} {} #{} ({} vs {}), found {} {} #{} ({} vs {})", pos_,
                to_string(stage), to_string(kind), fixture, home.index, away.index, to_string(e.stage),
                to_string(e.kind), e.fixture, e.game.home.index, e.game.away.index));
        }
        ++pos_;
        return e;
    }

    std::span<const LedgerEntry> ledger_;
    std::size_t pos_ = 0;
};

struct EngineResult {
    Ranking ranking;
    std::uint32_t games_total = 0;
};

/// Seed positions for "higher seed" decisions.
class SeedTable {
public:
    SeedTable(std::size_t n, std::span<const TeamId> seeding) : pos_(n) {
        for (std::size_t k = 0; k < seeding.size(); ++k) {
            pos_[seeding[k].index] = k;
        }
    }
    /// Returns (higher, lower).
    std::pair<TeamId, TeamId> order(TeamId a, TeamId b) const {
        return pos_[a.index] <= pos_[b.index] ? std::pair{a, b} : std::pair{b, a};
    }

private:
    std::vector<std::size_t> pos_;
};

TeamId resolve_level(MatchSource& src, Stage stage, std::uint32_t fixture, TeamId higher, TeamId lower,
                     const DecisivePolicy& policy) {
    for (std::uint32_t r = 0; r < policy.max_replays; ++r) {
        const auto g = src.play(stage, fixture, EntryKind::replay, higher, lower);
        if (auto w = winner_of(g)) {
            return *w;
        }
    }
    return src.decide(stage, fixture, higher, lower, policy.final_resolution);
}

TeamId play_decisive(MatchSource& src, Stage stage, std::uint32_t fixture, TeamId higher, TeamId lower,
                     const DecisivePolicy& policy) {
    const auto g = src.play(stage, fixture, EntryKind::game, higher, lower);
    if (auto w = winner_of(g)) {
        return *w;
    }
    return resolve_level(src, stage, fixture, higher, lower, policy);
}

TeamId other(TeamId winner, TeamId a, TeamId b) { return winner == a ? b : a; }

std::vector<TeamId> default_seeding(std::size_t n, std::span<const TeamId> seeding) {
    if (!seeding.empty()) {
        return {seeding.begin(), seeding.end()};
    }
    std::vector<TeamId> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(TeamId{i});
    }
    return out;
}

void require_bracket_size(std::size_t n, std::string_view format) {
    if (n != kBracketTeams) {
        throw UnsupportedSize(fmt::format("{} requires exactly {} teams, got {}", format, kBracketTeams, n));
    }
}

void require_seeding(std::size_t n, std::span<const TeamId> seeding) {
    if (seeding.size() != n) {
        throw InvalidInput(fmt::format("seeding lists {} teams, expected {}", seeding.size(), n));
    }
    (void)Ranking::from_order(seeding);
}

EngineResult oracle_engine(std::size_t n, std::uint32_t games_per_pair, Scheme scheme, const TieBreakPolicy& policy,
                           std::span<const TeamId> seeding, MatchSource& src) {
    if (n < 2) {
        throw InvalidInput("the round-robin oracle needs at least 2 teams");
    }
    if (games_per_pair < 1) {
        throw InvalidInput("games_per_pair must be at least 1");
    }
    std::uint32_t fixture = 0;
    std::vector<AverageResult> averages;
    std::vector<GameResult> games(games_per_pair);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (auto& g : games) {
                g = src.play(Stage::round_robin, fixture++, EntryKind::game, TeamId{i}, TeamId{j});
            }
            averages.push_back(average_results(games));
        }
    }
    const auto standings =
        scheme == Scheme::continuous ? continuous_standings(n, averages) : discrete_standings(n, averages);
    return {rank(standings, policy, seeding), fixture};
}

/// Round-robin among `members`; returns them best first.
std::vector<TeamId> group_stage(std::size_t n, std::span<const TeamId> members, Stage stage, std::uint32_t& fixture,
                                const TieBreakPolicy& policy, std::span<const TeamId> seeding, MatchSource& src) {
    std::vector<GameResult> games;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            games.push_back(src.play(stage, fixture++, EntryKind::game, members[a], members[b]));
        }
    }
    const auto order = rank(tally_games(n, games), policy, seeding).order();
    std::vector<TeamId> out;
    for (const auto t : order) {
        if (std::find(members.begin(), members.end(), t) != members.end()) {
            out.push_back(t);
        }
    }
    return out;
}

EngineResult f2012_engine(std::size_t n, std::span<const TeamId> seeding, const DecisivePolicy& decisive,
                          const TieBreakPolicy& policy, MatchSource& src) {
    require_bracket_size(n, "format_2012");
    require_seeding(n, seeding);
    const SeedTable seeds(n, seeding);
    std::uint32_t fixture = 0;

    // Snake seeding: {1,4,5,8} and {2,3,6,7}.
    const std::vector<TeamId> group_a{seeding[0], seeding[3], seeding[4], seeding[7]};
    const std::vector<TeamId> group_b{seeding[1], seeding[2], seeding[5], seeding[6]};
    const auto a = group_stage(n, group_a, Stage::group, fixture, policy, seeding, src);
    const auto b = group_stage(n, group_b, Stage::group, fixture, policy, seeding, src);

    // Two legs each, aggregate goals.
    auto semifinal = [&](TeamId x, TeamId y) {
        const auto [hi, lo] = seeds.order(x, y);
        const auto leg1 = src.play(Stage::semifinal, fixture++, EntryKind::game, hi, lo);
        const auto leg2_fixture = fixture++;
        const auto leg2 = src.play(Stage::semifinal, leg2_fixture, EntryKind::game, lo, hi);
        const auto hi_goals = leg1.home_goals + leg2.away_goals;
        const auto lo_goals = leg1.away_goals + leg2.home_goals;
        if (hi_goals != lo_goals) {
            return hi_goals > lo_goals ? hi : lo;
        }
        return resolve_level(src, Stage::semifinal, leg2_fixture, hi, lo, decisive);
    };
    const auto semi1 = semifinal(a[0], b[1]);
    const auto semi2 = semifinal(b[0], a[1]);
    const auto semi1_loser = other(semi1, a[0], b[1]);
    const auto semi2_loser = other(semi2, b[0], a[1]);

    auto single = [&](Stage stage, TeamId x, TeamId y) {
        const auto [hi, lo] = seeds.order(x, y);
        const auto w = play_decisive(src, stage, fixture++, hi, lo, decisive);
        return std::pair{w, other(w, x, y)};
    };
    const auto [first, second] = single(Stage::final, semi1, semi2);
    const auto [third, fourth] = single(Stage::third_place, semi1_loser, semi2_loser);
    const auto [fifth, sixth] = single(Stage::classification_5_6, a[2], b[2]);
    const auto [seventh, eighth] = single(Stage::classification_7_8, a[3], b[3]);

    const std::vector<TeamId> order{first, second, third, fourth, fifth, sixth, seventh, eighth};
    return {Ranking::from_order(order), fixture};
}

EngineResult f2013_engine(std::size_t n, std::span<const TeamId> seeding, const DecisivePolicy& decisive,
                          MatchSource& src) {
    require_bracket_size(n, "format_2013_double_elim");
    require_seeding(n, seeding);
    const SeedTable seeds(n, seeding);
    std::uint32_t fixture = 0;

    struct Result {
        TeamId winner;
        TeamId loser;
    };
    auto game = [&](Stage stage, TeamId x, TeamId y) {
        const auto [hi, lo] = seeds.order(x, y);
        const auto w = play_decisive(src, stage, fixture++, hi, lo, decisive);
        return Result{w, other(w, x, y)};
    };
    const auto& s = seeding;

    // Winners bracket: 4 + 2 + 1.
    const auto w1 = game(Stage::wb_round1, s[0], s[7]);
    const auto w2 = game(Stage::wb_round1, s[3], s[4]);
    const auto w3 = game(Stage::wb_round1, s[1], s[6]);
    const auto w4 = game(Stage::wb_round1, s[2], s[5]);
    const auto w5 = game(Stage::wb_semifinal, w1.winner, w2.winner);
    const auto w6 = game(Stage::wb_semifinal, w3.winner, w4.winner);
    const auto wf = game(Stage::wb_final, w5.winner, w6.winner);

    // Losers bracket: 2 + 2 + 1 + 1. Round 2 crosses halves to avoid rematches.
    const auto l1 = game(Stage::lb_round1, w1.loser, w2.loser);
    const auto l2 = game(Stage::lb_round1, w3.loser, w4.loser);
    const auto l3 = game(Stage::lb_round2, l1.winner, w6.loser);
    const auto l4 = game(Stage::lb_round2, l2.winner, w5.loser);
    const auto l5 = game(Stage::lb_round3, l3.winner, l4.winner);
    const auto lf = game(Stage::lb_final, l5.winner, wf.loser);

    // Single grand final, no reset.
    const auto gf = game(Stage::grand_final, wf.winner, lf.winner);

    const auto c56 = game(Stage::classification_5_6, l3.loser, l4.loser);
    const auto c78 = game(Stage::classification_7_8, l1.loser, l2.loser);

    const std::vector<TeamId> order{gf.winner,  gf.loser,  lf.loser,   l5.loser,
                                    c56.winner, c56.loser, c78.winner, c78.loser};
    return {Ranking::from_order(order), fixture};
}

constexpr Stage kPlayoffStages[] = {Stage::playoff_1_2, Stage::playoff_3_4, Stage::playoff_5_6,
                                    Stage::playoff_7_8};

EngineResult proposed_engine(std::size_t n, bool best_of_three, const DecisivePolicy& decisive,
                             const TieBreakPolicy& policy, std::span<const TeamId> seeding, MatchSource& src) {
    require_bracket_size(n, "proposed");
    require_seeding(n, seeding);
    std::uint32_t fixture = 0;

    std::vector<GameResult> games;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            games.push_back(src.play(Stage::preliminary, fixture++, EntryKind::game, TeamId{i}, TeamId{j}));
        }
    }
    const auto preliminary = rank(tally_games(n, games), policy, seeding).order();

    std::vector<TeamId> order(n);
    for (std::size_t k = 0; k < 4; ++k) {
        const TeamId hi = preliminary[2 * k];
        const TeamId lo = preliminary[2 * k + 1];
        const Stage stage = kPlayoffStages[k];
        TeamId winner;
        if (!best_of_three) {
            winner = play_decisive(src, stage, fixture++, hi, lo, decisive);
        } else {
            // A drawn game counts for neither side.
            int hi_wins = 0;
            int lo_wins = 0;
            std::uint32_t last = fixture;
            for (int g = 0; g < 3 && hi_wins < 2 && lo_wins < 2; ++g) {
                last = fixture++;
                const auto result = src.play(stage, last, EntryKind::game, hi, lo);
                if (auto w = winner_of(result)) {
                    (*w == hi ? hi_wins : lo_wins) += 1;
                }
            }
            // Series points only differ through wins since draws are shared.
            if (hi_wins != lo_wins) {
                winner = hi_wins > lo_wins ? hi : lo;
            } else {
                winner = resolve_level(src, stage, last, hi, lo, decisive);
            }
        }
        order[2 * k] = winner;
        order[2 * k + 1] = other(winner, hi, lo);
    }
    return {Ranking::from_order(order), fixture};
}

EngineResult run_engine(const FormatSpec& spec, std::size_t n, MatchSource& src) {
    const auto seeding = default_seeding(n, spec.seeding);
    switch (spec.kind) {
        case FormatKind::iterated_round_robin:
            return oracle_engine(n, spec.games_per_pair, spec.scheme, spec.tie_break, seeding, src);
        case FormatKind::format_2012: return f2012_engine(n, seeding, spec.decisive, spec.tie_break, src);
        case FormatKind::format_2013_double_elim: return f2013_engine(n, seeding, spec.decisive, src);
        case FormatKind::proposed:
            return proposed_engine(n, spec.best_of_three, spec.decisive, spec.tie_break, seeding, src);
    }
    throw std::logic_error("unhandled format kind");
}

void check_games_total(const FormatSpec& spec, std::size_t n, std::uint32_t games_total) {
    bool ok = true;
    switch (spec.kind) {
        case FormatKind::iterated_round_robin:
            ok = games_total == n * (n - 1) / 2 * spec.games_per_pair;
            break;
        case FormatKind::format_2012: ok = games_total == 20; break;
        case FormatKind::format_2013_double_elim: ok = games_total == 16; break;
        case FormatKind::proposed:
            ok = spec.best_of_three ? (games_total >= 36 && games_total <= 40) : games_total == 32;
            break;
    }
    if (!ok) {
        throw std::logic_error(
            fmt::format("{} played {} scheduled games, outside its defined count", to_string(spec.kind), games_total));
    }
}

TournamentOutcome run_checked(const FormatSpec& spec, const GameSampler& sampler, Rng& rng) {
    validate(spec, sampler.team_count());
    TournamentOutcome out;
    LiveSource src(sampler, rng, out.ledger);
    auto result = run_engine(spec, sampler.team_count(), src);
    check_games_total(spec, sampler.team_count(), result.games_total);
    out.ranking = std::move(result.ranking);
    out.games_total = result.games_total;
    return out;
}

}  // namespace

void validate(const FormatSpec& spec, std::size_t n) {
    if (spec.kind == FormatKind::iterated_round_robin) {
        if (n < 2) {
            throw InvalidInput("the round-robin oracle needs at least 2 teams");
        }
        if (spec.games_per_pair < 1) {
            throw InvalidInput("games_per_pair must be at least 1");
        }
    } else {
        require_bracket_size(n, to_string(spec.kind));
    }
    if (!spec.seeding.empty()) {
        require_seeding(n, spec.seeding);
    }
}

TournamentOutcome run_iterated_round_robin(const GameSampler& sampler, std::uint32_t games_per_pair, Scheme scheme,
                                           const TieBreakPolicy& policy, Rng& rng, std::span<const TeamId> seeding) {
    FormatSpec spec;
    spec.kind = FormatKind::iterated_round_robin;
    spec.games_per_pair = games_per_pair;
    spec.scheme = scheme;
    spec.tie_break = policy;
    spec.seeding.assign(seeding.begin(), seeding.end());
    return run_checked(spec, sampler, rng);
}

TournamentOutcome run_format_2012(const GameSampler& sampler, std::span<const TeamId> seeding,
                                  const DecisivePolicy& decisive, Rng& rng, const TieBreakPolicy& policy) {
    FormatSpec spec;
    spec.kind = FormatKind::format_2012;
    spec.decisive = decisive;
    spec.tie_break = policy;
    spec.seeding.assign(seeding.begin(), seeding.end());
    return run_checked(spec, sampler, rng);
}

TournamentOutcome run_format_2013_double_elim(const GameSampler& sampler, std::span<const TeamId> seeding,
                                              const DecisivePolicy& decisive, Rng& rng) {
    FormatSpec spec;
    spec.kind = FormatKind::format_2013_double_elim;
    spec.decisive = decisive;
    spec.seeding.assign(seeding.begin(), seeding.end());
    return run_checked(spec, sampler, rng);
}

TournamentOutcome run_proposed(const GameSampler& sampler, bool best_of_three, const DecisivePolicy& decisive,
                               Rng& rng, const TieBreakPolicy& policy, std::span<const TeamId> seeding) {
    FormatSpec spec;
    spec.kind = FormatKind::proposed;
    spec.best_of_three = best_of_three;
    spec.decisive = decisive;
    spec.tie_break = policy;
    spec.seeding.assign(seeding.begin(), seeding.end());
    return run_checked(spec, sampler, rng);
}

TournamentOutcome run_format(const FormatSpec& spec, const GameSampler& sampler, Rng& rng) {
    return run_checked(spec, sampler, rng);
}

Ranking replay_ledger(const FormatSpec& spec, std::size_t n, std::span<const LedgerEntry> ledger) {
    validate(spec, n);
    ReplaySource src(ledger);
    auto result = run_engine(spec, n, src);
    src.finish();
    return result.ranking;
}

void write_ledger(std::ostream& out, std::span<const LedgerEntry> ledger, const Roster& teams) {
    out << "stage,fixture,kind,home,away,home_goals,away_goals,winner\n";
    for (const auto& e : ledger) {
        out << fmt::format("{},{},{},{},{},", to_string(e.stage), e.fixture, to_string(e.kind),
                           teams.name(e.game.home), teams.name(e.game.away));
        if (e.kind == EntryKind::decider) {
            out << ",," << teams.name(e.winner) << '\n';
        } else {
            const auto w = winner_of(e.game);
            out << fmt::format("{},{},{}\n", e.game.home_goals, e.game.away_goals, w ? teams.name(*w) : "");
        }
    }
}

FormatSpec parse_format_spec(std::string_view json_text, const Roster& teams) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("format config is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) {
        throw InvalidInput("format config must be a JSON object");
    }
    FormatSpec spec;
    try {
        if (doc.contains("kind")) spec.kind = parse_format_kind(doc.at("kind").get<std::string>());
        if (doc.contains("games_per_pair")) spec.games_per_pair = doc.at("games_per_pair").get<std::uint32_t>();
        if (doc.contains("scheme")) spec.scheme = parse_scheme(doc.at("scheme").get<std::string>());
        if (doc.contains("best_of_three")) spec.best_of_three = doc.at("best_of_three").get<bool>();
        if (doc.contains("decisive_policy")) {
            const auto& dp = doc.at("decisive_policy");
            if (dp.contains("max_replays")) spec.decisive.max_replays = dp.at("max_replays").get<std::uint32_t>();
            if (dp.contains("final_resolution")) {
                const auto r = dp.at("final_resolution").get<std::string>();
                if (r == "uniform_coin") {
                    spec.decisive.final_resolution = FinalResolution::uniform_coin;
                } else if (r == "higher_seed") {
                    spec.decisive.final_resolution = FinalResolution::higher_seed;
                } else {
                    throw InvalidInput(fmt::format("unknown final_resolution '{}'", r));
                }
            }
        }
        if (doc.contains("tie_break")) {
            std::vector<TieBreak> criteria;
            for (const auto& c : doc.at("tie_break")) {
                criteria.push_back(parse_tie_break(c.get<std::string>()));
            }
            spec.tie_break = TieBreakPolicy(std::move(criteria));
        }
        if (doc.contains("seeding")) {
            for (const auto& name : doc.at("seeding")) {
                spec.seeding.push_back(teams.at(name.get<std::string>()));
            }
        }
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("format config has a field of the wrong type: {}", e.what()));
    }
    validate(spec, teams.size());
    return spec;
}

std::string format_spec_to_json(const FormatSpec& spec, const Roster& teams) {
    nlohmann::ordered_json doc;
    doc["kind"] = to_string(spec.kind);
    doc["games_per_pair"] = spec.games_per_pair;
    doc["scheme"] = to_string(spec.scheme);
    doc["best_of_three"] = spec.best_of_three;
    doc["decisive_policy"] = {
        {"max_replays", spec.decisive.max_replays},
        {"final_resolution",
         spec.decisive.final_resolution == FinalResolution::uniform_coin ? "uniform_coin" : "higher_seed"}};
    auto criteria = nlohmann::ordered_json::array();
    for (const auto c : spec.tie_break.criteria()) {
        criteria.push_back(to_string(c));
    }
    doc["tie_break"] = criteria;
    auto seeding = nlohmann::ordered_json::array();
    for (const auto t : spec.seeding) {
        seeding.push_back(teams.name(t));
    }
    doc["seeding"] = seeding;
    return doc.dump(2);
}

FixedResultsReplay rank_from_fixed_results(const PairTable& scores, const TieBreakPolicy& policy,
                                           std::span<const PlayoffOverride> overrides) {
    const auto n = scores.teams.size();
    require_bracket_size(n, "proposed");
    if (scores.values.size() != n) {
        throw IncompleteRoundRobin("score table does not match its roster");
    }
    FixedResultsReplay out{Standings(n), {}, {}};
    auto& st = out.preliminary_standings;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double si = scores.values(i, j);
            const double sj = scores.values(j, i);
            if (!std::isfinite(si) || !std::isfinite(sj) || si < 0.0 || sj < 0.0) {
                throw IncompleteRoundRobin(fmt::format("no usable result for {} vs {}", scores.teams.names()[i],
                                                       scores.teams.names()[j]));
            }
            const int pi = si > sj ? kWinPoints : (si == sj ? kDrawPoints : 0);
            const int pj = sj > si ? kWinPoints : (si == sj ? kDrawPoints : 0);
            st.teams[i].points += pi;
            st.teams[j].points += pj;
            st.teams[i].goals_for += si;
            st.teams[i].goals_against += sj;
            st.teams[j].goals_for += sj;
            st.teams[j].goals_against += si;
            ++st.teams[i].games_played;
            ++st.teams[j].games_played;
            st.head_to_head(i, j) += pi;
            st.head_to_head(j, i) += pj;
        }
    }
    out.preliminary = rank(st, policy);
    const auto prelim = out.preliminary.order();

    std::vector<TeamId> order(n);
    for (std::size_t k = 0; k < 4; ++k) {
        const TeamId hi = prelim[2 * k];
        const TeamId lo = prelim[2 * k + 1];
        TeamId winner = scores.values(hi.index, lo.index) >= scores.values(lo.index, hi.index) ? hi : lo;
        for (const auto& o : overrides) {
            if (o.upper_place != static_cast<int>(2 * k + 1)) {
                continue;
            }
            if (o.winner != hi && o.winner != lo) {
                throw InvalidInput(fmt::format("playoff {}-{} override names {}, who is not in that playoff",
                                               o.upper_place, o.upper_place + 1, scores.teams.name(o.winner)));
            }
            winner = o.winner;
        }
        order[2 * k] = winner;
        order[2 * k + 1] = other(winner, hi, lo);
    }
    for (const auto& o : overrides) {
        if (o.upper_place < 1 || o.upper_place > 7 || o.upper_place % 2 == 0) {
            throw InvalidInput(fmt::format("playoff override for invalid place {}", o.upper_place));
        }
    }
    out.final = Ranking::from_order(order);
    return out;
}

}  // namespace tourney
