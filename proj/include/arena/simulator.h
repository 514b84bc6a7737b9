#pragma once

#include "arena/rng.h"
#include "arena/shape.h"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <optional>
#include <vector>

namespace arena {

/// Fixed-point-free involution on 0..M-1.
struct Matching {
    std::vector<std::size_t> partner;

    std::size_t size() const { return partner.size(); }
    bool is_involution() const;
};

/// Uniform random perfect matching: shuffle, then pair adjacent positions.
/// Throws DomainError for odd or zero M.
Matching random_matching(std::size_t players, Rng& rng);

struct MatchRecord {
    std::size_t player = 0;
    int round = 0;
    int run = 0;
    State state_before;
    bool won = false;

    State state_after() const {
        return won ? State{state_before.wins + 1, state_before.losses}
                   : State{state_before.wins, state_before.losses + 1};
    }
};

using StrengthSampler = std::function<double(Rng&)>;

/// Standard uniform strengths on [0, 1).
StrengthSampler uniform_strengths();
/// Standard normal strengths.
StrengthSampler normal_strengths();

struct ArenaGameOutcome {
    std::vector<double> strengths;
    std::vector<State> results;       // final boundary state per player
    std::map<State, std::size_t> visits;  // players that reached each state
    std::vector<MatchRecord> records; // empty unless requested
};

/// One arena game among 2^(m+n+log2_extra) players with fixed strengths; the
/// stronger player of each pairing wins. Exact ties go to a fair coin.
ArenaGameOutcome simulate_arena_game(const ArenaShape& shape, int log2_extra,
                                     const StrengthSampler& sampler, Rng& rng,
                                     bool keep_records = false);

/// Number of players in each boundary state.
std::map<State, std::size_t> result_frequencies(const ArenaGameOutcome& outcome);

struct ChiSquareTest {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit of the final results against occupancy_probability.
ChiSquareTest result_chi_square(const ArenaShape& shape, const ArenaGameOutcome& outcome);

/// M x n binary matrix of round outcomes, row per player.
class WinLossMatrix {
public:
    WinLossMatrix() = default;
    WinLossMatrix(std::size_t players, std::size_t rounds);
    /// Throws ValidationError on ragged rows or entries other than 0/1.
    static WinLossMatrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t players() const { return players_; }
    std::size_t rounds() const { return rounds_; }

    bool at(std::size_t player, std::size_t round) const {
        return cells_[player * rounds_ + round] != 0;
    }
    void set(std::size_t player, std::size_t round, bool won) {
        cells_[player * rounds_ + round] = won ? 1 : 0;
    }

    std::uint64_t row_sum(std::size_t player) const;
    std::uint64_t column_sum(std::size_t round) const;
    /// Sum over players of the squared row sums.
    std::uint64_t sum_of_squared_row_sums() const;

    bool operator==(const WinLossMatrix&) const = default;

private:
    std::size_t players_ = 0;
    std::size_t rounds_ = 0;
    std::vector<std::uint8_t> cells_;
};

enum class Population { finite, infinite };

std::optional<Population> parse_population(std::string_view name);
std::string_view population_name(Population population);

/// Strengths X ~ N(0,1) held fixed; each round a player performs X + (rho/sqrt 2) e.
/// Finite: opponents from a random matching each round (M must be even).
/// Infinite: a fresh N(0,1) opponent for every round, players on separate substreams.
WinLossMatrix simulate_1v1_fluctuations(std::size_t players, std::size_t rounds, double rho,
                                        Population population, Rng& rng);

} // namespace arena
