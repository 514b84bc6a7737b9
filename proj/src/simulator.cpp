#include "arena/simulator.h"

#include "arena/arena_core.h"
#include "arena/errors.h"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace arena {

namespace {

// true when a beats b
bool beats(double a, double b, Rng& rng) {
    if (a != b) return a > b;
    return rng.coin();
}

} // namespace

bool Matching::is_involution() const {
    for (std::size_t a = 0; a < partner.size(); ++a) {
        const std::size_t b = partner[a];
        if (b >= partner.size() || b == a || partner[b] != a) return false;
    }
    return true;
}

Matching random_matching(std::size_t players, Rng& rng) {
    if (players == 0 || players % 2 != 0) {
        throw DomainError("random matching needs a positive even player count, got " +
                          std::to_string(players));
    }
    std::vector<std::size_t> order(players);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Matching m;
    m.partner.resize(players);
    for (std::size_t k = 0; k < players; k += 2) {
        m.partner[order[k]] = order[k + 1];
        m.partner[order[k + 1]] = order[k];
    }
    return m;
}

StrengthSampler uniform_strengths() {
    return [](Rng& rng) { return rng.uniform(); };
}

StrengthSampler normal_strengths() {
    return [](Rng& rng) { return std::normal_distribution<double>()(rng); };
}

ArenaGameOutcome simulate_arena_game(const ArenaShape& shape, int log2_extra,
                                     const StrengthSampler& sampler, Rng& rng,
                                     bool keep_records) {
    const int exponent = shape.win_threshold() + shape.loss_threshold() + log2_extra;
    if (log2_extra < 0 || exponent > 40) {
        throw DomainError("player count 2^" + std::to_string(exponent) + " is not supported");
    }
    const std::size_t players = std::size_t{1} << exponent;

    ArenaGameOutcome out;
    out.strengths.resize(players);
    for (auto& x : out.strengths) x = sampler(rng);
    std::vector<State> state(players, State{0, 0});

    // Cohorts keyed by state; every player of a cohort is at the same level.
    std::map<State, std::vector<std::size_t>> cohorts;
    cohorts[{0, 0}].resize(players);
    std::iota(cohorts[{0, 0}].begin(), cohorts[{0, 0}].end(), std::size_t{0});

    for (int round = 0; !cohorts.empty(); ++round) {
        std::map<State, std::vector<std::size_t>> next;
        for (auto& [s, members] : cohorts) {
            if (members.size() % 2 != 0) {
                throw std::logic_error("odd cohort of " + std::to_string(members.size()) +
                                       " players in state " + s.to_string());
            }
            out.visits[s] += members.size();
            std::shuffle(members.begin(), members.end(), rng);
            for (std::size_t k = 0; k < members.size(); k += 2) {
                const std::size_t a = members[k];
                const std::size_t b = members[k + 1];
                const bool a_wins = beats(out.strengths[a], out.strengths[b], rng);
                for (const auto& [p, won] : {std::pair{a, a_wins}, std::pair{b, !a_wins}}) {
                    MatchRecord rec{p, round, 0, s, won};
                    const State after = rec.state_after();
                    if (keep_records) out.records.push_back(rec);
                    state[p] = after;
                    if (shape.is_boundary(after)) ++out.visits[after];
                    else next[after].push_back(p);
                }
            }
        }
        cohorts = std::move(next);
    }
    out.results = std::move(state);
    return out;
}

std::map<State, std::size_t> result_frequencies(const ArenaGameOutcome& outcome) {
    std::map<State, std::size_t> counts;
    for (const State s : outcome.results) ++counts[s];
    return counts;
}

ChiSquareTest result_chi_square(const ArenaShape& shape, const ArenaGameOutcome& outcome) {
    const auto observed = result_frequencies(outcome);
    const double total = static_cast<double>(outcome.results.size());
    ChiSquareTest test;
    const auto results = shape.boundary_states();
    for (const State s : results) {
        const double expected = total * occupancy_probability(shape, s).get_d();
        const auto it = observed.find(s);
        const double seen = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        test.statistic += (seen - expected) * (seen - expected) / expected;
    }
    test.dof = static_cast<int>(results.size()) - 1;
    if (test.dof > 0) {
        const boost::math::chi_squared_distribution<double> dist(test.dof);
        test.p_value = boost::math::cdf(boost::math::complement(dist, test.statistic));
    }
    return test;
}

WinLossMatrix::WinLossMatrix(std::size_t players, std::size_t rounds)
    : players_(players), rounds_(rounds), cells_(players * rounds, 0) {}

WinLossMatrix WinLossMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw ValidationError("win-loss matrix has no rows");
    WinLossMatrix out(rows.size(), rows.front().size());
    for (std::size_t l = 0; l < rows.size(); ++l) {
        if (rows[l].size() != out.rounds_) {
            throw ValidationError("row " + std::to_string(l + 1) + " has " +
                                  std::to_string(rows[l].size()) + " entries, expected " +
                                  std::to_string(out.rounds_));
        }
        for (std::size_t k = 0; k < rows[l].size(); ++k) {
            const int v = rows[l][k];
            if (v != 0 && v != 1) {
                throw ValidationError("row " + std::to_string(l + 1) + " column " +
                                      std::to_string(k + 1) + " is not binary");
            }
            out.set(l, k, v == 1);
        }
    }
    return out;
}

std::uint64_t WinLossMatrix::row_sum(std::size_t player) const {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < rounds_; ++k) sum += cells_[player * rounds_ + k];
    return sum;
}

std::uint64_t WinLossMatrix::column_sum(std::size_t round) const {
    std::uint64_t sum = 0;
    for (std::size_t l = 0; l < players_; ++l) sum += cells_[l * rounds_ + round];
    return sum;
}

std::uint64_t WinLossMatrix::sum_of_squared_row_sums() const {
    std::uint64_t sum = 0;
    for (std::size_t l = 0; l < players_; ++l) {
        const std::uint64_t y = row_sum(l);
        sum += y * y;
    }
    return sum;
}

std::optional<Population> parse_population(std::string_view name) {
    if (name == "finite") return Population::finite;
    if (name == "infinite") return Population::infinite;
    return std::nullopt;
}

std::string_view population_name(Population population) {
    return population == Population::finite ? "finite" : "infinite";
}

WinLossMatrix simulate_1v1_fluctuations(std::size_t players, std::size_t rounds, double rho,
                                        Population population, Rng& rng) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw DomainError("fluctuation coefficient must be finite and nonnegative");
    }
    if (players == 0) throw DomainError("need at least one player");
    if (population == Population::finite && players % 2 != 0) {
        throw DomainError("finite population needs an even player count, got " +
                          std::to_string(players));
    }
    const double scale = rho / std::sqrt(2.0);
    WinLossMatrix out(players, rounds);

    if (population == Population::infinite) {
        for (std::size_t l = 0; l < players; ++l) {
            Rng sub = rng.substream(l);
            std::normal_distribution<double> normal;
            const double x = normal(sub);
            for (std::size_t k = 0; k < rounds; ++k) {
                const double mine = x + scale * normal(sub);
                const double theirs = normal(sub) + scale * normal(sub);
                out.set(l, k, beats(mine, theirs, sub));
            }
        }
        return out;
    }

    std::normal_distribution<double> normal;
    std::vector<double> strength(players);
    for (auto& x : strength) x = normal(rng);
    std::vector<std::size_t> order(players);
    std::vector<double> performance(players);
    for (std::size_t k = 0; k < rounds; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t l = 0; l < players; ++l) performance[l] = strength[l] + scale * normal(rng);
        for (std::size_t q = 0; q < players; q += 2) {
            const std::size_t a = order[q];
            const std::size_t b = order[q + 1];
            const bool a_wins = beats(performance[a], performance[b], rng);
            out.set(a, k, a_wins);
            out.set(b, k, !a_wins);
        }
    }
    return out;
}

} // namespace arena
