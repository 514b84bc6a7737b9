#pragma once

#include "arena/arena_core.h"
#include "arena/rational_poly.h"
#include "arena/shape.h"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace arena {

/// Observed state sequence of one player across consecutive runs.
///
/// Every run starts with an explicit (0,0) entry. After a boundary state the
/// next entry must be (0,0); otherwise exactly one of wins/losses grows by one.
class RunHistory {
public:
    RunHistory(const ArenaShape& shape, std::vector<State> entries);

    /// Builds the trajectory from round outcomes ('W'/'L'), inserting (0,0)
    /// at the start of each run. The last run may be incomplete.
    static RunHistory from_outcomes(const ArenaShape& shape, std::string_view outcomes);

    const ArenaShape& shape() const { return shape_; }
    const std::vector<State>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Number of times each boundary state appears.
    std::map<State, unsigned> result_counts() const;

    /// hist followed by future; throws ValidationError if the join breaks the rules.
    RunHistory concatenated(const std::vector<State>& future) const;

private:
    ArenaShape shape_;
    std::vector<State> entries_;
};

/// Exponents of g_s (wins from s) and 1 - g_s (losses from s) in a trajectory likelihood.
struct TransitionTally {
    std::map<State, unsigned> wins_from;
    std::map<State, unsigned> losses_from;
};

TransitionTally tally_transitions(const RunHistory& hist);

/// Likelihood of the trajectory as a polynomial in u = F(lambda).
RatPoly trajectory_likelihood(const TransitionTally& tally, const std::map<State, RatPoly>& g);

struct PosteriorDensity {
    RatPoly unnormalized;
    mpq_class normalizer;  // integral of unnormalized over [0, 1]
    RatPoly normalized;
};

/// Posterior strength density after hist, uniform original density on [0, 1].
PosteriorDensity posterior_density(const ArenaShape& shape, const RunHistory& hist);

/// Posterior predictive probability that the player's next states are `future`.
/// The value does not depend on the original density.
mpq_class predictive_trajectory(const ArenaShape& shape, const RunHistory& hist,
                                const std::vector<State>& future);

enum class Engine { automatic, exact, grid };

std::optional<Engine> parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

/// Engine used when `automatic` is requested.
Engine resolve_engine(const ArenaShape& shape, Engine requested);

inline constexpr std::size_t kDefaultGridIntervals = 8192;
/// Largest likelihood degree the exact result predictor will attempt.
inline constexpr long kMaxExactLikelihoodDegree = 1L << 15;

using ResultCounts = std::map<State, unsigned>;

struct ResultDistribution {
    Engine engine = Engine::exact;
    std::map<State, double> probs;
    /// Exact probabilities, present for the exact engine.
    std::optional<std::map<State, mpq_class>> exact;
};

/// Distribution of the next run's result given counts of past results.
ResultDistribution predictive_result_distribution(const ArenaShape& shape,
                                                  const ResultCounts& counts, Engine engine,
                                                  std::size_t grid_intervals = kDefaultGridIntervals);

/// Posterior strength density implied by result counts, evaluated at the given points of [0, 1].
std::vector<double> count_posterior_on_points(const ArenaShape& shape, const ResultCounts& counts,
                                              Engine engine, const std::vector<double>& points,
                                              std::size_t grid_intervals = kDefaultGridIntervals);

/// Throws ValidationError for counts on states that are not results of the arena.
void validate_result_counts(const ArenaShape& shape, const ResultCounts& counts);

} // namespace arena
