#include "arena/bayes.h"

#include "arena/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arena {

namespace {

void check_step(const ArenaShape& shape, State prev, State next, std::size_t index) {
    const bool ok = shape.is_boundary(prev)
                        ? next == State{0, 0}
                        : (next == State{prev.wins + 1, prev.losses} ||
                           next == State{prev.wins, prev.losses + 1});
    if (!ok) {
        throw ValidationError("invalid transition " + prev.to_string() + " -> " +
                              next.to_string() + " at entry " + std::to_string(index));
    }
}

void validate_entries(const ArenaShape& shape, const std::vector<State>& entries) {
    for (std::size_t t = 0; t < entries.size(); ++t) {
        if (!shape.contains(entries[t])) {
            throw ValidationError("entry " + std::to_string(t) + " (" + entries[t].to_string() +
                                  ") is not a state of a " + shape.to_string() + " arena");
        }
    }
    if (entries.empty()) return;
    if (entries.front() != State{0, 0}) {
        throw ValidationError("a trajectory must start at state 0-0");
    }
    for (std::size_t t = 1; t < entries.size(); ++t) check_step(shape, entries[t - 1], entries[t], t);
}

// Likelihood polynomial of a set of results, one factor p_s^N per result.
RatPoly count_likelihood(const std::map<State, RatPoly>& densities, const ResultCounts& counts) {
    RatPoly out = RatPoly::constant(1);
    for (const auto& [s, c] : counts) {
        if (c != 0) out *= densities.at(s).pow(c);
    }
    return out;
}

long count_likelihood_degree(const ArenaShape& shape, const ResultCounts& counts) {
    // deg p_s = 2^(i+j) - 1
    long degree = 0;
    long max_single = 0;
    for (const State s : shape.boundary_states()) {
        const long d = (1L << (s.wins + s.losses)) - 1;
        max_single = std::max(max_single, d);
        if (auto it = counts.find(s); it != counts.end()) degree += d * static_cast<long>(it->second);
    }
    return degree + max_single;
}

struct GridLikelihood {
    GridStrengthLaws laws;
    GridFunction scaled;  // likelihood divided by its maximum
};

GridLikelihood grid_likelihood(const ArenaShape& shape, const ResultCounts& counts,
                               std::size_t intervals) {
    GridLikelihood out{density_recursion_grid(shape, GridFunction::uniform_density(intervals)), {}};
    const std::size_t points = intervals + 1;
    std::vector<double> log_l(points, 0.0);
    for (const auto& [s, c] : counts) {
        if (c == 0) continue;
        const auto& p = out.laws.densities.at(s).values;
        for (std::size_t k = 0; k < points; ++k) {
            log_l[k] += p[k] > 0.0 ? c * std::log(p[k]) : -std::numeric_limits<double>::infinity();
        }
    }
    const double peak = *std::max_element(log_l.begin(), log_l.end());
    if (!std::isfinite(peak)) throw DomainError("result counts have zero likelihood everywhere");
    out.scaled = GridFunction{0.0, 1.0, std::vector<double>(points)};
    for (std::size_t k = 0; k < points; ++k) out.scaled.values[k] = std::exp(log_l[k] - peak);
    return out;
}

} // namespace

RunHistory::RunHistory(const ArenaShape& shape, std::vector<State> entries)
    : shape_(shape), entries_(std::move(entries)) {
    validate_entries(shape_, entries_);
}

RunHistory RunHistory::from_outcomes(const ArenaShape& shape, std::string_view outcomes) {
    std::vector<State> entries;
    State current{0, 0};
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const char c = outcomes[k];
        if (c != 'W' && c != 'L') {
            throw ValidationError("outcome " + std::to_string(k) + " must be 'W' or 'L'");
        }
        if (entries.empty() || shape.is_boundary(current)) {
            current = {0, 0};
            entries.push_back(current);
        }
        current = c == 'W' ? State{current.wins + 1, current.losses}
                           : State{current.wins, current.losses + 1};
        entries.push_back(current);
    }
    return RunHistory(shape, std::move(entries));
}

std::map<State, unsigned> RunHistory::result_counts() const {
    std::map<State, unsigned> counts;
    for (const State s : entries_) {
        if (shape_.is_boundary(s)) ++counts[s];
    }
    return counts;
}

RunHistory RunHistory::concatenated(const std::vector<State>& future) const {
    std::vector<State> joined = entries_;
    joined.insert(joined.end(), future.begin(), future.end());
    return RunHistory(shape_, std::move(joined));
}

TransitionTally tally_transitions(const RunHistory& hist) {
    TransitionTally tally;
    const auto& e = hist.entries();
    for (std::size_t t = 1; t < e.size(); ++t) {
        if (e[t].wins > e[t - 1].wins) ++tally.wins_from[e[t - 1]];
        else if (e[t].losses > e[t - 1].losses) ++tally.losses_from[e[t - 1]];
    }
    return tally;
}

RatPoly trajectory_likelihood(const TransitionTally& tally, const std::map<State, RatPoly>& g) {
    RatPoly out = RatPoly::constant(1);
    const RatPoly one = RatPoly::constant(1);
    for (const auto& [s, c] : tally.wins_from) out *= g.at(s).pow(c);
    for (const auto& [s, c] : tally.losses_from) out *= (one - g.at(s)).pow(c);
    return out;
}

PosteriorDensity posterior_density(const ArenaShape& shape, const RunHistory& hist) {
    if (!(hist.shape() == shape)) throw ValidationError("history recorded for a different arena");
    const auto g = cdf_polynomials(shape);
    PosteriorDensity out;
    out.unnormalized = trajectory_likelihood(tally_transitions(hist), g);
    out.normalizer = out.unnormalized.integral_unit();
    out.normalized = out.unnormalized * mpq_class(1 / out.normalizer);
    return out;
}

mpq_class predictive_trajectory(const ArenaShape& shape, const RunHistory& hist,
                                const std::vector<State>& future) {
    if (!(hist.shape() == shape)) throw ValidationError("history recorded for a different arena");
    const RunHistory joined = hist.concatenated(future);
    const auto g = cdf_polynomials(shape);
    const mpq_class past = trajectory_likelihood(tally_transitions(hist), g).integral_unit();
    const mpq_class all = trajectory_likelihood(tally_transitions(joined), g).integral_unit();
    return all / past;
}

std::optional<Engine> parse_engine(std::string_view name) {
    if (name == "exact") return Engine::exact;
    if (name == "grid") return Engine::grid;
    if (name == "auto") return Engine::automatic;
    return std::nullopt;
}

std::string_view engine_name(Engine engine) {
    switch (engine) {
    case Engine::exact: return "exact";
    case Engine::grid: return "grid";
    case Engine::automatic: return "auto";
    }
    return "auto";
}

Engine resolve_engine(const ArenaShape& shape, Engine requested) {
    if (requested != Engine::automatic) return requested;
    return shape.win_threshold() + shape.loss_threshold() <= kPreferExactShapeSum ? Engine::exact
                                                                                  : Engine::grid;
}

void validate_result_counts(const ArenaShape& shape, const ResultCounts& counts) {
    for (const auto& [s, c] : counts) {
        if (!shape.is_boundary(s)) {
            throw ValidationError("state " + s.to_string() + " is not a result of a " +
                                  shape.to_string() + " arena");
        }
    }
}

ResultDistribution predictive_result_distribution(const ArenaShape& shape,
                                                  const ResultCounts& counts, Engine engine,
                                                  std::size_t grid_intervals) {
    validate_result_counts(shape, counts);
    ResultDistribution out;
    out.engine = resolve_engine(shape, engine);

    if (out.engine == Engine::exact) {
        if (shape.win_threshold() + shape.loss_threshold() > kMaxExactShapeSum ||
            count_likelihood_degree(shape, counts) > kMaxExactLikelihoodDegree) {
            throw EngineLimitError("exact integration for a " + shape.to_string() +
                                   " arena with these counts is too large; use the grid engine");
        }
        const auto densities = uniform_densities(shape);
        const RatPoly likelihood = count_likelihood(densities, counts);
        const mpq_class denominator = likelihood.integral_unit();
        std::map<State, mpq_class> exact;
        for (const State s : shape.boundary_states()) {
            const mpq_class p = occupancy_probability(shape, s) *
                                (densities.at(s) * likelihood).integral_unit() / denominator;
            out.probs.emplace(s, p.get_d());
            exact.emplace(s, p);
        }
        out.exact = std::move(exact);
        return out;
    }

    if (grid_intervals < 2) throw ValidationError("grid engine needs at least 2 intervals");
    const GridLikelihood lk = grid_likelihood(shape, counts, grid_intervals);
    const std::size_t points = grid_intervals + 1;
    double total = 0.0;
    for (const State s : shape.boundary_states()) {
        const auto& p = lk.laws.densities.at(s).values;
        GridFunction integrand{0.0, 1.0, std::vector<double>(points)};
        for (std::size_t k = 0; k < points; ++k) integrand.values[k] = p[k] * lk.scaled.values[k];
        const double v = std::max(occupancy_probability(shape, s).get_d() * integrand.integral(), 0.0);
        out.probs.emplace(s, v);
        total += v;
    }
    // Sum over results of P(A_s) p_s equals the original density, so the total
    // is the normalizing integral computed on the same grid.
    for (auto& [s, v] : out.probs) v /= total;
    return out;
}

std::vector<double> count_posterior_on_points(const ArenaShape& shape, const ResultCounts& counts,
                                              Engine engine, const std::vector<double>& points,
                                              std::size_t grid_intervals) {
    validate_result_counts(shape, counts);
    std::vector<double> out;
    out.reserve(points.size());
    if (resolve_engine(shape, engine) == Engine::exact) {
        const RatPoly likelihood = count_likelihood(uniform_densities(shape), counts);
        const mpq_class z = likelihood.integral_unit();
        for (const double x : points) {
            if (!(x >= 0.0 && x <= 1.0)) throw DomainError("posterior evaluated outside [0, 1]");
            out.push_back(mpq_class(likelihood.evaluate(mpq_class(x)) / z).get_d());
        }
        return out;
    }
    const GridLikelihood lk = grid_likelihood(shape, counts, grid_intervals);
    const double z = lk.scaled.integral();
    for (const double x : points) out.push_back(lk.scaled.interpolate(x) / z);
    return out;
}

} // namespace arena
