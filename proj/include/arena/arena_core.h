#pragma once

#include "arena/rational_poly.h"
#include "arena/shape.h"

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>

namespace arena {

/// Largest m+n the exact polynomial engine accepts. Degrees of g_{i,j} grow
/// like 2^(i+j), so 12 already means polynomials of degree 4096.
inline constexpr int kMaxExactShapeSum = 12;
/// Default m+n up to which callers should prefer the exact engine.
inline constexpr int kPreferExactShapeSum = 10;

/// Probability that a player reaches state s in one run, independent of strength.
mpq_class occupancy_probability(const ArenaShape& shape, State s);

/// Fraction of the players in state s that arrived by winning from (i-1, j)
/// (first) and by losing from (i, j-1) (second). Absent sources weigh zero.
std::pair<mpq_class, mpq_class> source_weights(const ArenaShape& shape, State s);

/// g_{i,j} with F_{i,j}(x) = g_{i,j}(F(x)) for every state of the lattice.
std::map<State, RatPoly> cdf_polynomials(const ArenaShape& shape);

/// Strength densities p_{i,j} on [0, 1] under a uniform original density.
std::map<State, RatPoly> uniform_densities(const ArenaShape& shape);

/// P(result s | X = x) = P(A_s) p_s(x) for each boundary s, uniform original density.
std::map<State, RatPoly> result_probability_polynomials(const ArenaShape& shape);

/// A function sampled at K+1 equally spaced points of [lower, upper].
struct GridFunction {
    double lower = 0.0;
    double upper = 1.0;
    std::vector<double> values;

    std::size_t intervals() const { return values.empty() ? 0 : values.size() - 1; }
    double step() const { return (upper - lower) / static_cast<double>(intervals()); }
    double abscissa(std::size_t k) const { return lower + step() * static_cast<double>(k); }

    /// Linear interpolation; throws DomainError outside [lower, upper].
    double interpolate(double x) const;
    /// Integral over the whole support.
    double integral() const;

    static GridFunction sample(const std::function<double(double)>& f, double lower,
                               double upper, std::size_t intervals);
    static GridFunction uniform_density(std::size_t intervals);
    /// Standard normal density on [-8, 8].
    static GridFunction standard_normal_density(std::size_t intervals);
};

/// Running integral from the lower end; same grid as the input.
///
/// Trapezoid sums with the Euler-Maclaurin end correction, which keeps the
/// result fourth order for smooth integrands.
GridFunction cumulative_integral(const GridFunction& f);

struct GridStrengthLaws {
    std::map<State, GridFunction> densities;
    std::map<State, GridFunction> cdfs;
};

/// Numerical strength densities and CDFs for every state, for any prior density
/// on a finite interval. The prior must be nonnegative and integrate to 1 within 1e-6.
GridStrengthLaws density_recursion_grid(const ArenaShape& shape, const GridFunction& prior_pdf);

/// Result law of a player of known strength lambda, uniform original density on [0, 1].
std::map<State, double> arena_rv_pmf(const ArenaShape& shape, double lambda);

/// Result law of a player of known strength lambda under a grid prior.
std::map<State, double> arena_rv_pmf(const ArenaShape& shape, double lambda,
                                     const GridFunction& prior_pdf);

} // namespace arena
