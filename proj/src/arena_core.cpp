#include "arena/arena_core.h"

#include "arena/errors.h"

#include <cmath>
#include <string>

namespace arena {

namespace {

mpz_class binomial(int n, int k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

mpq_class half_power(int exponent) {
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(exponent);
    return mpq_class(1, den);
}

void require_exact_feasible(const ArenaShape& shape) {
    const int sum = shape.win_threshold() + shape.loss_threshold();
    if (sum > kMaxExactShapeSum) {
        throw EngineLimitError("exact polynomials for a " + shape.to_string() +
                               " arena reach degree 2^" + std::to_string(sum - 1) +
                               "; use the grid engine instead");
    }
}

// Second-order one-sided/central estimate of f' at grid index k.
double grid_slope(const std::vector<double>& v, std::size_t k, double h) {
    const std::size_t last = v.size() - 1;
    if (k == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    if (k == last) return (3.0 * v[last] - 4.0 * v[last - 1] + v[last - 2]) / (2.0 * h);
    return (v[k + 1] - v[k - 1]) / (2.0 * h);
}

void validate_prior(const GridFunction& prior) {
    if (prior.values.size() < 3) throw ValidationError("prior grid needs at least 3 points");
    if (!(prior.upper > prior.lower) || !std::isfinite(prior.lower) ||
        !std::isfinite(prior.upper)) {
        throw ValidationError("prior grid needs a finite interval with lower < upper");
    }
    for (std::size_t k = 0; k < prior.values.size(); ++k) {
        const double v = prior.values[k];
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("prior density must be finite and nonnegative (index " +
                                  std::to_string(k) + ")");
        }
    }
    const double mass = prior.integral();
    if (std::abs(mass - 1.0) > 1e-6) {
        throw ValidationError("prior density integrates to " + std::to_string(mass) +
                              ", expected 1 within 1e-6");
    }
}

} // namespace

mpq_class occupancy_probability(const ArenaShape& shape, State s) {
    shape.require_state(s);
    const int m = shape.win_threshold();
    const int n = shape.loss_threshold();
    const int level = s.wins + s.losses;
    if (s.wins == m) return mpq_class(binomial(m + s.losses - 1, m - 1)) * half_power(level);
    if (s.losses == n) return mpq_class(binomial(n + s.wins - 1, n - 1)) * half_power(level);
    return mpq_class(binomial(level, s.wins)) * half_power(level);
}

std::pair<mpq_class, mpq_class> source_weights(const ArenaShape& shape, State s) {
    shape.require_state(s);
    const mpq_class here = occupancy_probability(shape, s);
    mpq_class win = 0;
    mpq_class loss = 0;
    const State from_win{s.wins - 1, s.losses};
    const State from_loss{s.wins, s.losses - 1};
    if (shape.contains(from_win) && !shape.is_boundary(from_win)) {
        win = occupancy_probability(shape, from_win) / 2 / here;
    }
    if (shape.contains(from_loss) && !shape.is_boundary(from_loss)) {
        loss = occupancy_probability(shape, from_loss) / 2 / here;
    }
    return {win, loss};
}

std::map<State, RatPoly> cdf_polynomials(const ArenaShape& shape) {
    require_exact_feasible(shape);
    std::map<State, RatPoly> g;
    std::map<State, RatPoly> squares;
    const RatPoly one = RatPoly::constant(1);

    auto square_of = [&](State s) -> const RatPoly& {
        auto it = squares.find(s);
        if (it == squares.end()) it = squares.emplace(s, g.at(s).square()).first;
        return it->second;
    };

    for (const State s : shape.states()) {
        if (s == State{0, 0}) {
            g.emplace(s, RatPoly::identity());
            continue;
        }
        const auto [w_win, w_loss] = source_weights(shape, s);
        RatPoly value;
        if (w_win != 0) value += w_win * square_of({s.wins - 1, s.losses});
        if (w_loss != 0) {
            // 1 - (1 - g)^2 = 2g - g^2
            const State src{s.wins, s.losses - 1};
            value += w_loss * (g.at(src) * mpq_class(2) - square_of(src));
        }
        g.emplace(s, std::move(value));
    }
    return g;
}

std::map<State, RatPoly> uniform_densities(const ArenaShape& shape) {
    std::map<State, RatPoly> out;
    for (auto& [s, poly] : cdf_polynomials(shape)) out.emplace(s, poly.derivative());
    return out;
}

std::map<State, RatPoly> result_probability_polynomials(const ArenaShape& shape) {
    const auto densities = uniform_densities(shape);
    std::map<State, RatPoly> out;
    for (const State s : shape.boundary_states()) {
        out.emplace(s, occupancy_probability(shape, s) * densities.at(s));
    }
    return out;
}

double GridFunction::interpolate(double x) const {
    const double slack = 1e-12 * (upper - lower);
    if (!(x >= lower - slack && x <= upper + slack)) {
        throw DomainError("point " + std::to_string(x) + " lies outside the grid support [" +
                          std::to_string(lower) + ", " + std::to_string(upper) + "]");
    }
    const double pos = (x - lower) / step();
    const std::size_t last = intervals();
    if (pos <= 0.0) return values.front();
    if (pos >= static_cast<double>(last)) return values.back();
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    return values[k] + frac * (values[k + 1] - values[k]);
}

double GridFunction::integral() const {
    if (values.size() < 2) return 0.0;
    return cumulative_integral(*this).values.back();
}

GridFunction GridFunction::sample(const std::function<double(double)>& f, double lower,
                                  double upper, std::size_t intervals) {
    GridFunction out{lower, upper, std::vector<double>(intervals + 1)};
    for (std::size_t k = 0; k <= intervals; ++k) out.values[k] = f(out.abscissa(k));
    return out;
}

GridFunction GridFunction::uniform_density(std::size_t intervals) {
    return GridFunction{0.0, 1.0, std::vector<double>(intervals + 1, 1.0)};
}

GridFunction GridFunction::standard_normal_density(std::size_t intervals) {
    constexpr double inv_sqrt_2pi = 0.39894228040143267794;
    return sample([](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, -8.0, 8.0,
                  intervals);
}

GridFunction cumulative_integral(const GridFunction& f) {
    GridFunction out{f.lower, f.upper, std::vector<double>(f.values.size(), 0.0)};
    if (f.values.size() < 2) return out;
    const double h = f.step();
    const auto& v = f.values;
    const bool corrected = v.size() >= 3;
    const double slope0 = corrected ? grid_slope(v, 0, h) : 0.0;
    double trapezoid = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        trapezoid += 0.5 * h * (v[k - 1] + v[k]);
        double value = trapezoid;
        if (corrected) value -= h * h / 12.0 * (grid_slope(v, k, h) - slope0);
        out.values[k] = value;
    }
    return out;
}

GridStrengthLaws density_recursion_grid(const ArenaShape& shape, const GridFunction& prior_pdf) {
    validate_prior(prior_pdf);
    GridStrengthLaws laws;
    const std::size_t points = prior_pdf.values.size();

    laws.densities.emplace(State{0, 0}, prior_pdf);
    laws.cdfs.emplace(State{0, 0}, cumulative_integral(prior_pdf));

    for (const State s : shape.states()) {
        if (s == State{0, 0}) continue;
        const auto [w_win, w_loss] = source_weights(shape, s);
        GridFunction density{prior_pdf.lower, prior_pdf.upper, std::vector<double>(points, 0.0)};
        if (w_win != 0) {
            const State src{s.wins - 1, s.losses};
            const auto& p = laws.densities.at(src).values;
            const auto& c = laws.cdfs.at(src).values;
            const double w = 2.0 * w_win.get_d();
            for (std::size_t k = 0; k < points; ++k) {
                density.values[k] += w * p[k] * std::max(c[k], 0.0);
            }
        }
        if (w_loss != 0) {
            const State src{s.wins, s.losses - 1};
            const auto& p = laws.densities.at(src).values;
            const auto& c = laws.cdfs.at(src).values;
            const double total = c.back();
            const double w = 2.0 * w_loss.get_d();
            for (std::size_t k = 0; k < points; ++k) {
                density.values[k] += w * p[k] * std::max(total - c[k], 0.0);
            }
        }
        laws.cdfs.emplace(s, cumulative_integral(density));
        laws.densities.emplace(s, std::move(density));
    }
    return laws;
}

std::map<State, double> arena_rv_pmf(const ArenaShape& shape, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("strength " + std::to_string(lambda) +
                          " is outside the support [0, 1] of the uniform original density");
    }
    std::map<State, double> pmf;
    for (const auto& [s, poly] : result_probability_polynomials(shape)) {
        pmf.emplace(s, poly.evaluate(lambda));
    }
    return pmf;
}

std::map<State, double> arena_rv_pmf(const ArenaShape& shape, double lambda,
                                     const GridFunction& prior_pdf) {
    const auto laws = density_recursion_grid(shape, prior_pdf);
    const double base = laws.densities.at({0, 0}).interpolate(lambda);
    if (!(base > 0.0)) {
        throw DomainError("original density vanishes at strength " + std::to_string(lambda));
    }
    std::map<State, double> pmf;
    double mass = 0.0;
    for (const State s : shape.boundary_states()) {
        const double v = occupancy_probability(shape, s).get_d() *
                         laws.densities.at(s).interpolate(lambda) / base;
        pmf.emplace(s, v);
        mass += v;
    }
    // The grid recursion only conserves probability to quadrature accuracy.
    for (auto& [s, v] : pmf) v /= mass;
    return pmf;
}

} // namespace arena
