#include "arena/arena_core.h"
#include "arena/errors.h"

#include "oracles.h"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace arena;

namespace {

RatPoly poly(std::initializer_list<std::pair<std::size_t, long>> terms) {
    RatPoly p;
    for (const auto& [deg, c] : terms) p += RatPoly::monomial(c, deg);
    return p;
}

// x^a (1 - x^b)
RatPoly streak(std::size_t a, std::size_t b) { return poly({{a, 1}, {a + b, -1}}); }

// g_s(u) and g_s'(u) for every state, by running the recursion on numbers.
struct PointValue {
    double g;
    double p;
};
std::map<State, PointValue> pointwise_recursion(const ArenaShape& shape, double u) {
    std::map<State, PointValue> v;
    v[{0, 0}] = {u, 1.0};
    for (const State s : shape.states()) {
        if (s == State{0, 0}) continue;
        const auto [ww, wl] = source_weights(shape, s);
        PointValue out{0.0, 0.0};
        if (ww != 0) {
            const auto src = v.at({s.wins - 1, s.losses});
            out.g += ww.get_d() * src.g * src.g;
            out.p += ww.get_d() * 2.0 * src.g * src.p;
        }
        if (wl != 0) {
            const auto src = v.at({s.wins, s.losses - 1});
            out.g += wl.get_d() * (1.0 - (1.0 - src.g) * (1.0 - src.g));
            out.p += wl.get_d() * 2.0 * (1.0 - src.g) * src.p;
        }
        v[s] = out;
    }
    return v;
}

} // namespace

TEST_CASE("lattice of an m-n arena") {
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            const ArenaShape shape(m, n);
            CHECK(shape.states().size() == static_cast<std::size_t>((m + 1) * (n + 1) - 1));
            CHECK(shape.boundary_states().size() == static_cast<std::size_t>(m + n));
            CHECK_FALSE(shape.contains({m, n}));
            for (const State s : shape.boundary_states()) CHECK((s.wins == m || s.losses == n));
        }
    }
    CHECK_THROWS_AS(ArenaShape(0, 1), DomainError);
    CHECK_THROWS_AS(ArenaShape(2, -1), DomainError);
    const ArenaShape s22(2, 2);
    CHECK(s22.to_string() == "2-2");
    CHECK(s22.states().front() == State{0, 0});
    CHECK_THROWS_AS(occupancy_probability(s22, {2, 2}), DomainError);
    CHECK_THROWS_AS(occupancy_probability(s22, {3, 0}), DomainError);
}

TEST_CASE("occupancy probabilities") {
    CHECK(occupancy_probability(ArenaShape(5, 1), {5, 0}) == mpq_class(1, 32));
    CHECK(occupancy_probability(ArenaShape(1, 1), {1, 0}) == mpq_class(1, 2));
    const ArenaShape s22(2, 2);
    for (const State s : s22.boundary_states()) CHECK(occupancy_probability(s22, s) == mpq_class(1, 4));

    // 5-1 occupancies: 1/2, 1/4, 1/8, 1/16, 1/32, 1/32 for results 0..5
    const ArenaShape s51(5, 1);
    CHECK(occupancy_probability(s51, {0, 1}) == mpq_class(1, 2));
    CHECK(occupancy_probability(s51, {1, 1}) == mpq_class(1, 4));
    CHECK(occupancy_probability(s51, {2, 1}) == mpq_class(1, 8));
    CHECK(occupancy_probability(s51, {3, 1}) == mpq_class(1, 16));
    CHECK(occupancy_probability(s51, {4, 1}) == mpq_class(1, 32));

    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            const ArenaShape shape(m, n);
            mpq_class total = 0;
            for (const State s : shape.boundary_states()) total += occupancy_probability(shape, s);
            CHECK(total == 1);
            for (const State s : shape.states()) {
                CHECK(occupancy_probability(shape, s) == oracle::path_count_occupancy(shape, s));
            }
        }
    }
}

TEST_CASE("source weights") {
    const ArenaShape shape(4, 3);
    for (const State s : shape.interior_states()) {
        if (s == State{0, 0}) continue;
        const auto [w, l] = source_weights(shape, s);
        CHECK(w * (s.wins + s.losses) == s.wins);
        CHECK(l * (s.wins + s.losses) == s.losses);
    }
    for (const State s : shape.boundary_states()) {
        const auto [w, l] = source_weights(shape, s);
        CHECK(w + l == 1);
        CHECK((w == 0 || l == 0));
    }
}

TEST_CASE("cdf polynomials: small closed forms") {
    const auto g21 = cdf_polynomials(ArenaShape(2, 1));
    CHECK(g21.at({1, 0}) == poly({{2, 1}}));
    CHECK(g21.at({0, 1}) == poly({{1, 2}, {2, -1}}));

    const auto g22 = cdf_polynomials(ArenaShape(2, 2));
    const RatPoly u = RatPoly::identity();
    const RatPoly a = poly({{1, 2}, {2, -1}});
    const RatPoly b = poly({{2, 2}, {4, -1}});
    CHECK(g22.at({1, 1}) == a.square() * mpq_class(1, 2) + b * mpq_class(1, 2));

    const auto p11 = uniform_densities(ArenaShape(1, 1));
    CHECK(p11.at({1, 0}) == poly({{1, 2}}));
    CHECK(p11.at({0, 1}) == poly({{0, 2}, {1, -2}}));
    CHECK(p11.at({0, 0}) == RatPoly::constant(1));
    (void)u;
}

TEST_CASE("cdf polynomials match the exact Markov-chain model") {
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{
             {1, 1}, {2, 1}, {1, 3}, {2, 2}, {3, 3}, {5, 1}, {2, 4}, {4, 3}}) {
        const ArenaShape shape(m, n);
        const auto g = cdf_polynomials(shape);
        const auto model = oracle::markov_model(shape);
        const auto results = result_probability_polynomials(shape);
        const auto dens = uniform_densities(shape);
        for (const State s : shape.states()) {
            CHECK_MESSAGE(g.at(s).coefficients() == model.cdf.at(s).c, shape.to_string(), " ", s.to_string());
            const RatPoly reach = occupancy_probability(shape, s) * dens.at(s);
            CHECK(reach.coefficients() == model.reach.at(s).c);
        }
        for (const State s : shape.boundary_states()) {
            CHECK(results.at(s).coefficients() == model.reach.at(s).c);
        }
    }
}

TEST_CASE("5-1 result polynomials are the reference list") {
    const ArenaShape shape(5, 1);
    const auto r = result_probability_polynomials(shape);
    CHECK(r.at({0, 1}) == poly({{0, 1}, {1, -1}}));
    CHECK(r.at({1, 1}) == streak(1, 2));
    CHECK(r.at({2, 1}) == streak(3, 4));
    CHECK(r.at({3, 1}) == streak(7, 8));
    CHECK(r.at({4, 1}) == streak(15, 16));
    CHECK(r.at({5, 0}) == poly({{31, 1}}));
    // normalized densities differ from the list by the occupancy factor
    const auto p = uniform_densities(shape);
    CHECK(p.at({5, 0}) == poly({{31, 32}}));
    CHECK(p.at({0, 1}) == poly({{0, 2}, {1, -2}}));
}

TEST_CASE("CDF and density properties for m, n <= 6") {
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            const ArenaShape shape(m, n);
            const auto g = cdf_polynomials(shape);
            RatPoly mixture;
            for (const State s : shape.states()) {
                const RatPoly& gs = g.at(s);
                CHECK(gs.evaluate(mpq_class(0)) == 0);
                CHECK(gs.evaluate(mpq_class(1)) == 1);
                const RatPoly p = gs.derivative();
                CHECK(p.integral_unit() == 1);
                if (shape.is_boundary(s)) mixture += occupancy_probability(shape, s) * p;
            }
            // the results partition the population
            CHECK(mixture == RatPoly::constant(1));
        }
    }
}

TEST_CASE("recursion holds case by case as polynomial identities") {
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{3, 3}, {5, 1}, {1, 4}, {4, 2}}) {
        const ArenaShape shape(m, n);
        const auto g = cdf_polynomials(shape);
        const auto p = uniform_densities(shape);
        const RatPoly one = RatPoly::constant(1);
        for (const State s : shape.states()) {
            if (s == State{0, 0}) continue;
            const auto [ww, wl] = source_weights(shape, s);
            RatPoly expect;
            if (ww != 0) {
                const State a{s.wins - 1, s.losses};
                expect += mpq_class(2 * ww) * p.at(a) * g.at(a);
            }
            if (wl != 0) {
                const State b{s.wins, s.losses - 1};
                expect += mpq_class(2 * wl) * p.at(b) * (one - g.at(b));
            }
            CHECK(p.at(s) == expect);
        }
    }
}

TEST_CASE("cdf polynomials are nondecreasing") {
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 4; ++n) {
            const auto g = cdf_polynomials(ArenaShape(m, n));
            for (const auto& [s, gs] : g) {
                mpq_class prev = 0;
                for (long k = 0; k <= 1024; ++k) {
                    const mpq_class v = gs.evaluate(mpq_class(k, 1024));
                    CHECK(v >= prev);
                    prev = v;
                }
            }
        }
    }
}

TEST_CASE("exact engine refuses huge shapes") {
    CHECK_THROWS_AS(cdf_polynomials(ArenaShape(10, 3)), EngineLimitError);
    CHECK_NOTHROW(cdf_polynomials(ArenaShape(9, 3)));
}

TEST_CASE("cumulative integral") {
    const GridFunction q = GridFunction::sample([](double x) { return 1 + x + 3 * x * x; }, 0.0, 2.0, 64);
    const GridFunction cq = cumulative_integral(q);
    for (std::size_t k = 0; k <= 64; ++k) {
        const double x = cq.abscissa(k);
        CHECK(cq.values[k] == doctest::Approx(x + x * x / 2 + x * x * x).epsilon(1e-12));
    }
    // fourth order: halving h cuts the error of a smooth integrand by about 16
    auto error = [](std::size_t intervals) {
        const GridFunction c = cumulative_integral(
            GridFunction::sample([](double x) { return std::exp(3 * x); }, 0.0, 1.0, intervals));
        double worst = 0.0;
        for (std::size_t k = 0; k <= intervals; ++k) {
            worst = std::max(worst, std::abs(c.values[k] - (std::exp(3 * c.abscissa(k)) - 1) / 3));
        }
        return worst;
    };
    CHECK(error(64) / error(128) > 12.0);
    CHECK(error(1024) < 1e-9);
    CHECK(GridFunction::uniform_density(10).integral() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("grid engine: uniform prior on 5-1 against exact densities") {
    const ArenaShape shape(5, 1);
    const auto grid = density_recursion_grid(shape, GridFunction::uniform_density(4096));
    const auto exact = uniform_densities(shape);
    double worst = 0.0;
    for (const State s : shape.states()) {
        const auto& gf = grid.densities.at(s);
        for (std::size_t k = 0; k <= 4096; ++k) {
            worst = std::max(worst, std::abs(gf.values[k] - exact.at(s).evaluate(gf.abscissa(k))));
        }
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("grid engine agrees with the pointwise recursion for m, n <= 6") {
    double worst = 0.0;
    double worst_mass = 0.0;
    for (int m = 1; m <= 6; ++m) {
        for (int n = 1; n <= 6; ++n) {
            const ArenaShape shape(m, n);
            const auto grid = density_recursion_grid(shape, GridFunction::uniform_density(4096));
            for (std::size_t k = 0; k <= 4096; k += 4) {
                const double u = static_cast<double>(k) / 4096.0;
                const auto ref = pointwise_recursion(shape, u);
                for (const State s : shape.states()) {
                    worst = std::max(worst, std::abs(grid.densities.at(s).values[k] - ref.at(s).p));
                }
            }
            for (const State s : shape.states()) {
                worst_mass = std::max(worst_mass, std::abs(grid.densities.at(s).integral() - 1.0));
            }
        }
    }
    CHECK(worst < 1e-4);
    CHECK(worst_mass < 1e-4);
}

TEST_CASE("grid engine: normal prior, max of two") {
    const ArenaShape shape(1, 1);
    const GridFunction prior = GridFunction::standard_normal_density(8192);
    const auto grid = density_recursion_grid(shape, prior);
    const auto& p10 = grid.densities.at({1, 0});
    const auto& p01 = grid.densities.at({0, 1});
    double worst = 0.0;
    for (std::size_t k = 0; k <= 8192; ++k) {
        const double x = p10.abscissa(k);
        const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        const double cdf = oracle::erf_series_cdf(x);
        worst = std::max(worst, std::abs(p10.values[k] - 2.0 * phi * cdf));
        worst = std::max(worst, std::abs(p01.values[k] - 2.0 * phi * (1.0 - cdf)));
    }
    CHECK(worst < 1e-4);
    CHECK(p10.integral() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("grid engine input validation") {
    const ArenaShape shape(2, 2);
    GridFunction bad = GridFunction::uniform_density(100);
    bad.values[3] = -0.5;
    CHECK_THROWS_AS(density_recursion_grid(shape, bad), ValidationError);
    GridFunction heavy = GridFunction::uniform_density(100);
    for (auto& v : heavy.values) v = 2.0;
    CHECK_THROWS_AS(density_recursion_grid(shape, heavy), ValidationError);
    CHECK_THROWS_AS(density_recursion_grid(shape, GridFunction{0.0, 1.0, {1.0, 1.0}}), ValidationError);
}

TEST_CASE("arena random variable") {
    const ArenaShape s11(1, 1);
    auto pmf = arena_rv_pmf(s11, 0.5);
    CHECK(pmf.at({1, 0}) == 0.5);
    CHECK(pmf.at({0, 1}) == 0.5);
    pmf = arena_rv_pmf(s11, 1.0);
    CHECK(pmf.at({1, 0}) == 1.0);
    CHECK(pmf.at({0, 1}) == 0.0);
    CHECK_THROWS_AS(arena_rv_pmf(s11, 1.5), DomainError);
    CHECK_THROWS_AS(arena_rv_pmf(s11, -0.1), DomainError);

    arena::Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const ArenaShape shape(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4));
        const double lambda = rng.uniform();
        double total = 0.0;
        for (const auto& [s, v] : arena_rv_pmf(shape, lambda)) {
            CHECK(v >= 0.0);
            total += v;
        }
        CHECK(std::abs(total - 1.0) < 1e-9);
    }

    // grid prior gives the same law for the uniform density
    const auto grid_pmf = arena_rv_pmf(ArenaShape(3, 2), 0.4, GridFunction::uniform_density(4096));
    for (const auto& [s, v] : arena_rv_pmf(ArenaShape(3, 2), 0.4)) CHECK(grid_pmf.at(s) == doctest::Approx(v).epsilon(1e-4));
    CHECK_THROWS_AS(arena_rv_pmf(ArenaShape(3, 2), 1.4, GridFunction::uniform_density(64)), DomainError);
}

TEST_CASE("arena random variable against simulated runs of a strength-0.75 player") {
    const ArenaShape shape(2, 2);
    const oracle::OpponentSampler opponents(shape);
    arena::Rng rng(2024);
    std::map<State, double> counts;
    const int runs = 1000000;
    for (int r = 0; r < runs; ++r) {
        counts[oracle::play_run(shape, 0.75, std::cref(opponents), rng)] += 1.0;
    }
    for (const auto& [s, p] : arena_rv_pmf(shape, 0.75)) {
        const double sigma = std::sqrt(p * (1.0 - p) / runs);
        CHECK_MESSAGE(std::abs(counts[s] / runs - p) <= 3.0 * sigma, s.to_string());
    }
}
