#include "commands.h"

#include "io.h"

#include "arena/arena_core.h"
#include "arena/bridge.h"
#include "arena/errors.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numeric>

namespace arena::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

Json header(const char* command) {
    Json doc;
    doc["schema"] = kSchema;
    doc["command"] = command;
    return doc;
}

std::string shape_label(const ArenaShape& shape) {
    return std::to_string(shape.win_threshold()) + "," + std::to_string(shape.loss_threshold());
}

} // namespace

void cmd_predict(const PredictConfig& config, std::istream& history, std::ostream& out) {
    const ArenaShape shape = parse_shape(config.shape);
    const ResultCounts counts = read_history(history, shape, config.fifa, config.source);
    const Engine engine = resolve_engine(shape, config.engine);
    const ResultDistribution dist =
        predictive_result_distribution(shape, counts, engine, config.grid_size);

    std::vector<double> grid(101);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) / 100.0;
    const std::vector<double> density =
        count_posterior_on_points(shape, counts, engine, grid, config.grid_size);

    unsigned runs = 0;
    for (const auto& [s, c] : counts) runs += c;
    auto frequency = [&](State s) {
        const auto it = counts.find(s);
        return runs == 0 || it == counts.end() ? 0.0 : static_cast<double>(it->second) / runs;
    };

    if (config.format == Format::machine) {
        Json doc = header("predict");
        doc["shape"] = shape_label(shape);
        doc["engine"] = std::string(engine_name(engine));
        doc["grid_size"] = config.grid_size;
        doc["fifa"] = config.fifa;
        doc["runs"] = runs;
        Json rows = Json::array();
        for (const State s : shape.boundary_states()) {
            Json row;
            row["result"] = s.to_string();
            row["count"] = counts.count(s) ? counts.at(s) : 0U;
            row["probability"] = dist.probs.at(s);
            if (dist.exact) row["exact"] = dist.exact->at(s).get_str();
            if (config.baseline) row["frequency"] = frequency(s);
            rows.push_back(row);
        }
        doc["distribution"] = rows;
        doc["posterior_density"] = {{"u", grid}, {"density", density}};
        emit(out, doc);
        return;
    }

    out << "# shape " << shape.to_string() << ", engine " << engine_name(engine);
    if (engine == Engine::grid) out << " (K=" << config.grid_size << ")";
    out << ", " << runs << " past runs\n";
    out << pad("result", 8) << pad("count", 7) << pad("probability", 14);
    if (config.baseline) out << "frequency";
    out << '\n';
    for (const State s : shape.boundary_states()) {
        out << pad(s.to_string(), 8) << pad(std::to_string(counts.count(s) ? counts.at(s) : 0U), 7)
            << pad(num(dist.probs.at(s)), 14);
        if (config.baseline) out << fixed(frequency(s), 4);
        out << '\n';
    }
    out << "\n# posterior density of u = F(strength)\n" << pad("u", 8) << "density\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out << pad(fixed(grid[k], 2), 8) << num(density[k]) << '\n';
    }
}

void cmd_simulate(const SimulateConfig& config, std::ostream& out) {
    Rng rng(config.seed);

    if (config.shape) {
        const ArenaShape shape = parse_shape(*config.shape);
        if (config.log2_extra < 0 || config.log2_extra > 24) {
            throw ValidationError("--log2-extra must lie in 0..24");
        }
        if (shape.win_threshold() + shape.loss_threshold() + config.log2_extra > 30) {
            throw ValidationError("arena game would need more than 2^30 players");
        }
        const ArenaGameOutcome game =
            simulate_arena_game(shape, config.log2_extra, uniform_strengths(), rng);
        const auto freq = result_frequencies(game);
        const ChiSquareTest chi = result_chi_square(shape, game);
        const double total = static_cast<double>(game.results.size());

        if (config.format == Format::machine) {
            Json doc = header("simulate");
            doc["mode"] = "arena_game";
            doc["seed"] = config.seed;
            doc["shape"] = shape_label(shape);
            doc["log2_extra"] = config.log2_extra;
            doc["players"] = game.results.size();
            Json rows = Json::array();
            for (const State s : shape.boundary_states()) {
                const std::size_t c = freq.count(s) ? freq.at(s) : 0;
                rows.push_back({{"result", s.to_string()},
                                {"count", c},
                                {"frequency", static_cast<double>(c) / total},
                                {"occupancy", occupancy_probability(shape, s).get_d()}});
            }
            doc["results"] = rows;
            doc["chi_square"] = {{"statistic", chi.statistic}, {"dof", chi.dof}, {"p_value", chi.p_value}};
            emit(out, doc);
            return;
        }
        out << "# arena game, shape " << shape.to_string() << ", " << game.results.size()
            << " players, seed " << config.seed << '\n';
        out << pad("result", 8) << pad("count", 10) << pad("frequency", 12) << "occupancy\n";
        for (const State s : shape.boundary_states()) {
            const std::size_t c = freq.count(s) ? freq.at(s) : 0;
            out << pad(s.to_string(), 8) << pad(std::to_string(c), 10)
                << pad(num(static_cast<double>(c) / total), 12)
                << num(occupancy_probability(shape, s).get_d()) << '\n';
        }
        out << "chi-square " << num(chi.statistic) << " on " << chi.dof << " dof, p = "
            << num(chi.p_value) << '\n';
        return;
    }

    if (config.rounds < 1) throw ValidationError("--rounds must be at least 1");
    if (config.players == 0 || config.players > (std::size_t{1} << 24)) {
        throw ValidationError("--players must lie in 1..2^24");
    }
    if (config.population == Population::finite && config.players % 2 != 0) {
        throw ValidationError("--players must be even for a finite population");
    }
    if (!(config.rho >= 0.0) || !std::isfinite(config.rho)) {
        throw ValidationError("--rho must be finite and nonnegative");
    }
    const WinLossMatrix m =
        simulate_1v1_fluctuations(config.players, config.rounds, config.rho, config.population, rng);

    if (config.format == Format::machine) {
        Json doc = header("simulate");
        doc["mode"] = "fluctuations";
        doc["seed"] = config.seed;
        doc["players"] = config.players;
        doc["rounds"] = config.rounds;
        doc["rho"] = config.rho;
        doc["population"] = std::string(population_name(config.population));
        Json rows = Json::array();
        std::string row(m.rounds(), '0');
        for (std::size_t l = 0; l < m.players(); ++l) {
            for (std::size_t k = 0; k < m.rounds(); ++k) row[k] = m.at(l, k) ? '1' : '0';
            rows.push_back(row);
        }
        doc["matrix"] = rows;
        emit(out, doc);
        return;
    }
    out << "# seed " << config.seed << ", players " << config.players << ", rounds "
        << config.rounds << ", rho " << num(config.rho, 17) << ", population "
        << population_name(config.population) << '\n';
    write_matrix(out, m);
}

void cmd_estimate(const EstimateConfig& config, std::istream& matrix, std::ostream& out) {
    const WinLossMatrix m = read_matrix(matrix, config.source);
    if (m.rounds() < 2) throw DomainError("the estimator needs at least 2 rounds per player");
    const FluctuationEstimate est = estimate_rho(m, config.cap);
    const MatrixMetrics metrics = matrix_metrics(m, config.tolerance);

    if (config.format == Format::machine) {
        Json doc = header("estimate");
        doc["M"] = est.M;
        doc["n"] = est.n;
        doc["T"] = est.T;
        doc["T_exact"] = metrics.T_exact.get_str();
        doc["rho_hat"] = est.rho_hat;
        doc["beta"] = est.beta;
        doc["clamped"] = std::string(clamp_name(est.clamped));
        doc["cap"] = config.cap;
        doc["is_winloss"] = metrics.is_winloss;
        doc["tolerance"] = config.tolerance;
        emit(out, doc);
        return;
    }
    out << "M          " << est.M << '\n'
        << "n          " << est.n << '\n'
        << "T          " << num(est.T, 10) << " (" << metrics.T_exact.get_str() << ")\n"
        << "rho_hat    " << num(est.rho_hat, 10) << '\n'
        << "beta       " << num(est.beta, 10) << '\n'
        << "clamped    " << clamp_name(est.clamped) << '\n'
        << "win-loss   " << (metrics.is_winloss ? "yes" : "no") << " (tolerance "
        << num(config.tolerance) << ")\n";
}

void cmd_table5(const Table5Config& config, std::ostream& out) {
    if (config.players.size() != config.rounds.size() || config.players.empty()) {
        throw ValidationError("--players and --rounds need the same, nonzero number of entries");
    }
    if (config.rhos.empty()) throw ValidationError("--rho needs at least one value");
    for (const double r : config.rhos) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("--rho values must be nonnegative");
    }
    for (std::size_t c = 0; c < config.players.size(); ++c) {
        if (config.rounds[c] < 2) throw ValidationError("--rounds entries must be at least 2");
        if (config.players[c] == 0 ||
            (config.population == Population::finite && config.players[c] % 2 != 0)) {
            throw ValidationError("--players entries must be positive and even");
        }
    }
    if (config.reps == 0) throw ValidationError("--reps must be positive");

    std::vector<ReplicationCell> cells;
    for (const double rho : config.rhos) {
        for (std::size_t c = 0; c < config.players.size(); ++c) {
            cells.push_back({rho, config.players[c], config.rounds[c]});
        }
    }
    ReplicationOptions options;
    options.replications = config.reps;
    options.seed = config.seed;
    options.population = config.population;
    options.cap = config.cap;
    options.threads = config.threads;
    const auto summaries = replication_study(cells, options);

    if (config.format == Format::machine) {
        Json doc = header("table5");
        doc["seed"] = config.seed;
        doc["reps"] = config.reps;
        doc["population"] = std::string(population_name(config.population));
        doc["cap"] = config.cap;
        Json rows = Json::array();
        for (const auto& s : summaries) {
            rows.push_back({{"rho", s.cell.rho},
                            {"M", s.cell.players},
                            {"n", s.cell.rounds},
                            {"mean", s.mean},
                            {"mse", s.mse},
                            {"mean_se", s.mean_se},
                            {"mse_se", s.mse_se},
                            {"clamped_low", s.clamped_low},
                            {"clamped_high", s.clamped_high}});
        }
        doc["cells"] = rows;
        emit(out, doc);
        return;
    }
    out << "# " << config.reps << " replications per cell, seed " << config.seed << ", population "
        << population_name(config.population) << ", cap " << num(config.cap) << '\n';
    out << pad("rho", 6) << pad("M", 7) << pad("n", 4) << pad("mean", 10) << pad("(se)", 10)
        << pad("MSE", 10) << pad("(se)", 10) << "low/high clamps\n";
    for (const auto& s : summaries) {
        out << pad(num(s.cell.rho), 6) << pad(std::to_string(s.cell.players), 7)
            << pad(std::to_string(s.cell.rounds), 4) << pad(fixed(s.mean, 4), 10)
            << pad(fixed(s.mean_se, 4), 10) << pad(num(s.mse, 4), 10) << pad(num(s.mse_se, 2), 10)
            << s.clamped_low << '/' << s.clamped_high << '\n';
    }
}

void cmd_bridge(const BridgeConfig& config, std::ostream& out) {
    Json doc = header("bridge");
    std::vector<std::pair<std::string, std::string>> lines;
    switch (config.mode) {
    case BridgeMode::to_rating: {
        const GlickmanParams g = arena_to_glickman(config.x_i, config.x_j, config.rho);
        doc["mode"] = "to-rating";
        doc["input"] = {{"x_i", config.x_i}, {"x_j", config.x_j}, {"rho", config.rho}};
        doc["mu_i"] = g.mu_i;
        doc["mu_j"] = g.mu_j;
        doc["sigma2"] = g.sigma2;
        doc["valid"] = g.valid;
        lines = {{"mu_i", num(g.mu_i, 10)},
                 {"mu_j", num(g.mu_j, 10)},
                 {"sigma2", num(g.sigma2, 10)},
                 {"valid", g.valid ? "yes" : "no (rho below 1/ln 10)"}};
        break;
    }
    case BridgeMode::from_rating: {
        const ArenaParams a = glickman_to_arena(config.mu_i, config.mu_j, config.sigma2);
        doc["mode"] = "from-rating";
        doc["input"] = {{"mu_i", config.mu_i}, {"mu_j", config.mu_j}, {"sigma2", config.sigma2}};
        doc["x_i"] = a.x_i;
        doc["x_j"] = a.x_j;
        doc["rho"] = a.rho;
        lines = {{"x_i", num(a.x_i, 10)}, {"x_j", num(a.x_j, 10)}, {"rho", num(a.rho, 10)}};
        break;
    }
    case BridgeMode::record: {
        const double x = strength_from_win_record(config.wins, config.rounds, config.rho);
        const double delta = strength_to_bt_delta(x, config.rho);
        doc["mode"] = "record";
        doc["input"] = {{"wins", config.wins}, {"rounds", config.rounds}, {"rho", config.rho}};
        doc["x_hat"] = x;
        doc["delta"] = delta;
        lines = {{"x_hat", num(x, 10)}, {"delta", num(delta, 10)}};
        break;
    }
    }
    if (config.format == Format::machine) {
        emit(out, doc);
        return;
    }
    for (const auto& [key, value] : lines) out << pad(key, 8) << value << '\n';
}

} // namespace arena::cli
