// arena: command-line front end for the arena model library.
//
//   arena predict  --shape 5,1 --fifa brazil.txt
//   arena simulate --players 1024 --rounds 8 --rho 1 --seed 7 --output m.txt
//   arena estimate m.txt
//   arena table5   --reps 1000 --seed 1
//   arena bridge   to-rating --xi 0.5 --xj 0 --rho 2
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 numeric domain error.

#include "commands.h"

#include "arena/errors.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace {

using namespace arena;
using namespace arena::cli;

const std::map<std::string, Format> kFormats{{"table", Format::table}, {"machine", Format::machine}};
const std::map<std::string, Engine> kEngines{
    {"auto", Engine::automatic}, {"exact", Engine::exact}, {"grid", Engine::grid}};
const std::map<std::string, Population> kPopulations{{"finite", Population::finite},
                                                     {"infinite", Population::infinite}};

void add_format(CLI::App* app, Format& format) {
    app->add_option("--format", format, "table or machine (JSON)")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return in;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arena model: result prediction, simulation, fluctuation estimation"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output_path;
    app.add_option("--output", output_path, "write the report to this file instead of stdout");

    PredictConfig predict;
    std::string history_path;
    auto* predict_cmd = app.add_subcommand("predict", "next-result distribution from past results");
    predict_cmd->add_option("history", history_path, "history file, one result per line")->required();
    predict_cmd->add_option("--shape", predict.shape, "arena thresholds m,n")->capture_default_str();
    predict_cmd->add_option("--engine", predict.engine, "exact, grid or auto")
        ->transform(CLI::CheckedTransformer(kEngines, CLI::ignore_case));
    predict_cmd->add_option("--grid-size", predict.grid_size, "grid intervals K")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 22));
    predict_cmd->add_flag("--fifa", predict.fifa, "history holds result codes 0..5 of a 5-1 arena");
    predict_cmd->add_flag("--baseline", predict.baseline, "add the past result frequencies");
    add_format(predict_cmd, predict.format);

    SimulateConfig simulate;
    std::string sim_shape;
    auto* simulate_cmd = app.add_subcommand("simulate", "simulate a 1-1 arena with fluctuations or an arena game");
    simulate_cmd->add_option("--shape", sim_shape, "run an arena game on m,n instead");
    simulate_cmd->add_option("--log2-extra", simulate.log2_extra, "arena game with 2^(m+n+k) players")
        ->capture_default_str();
    simulate_cmd->add_option("--players", simulate.players, "M")->capture_default_str();
    simulate_cmd->add_option("--rounds", simulate.rounds, "n")->capture_default_str();
    simulate_cmd->add_option("--rho", simulate.rho, "coefficient of fluctuations")->capture_default_str();
    simulate_cmd->add_option("--population", simulate.population, "finite or infinite")
        ->transform(CLI::CheckedTransformer(kPopulations, CLI::ignore_case));
    simulate_cmd->add_option("--seed", simulate.seed)->capture_default_str();
    add_format(simulate_cmd, simulate.format);

    EstimateConfig estimate;
    std::string matrix_path;
    auto* estimate_cmd = app.add_subcommand("estimate", "estimate rho from a win-loss matrix file");
    estimate_cmd->add_option("matrix", matrix_path, "matrix file, rows of 0/1")->required();
    estimate_cmd->add_option("--cap", estimate.cap, "rho_hat reported when T <= 1/4")->capture_default_str();
    estimate_cmd->add_option("--tolerance", estimate.tolerance, "allowed |column sum - M/2| / M")
        ->capture_default_str();
    add_format(estimate_cmd, estimate.format);

    Table5Config table5;
    auto* table5_cmd = app.add_subcommand("table5", "replication study of the rho estimator");
    table5_cmd->add_option("--rho", table5.rhos, "rho values")->delimiter(',')->capture_default_str();
    table5_cmd->add_option("--players", table5.players, "M per regime")->delimiter(',')->capture_default_str();
    table5_cmd->add_option("--rounds", table5.rounds, "n per regime")->delimiter(',')->capture_default_str();
    table5_cmd->add_option("--reps", table5.reps, "replications per cell")->capture_default_str();
    table5_cmd->add_option("--seed", table5.seed)->capture_default_str();
    table5_cmd->add_option("--threads", table5.threads, "0 uses every core")->capture_default_str();
    table5_cmd->add_option("--population", table5.population, "finite or infinite")
        ->transform(CLI::CheckedTransformer(kPopulations, CLI::ignore_case));
    table5_cmd->add_option("--cap", table5.cap)->capture_default_str();
    add_format(table5_cmd, table5.format);

    BridgeConfig bridge;
    auto* bridge_cmd = app.add_subcommand("bridge", "convert between arena and rating-scale parameters");
    bridge_cmd->require_subcommand(1);
    auto* to_rating = bridge_cmd->add_subcommand("to-rating", "(x_i, x_j, rho) -> (mu_i, mu_j, sigma2)");
    to_rating->add_option("--xi", bridge.x_i)->required();
    to_rating->add_option("--xj", bridge.x_j)->required();
    to_rating->add_option("--rho", bridge.rho)->required();
    add_format(to_rating, bridge.format);
    auto* from_rating = bridge_cmd->add_subcommand("from-rating", "(mu_i, mu_j, sigma2) -> (x_i, x_j, rho)");
    from_rating->add_option("--mu-i", bridge.mu_i)->required();
    from_rating->add_option("--mu-j", bridge.mu_j)->required();
    from_rating->add_option("--sigma2", bridge.sigma2)->required();
    add_format(from_rating, bridge.format);
    auto* record = bridge_cmd->add_subcommand("record", "strength and Bradley-Terry location from a win record");
    record->add_option("--wins", bridge.wins)->required();
    record->add_option("--rounds", bridge.rounds)->required();
    record->add_option("--rho", bridge.rho)->required();
    add_format(record, bridge.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::ofstream file;
        if (!output_path.empty()) {
            file.open(output_path);
            if (!file) throw ValidationError("cannot write " + output_path);
        }
        std::ostream& out = output_path.empty() ? std::cout : file;

        if (*predict_cmd) {
            predict.source = history_path;
            auto in = open_input(history_path);
            cmd_predict(predict, in, out);
        } else if (*simulate_cmd) {
            if (!sim_shape.empty()) simulate.shape = sim_shape;
            cmd_simulate(simulate, out);
        } else if (*estimate_cmd) {
            estimate.source = matrix_path;
            auto in = open_input(matrix_path);
            cmd_estimate(estimate, in, out);
        } else if (*table5_cmd) {
            cmd_table5(table5, out);
        } else if (*bridge_cmd) {
            bridge.mode = *to_rating     ? BridgeMode::to_rating
                          : *from_rating ? BridgeMode::from_rating
                                         : BridgeMode::record;
            cmd_bridge(bridge, out);
        }
        out.flush();
        if (!out) throw ValidationError("failed writing output");
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const EngineLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
