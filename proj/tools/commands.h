#pragma once

#include "arena/bayes.h"
#include "arena/estimator.h"
#include "arena/replication.h"
#include "arena/simulator.h"

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace arena::cli {

/// Version tag carried by every machine-format document.
inline constexpr const char* kSchema = "arena-cli/1";

enum class Format { table, machine };

struct PredictConfig {
    std::string shape = "5,1";
    std::string source = "history";
    Engine engine = Engine::automatic;
    std::size_t grid_size = kDefaultGridIntervals;
    bool fifa = false;
    bool baseline = false;
    Format format = Format::table;
};

struct SimulateConfig {
    // set: arena game on this shape; unset: 1-1 arena with fluctuations
    std::optional<std::string> shape;
    int log2_extra = 0;
    std::size_t players = 1024;
    std::size_t rounds = 8;
    double rho = 1.0;
    Population population = Population::finite;
    std::uint64_t seed = 1;
    Format format = Format::table;
};

struct EstimateConfig {
    std::string source = "matrix";
    double cap = kDefaultRhoCap;
    double tolerance = kDefaultWinLossTolerance;
    Format format = Format::table;
};

struct Table5Config {
    std::vector<double> rhos{0.1, 0.5, 1.0, 2.0, 4.0, 6.0};
    std::vector<std::size_t> players{1024, 1024, 8192};
    std::vector<std::size_t> rounds{8, 16, 8};
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    Population population = Population::finite;
    double cap = kDefaultRhoCap;
    Format format = Format::table;
};

enum class BridgeMode { to_rating, from_rating, record };

struct BridgeConfig {
    BridgeMode mode = BridgeMode::to_rating;
    double x_i = 0.0;
    double x_j = 0.0;
    double rho = 1.0;
    double mu_i = 0.0;
    double mu_j = 0.0;
    double sigma2 = 0.0;
    double wins = 0.0;
    double rounds = 0.0;
    Format format = Format::table;
};

void cmd_predict(const PredictConfig& config, std::istream& history, std::ostream& out);
void cmd_simulate(const SimulateConfig& config, std::ostream& out);
void cmd_estimate(const EstimateConfig& config, std::istream& matrix, std::ostream& out);
void cmd_table5(const Table5Config& config, std::ostream& out);
void cmd_bridge(const BridgeConfig& config, std::ostream& out);

} // namespace arena::cli
