#pragma once

#include "arena/estimator.h"
#include "arena/simulator.h"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace arena {

struct ReplicationCell {
    double rho = 1.0;
    std::size_t players = 1024;
    std::size_t rounds = 8;
};

struct ReplicationSummary {
    ReplicationCell cell;
    std::size_t replications = 0;
    double mean = 0.0;
    double mse = 0.0;      // mean squared error of rho_hat against cell.rho
    double mean_se = 0.0;  // Monte Carlo standard error of mean
    double mse_se = 0.0;   // Monte Carlo standard error of mse
    std::size_t clamped_low = 0;
    std::size_t clamped_high = 0;
};

struct ReplicationOptions {
    std::size_t replications = 1000;
    std::uint64_t seed = 1;
    Population population = Population::finite;
    double cap = kDefaultRhoCap;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Stream key of a cell, derived from its parameters only.
std::uint64_t cell_key(const ReplicationCell& cell);

/// rho_hat for each replication of one cell. Replication r always uses the
/// same substream, so results do not depend on the thread count.
std::vector<FluctuationEstimate> replicate_estimates(const ReplicationCell& cell,
                                                     const ReplicationOptions& options);

ReplicationSummary summarize(const ReplicationCell& cell,
                             const std::vector<FluctuationEstimate>& estimates);

/// Replication study over the cells, in order.
std::vector<ReplicationSummary> replication_study(const std::vector<ReplicationCell>& cells,
                                                  const ReplicationOptions& options);

/// The 18 cells of the standard study: rho in {0.1, 0.5, 1, 2, 4, 6} by
/// (M, n) in {(1024, 8), (1024, 16), (8192, 8)}, rho-major.
std::vector<ReplicationCell> standard_study_cells();

} // namespace arena
