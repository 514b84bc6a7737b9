#include "arena/replication.h"

#include "arena/errors.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace arena {

std::uint64_t cell_key(const ReplicationCell& cell) {
    std::uint64_t key = std::bit_cast<std::uint64_t>(cell.rho);
    key ^= (static_cast<std::uint64_t>(cell.players) + 0x9e3779b97f4a7c15ULL) * 0xff51afd7ed558ccdULL;
    key ^= (static_cast<std::uint64_t>(cell.rounds) + 0x632be59bd9b4e019ULL) * 0xc4ceb9fe1a85ec53ULL;
    return key;
}

std::vector<FluctuationEstimate> replicate_estimates(const ReplicationCell& cell,
                                                     const ReplicationOptions& options) {
    if (options.replications == 0) throw ValidationError("need at least one replication");
    if (cell.rounds < 2) throw ValidationError("need at least 2 rounds per player");
    if (options.population == Population::finite && (cell.players == 0 || cell.players % 2 != 0)) {
        throw ValidationError("finite population needs an even player count");
    }

    const Rng cell_rng = Rng(options.seed).substream(cell_key(cell));
    std::vector<FluctuationEstimate> out(options.replications);

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(
        std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, options.replications));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t r = next++; r < options.replications; r = next++) {
                Rng rng = cell_rng.substream(r);
                const WinLossMatrix m = simulate_1v1_fluctuations(cell.players, cell.rounds,
                                                                  cell.rho, options.population, rng);
                out[r] = estimate_rho(m, options.cap);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = options.replications;
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

ReplicationSummary summarize(const ReplicationCell& cell,
                             const std::vector<FluctuationEstimate>& estimates) {
    ReplicationSummary s;
    s.cell = cell;
    s.replications = estimates.size();
    if (estimates.empty()) return s;
    const double n = static_cast<double>(estimates.size());

    double sum = 0.0;
    double sum_sq_err = 0.0;
    for (const auto& e : estimates) {
        sum += e.rho_hat;
        const double err = e.rho_hat - cell.rho;
        sum_sq_err += err * err;
        if (e.clamped == Clamp::low_T) ++s.clamped_low;
        if (e.clamped == Clamp::high_T) ++s.clamped_high;
    }
    s.mean = sum / n;
    s.mse = sum_sq_err / n;

    if (estimates.size() > 1) {
        double var = 0.0;
        double var_sq = 0.0;
        for (const auto& e : estimates) {
            const double d = e.rho_hat - s.mean;
            var += d * d;
            const double err = e.rho_hat - cell.rho;
            const double q = err * err - s.mse;
            var_sq += q * q;
        }
        s.mean_se = std::sqrt(var / (n - 1.0) / n);
        s.mse_se = std::sqrt(var_sq / (n - 1.0) / n);
    }
    return s;
}

std::vector<ReplicationSummary> replication_study(const std::vector<ReplicationCell>& cells,
                                                  const ReplicationOptions& options) {
    std::vector<ReplicationSummary> out;
    out.reserve(cells.size());
    for (const auto& cell : cells) out.push_back(summarize(cell, replicate_estimates(cell, options)));
    return out;
}

std::vector<ReplicationCell> standard_study_cells() {
    std::vector<ReplicationCell> cells;
    for (const double rho : {0.1, 0.5, 1.0, 2.0, 4.0, 6.0}) {
        cells.push_back({rho, 1024, 8});
        cells.push_back({rho, 1024, 16});
        cells.push_back({rho, 8192, 8});
    }
    return cells;
}

} // namespace arena
