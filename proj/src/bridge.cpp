#include "arena/bridge.h"

#include "arena/errors.h"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace arena {

namespace {

constexpr double kMuScale = 800.0;
constexpr double kSigmaScale = 320000.0;

double inv_ln10_squared() {
    const double l = std::numbers::ln10;
    return 1.0 / (l * l);
}

} // namespace

double tocher_k() { return std::sqrt(2.0 / std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal quantile needs 0 < p < 1, got " + std::to_string(p));
    }
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double tocher_logistic(double x) {
    // same value as e^(2kx)/(e^(2kx)+1), without overflow for large |x|
    return 1.0 / (1.0 + std::exp(-2.0 * tocher_k() * x));
}

double strength_from_win_record(double wins, double rounds, double rho_hat) {
    if (!(rounds > 0.0)) throw DomainError("win record needs a positive number of rounds");
    if (!(rho_hat >= 0.0)) throw DomainError("fluctuation coefficient must be nonnegative");
    const double rate = wins / rounds;
    if (!(rate > 0.0 && rate < 1.0)) {
        throw DomainError("win fraction " + std::to_string(rate) +
                          " has no finite strength; shrink the record away from 0 and 1 first");
    }
    return std::sqrt(1.0 + rho_hat * rho_hat) * normal_quantile(rate);
}

double strength_to_bt_delta(double x_hat, double rho_hat) {
    if (!(rho_hat > 0.0)) throw DomainError("Bradley-Terry location needs rho_hat > 0");
    return 2.0 * tocher_k() * x_hat / rho_hat;
}

GlickmanParams arena_to_glickman(double x_i, double x_j, double rho_hat) {
    if (!(rho_hat >= 0.0)) throw DomainError("fluctuation coefficient must be nonnegative");
    const double k = tocher_k();
    GlickmanParams out;
    out.mu_i = kMuScale * k * x_i;
    out.mu_j = kMuScale * k * x_j;
    out.sigma2 = kSigmaScale * k * k * (rho_hat * rho_hat - inv_ln10_squared());
    out.valid = out.sigma2 >= 0.0;
    return out;
}

ArenaParams glickman_to_arena(double mu_i, double mu_j, double sigma2) {
    if (!(sigma2 >= 0.0)) throw DomainError("rating variance must be nonnegative");
    const double k = tocher_k();
    ArenaParams out;
    out.x_i = mu_i / (kMuScale * k);
    out.x_j = mu_j / (kMuScale * k);
    out.rho = std::sqrt(sigma2 / (kSigmaScale * k * k) + inv_ln10_squared());
    return out;
}

double expect_phi_of_normal(double mu, double sigma2) {
    if (!(sigma2 >= 0.0)) throw DomainError("variance must be nonnegative");
    return normal_cdf(mu / std::sqrt(1.0 + sigma2));
}

} // namespace arena
