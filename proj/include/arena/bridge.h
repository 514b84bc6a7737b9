#pragma once

namespace arena {

/// sqrt(2/pi), the slope constant of the logistic approximation to Phi.
double tocher_k();

double normal_cdf(double x);
/// Inverse of normal_cdf; throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

/// e^(2kx) / (e^(2kx) + 1).
double tocher_logistic(double x);

/// x = sqrt(1 + rho^2) * Phi^-1(wins / rounds). Throws DomainError for 0 or all wins.
double strength_from_win_record(double wins, double rounds, double rho_hat);

/// Bradley-Terry scale location 2k x / rho. Needs rho_hat > 0.
double strength_to_bt_delta(double x_hat, double rho_hat);

struct GlickmanParams {
    double mu_i = 0.0;
    double mu_j = 0.0;
    double sigma2 = 0.0;
    bool valid = true;  // false when sigma2 < 0, i.e. rho < 1/ln 10
};

struct ArenaParams {
    double x_i = 0.0;
    double x_j = 0.0;
    double rho = 0.0;
};

/// mu = 800 k x, sigma^2 = 320000 k^2 (rho^2 - 1/ln^2 10). Raw scale, no rating offset.
GlickmanParams arena_to_glickman(double x_i, double x_j, double rho_hat);
/// Inverse of arena_to_glickman. Throws DomainError for sigma2 < 0.
ArenaParams glickman_to_arena(double mu_i, double mu_j, double sigma2);

/// E Phi(xi) for xi ~ N(mu, sigma2), which is Phi(mu / sqrt(1 + sigma2)).
double expect_phi_of_normal(double mu, double sigma2);

} // namespace arena
