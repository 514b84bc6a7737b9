#pragma once

#include "arena/simulator.h"

#include <gmpxx.h>

#include <cstddef>
#include <string_view>
#include <utility>

namespace arena {

/// (E xi, E xi^2) of the win rate xi = Phi(X / sqrt(1 + rho^2)), X ~ N(0,1).
std::pair<double, double> win_rate_moments(double rho);

/// E(Y^2) for the number of wins Y of one player over n rounds.
double second_moment_of_wins(int rounds, double rho);

inline constexpr double kDefaultRhoCap = 10.0;
/// T closer than this to 1/4 or 1/3 counts as clamped.
inline constexpr double kClampSlack = 1e-12;

enum class Clamp { none, low_T, high_T };
std::string_view clamp_name(Clamp clamp);

struct RhoFromT {
    double rho_hat = 0.0;
    double beta = 1.0;
    Clamp clamped = Clamp::none;
};

/// Inverts E xi^2 = T. T <= 1/4 gives rho_hat = cap and beta = 0,
/// T >= 1/3 gives rho_hat = 0 and beta = 1.
RhoFromT rho_from_T(double T, double cap = kDefaultRhoCap);

struct FluctuationEstimate {
    double T = 0.0;
    double rho_hat = 0.0;
    double beta = 1.0;
    Clamp clamped = Clamp::none;
    std::size_t M = 0;
    std::size_t n = 0;
};

/// T = ((1/(Mn)) sum Y_l^2 - 1/2) / (n - 1). Needs n >= 2.
double statistic_T(const WinLossMatrix& matrix);
/// Same statistic in exact rational arithmetic.
mpq_class statistic_T_exact(const WinLossMatrix& matrix);

FluctuationEstimate estimate_rho(const WinLossMatrix& matrix, double cap = kDefaultRhoCap);

inline constexpr double kDefaultWinLossTolerance = 0.05;

struct MatrixMetrics {
    bool is_winloss = false;
    mpq_class T_exact;
    double T = 0.0;
    double rho = 0.0;   // +inf when T <= 1/4
    double beta = 1.0;
    Clamp clamped = Clamp::none;
};

/// Chaos metrics of any binary matrix. is_winloss holds when every column sum
/// is within tolerance * M of M/2; tolerance 0 demands equality.
MatrixMetrics matrix_metrics(const WinLossMatrix& matrix,
                             double tolerance = kDefaultWinLossTolerance);

/// 2^n x n matrix whose row r is r in binary, most significant digit first.
WinLossMatrix counting_matrix(int digits);

} // namespace arena
