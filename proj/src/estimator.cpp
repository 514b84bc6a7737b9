#include "arena/estimator.h"

#include "arena/errors.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace arena {

namespace {

void require_rounds(const WinLossMatrix& matrix) {
    if (matrix.rounds() < 2) {
        throw DomainError("the fluctuation statistic needs at least 2 rounds, got " +
                          std::to_string(matrix.rounds()));
    }
    if (matrix.players() == 0) throw DomainError("the matrix has no players");
}

} // namespace

std::pair<double, double> win_rate_moments(double rho) {
    if (!(rho >= 0.0)) throw DomainError("fluctuation coefficient must be nonnegative");
    // atan(sqrt(a/b)) written as atan2(sqrt a, sqrt b) so rho = 0 lands on pi/6 exactly enough
    // to give 1/3 in double precision.
    const double angle = std::atan2(std::sqrt(1.0 + rho * rho), std::sqrt(3.0 + rho * rho));
    return {0.5, 0.5 - angle / std::numbers::pi};
}

double second_moment_of_wins(int rounds, double rho) {
    if (rounds < 1) throw DomainError("need at least one round");
    const double n = rounds;
    const auto [mean, second] = win_rate_moments(rho);
    return n * mean + (n * n - n) * second;
}

std::string_view clamp_name(Clamp clamp) {
    switch (clamp) {
    case Clamp::none: return "none";
    case Clamp::low_T: return "low_T";
    case Clamp::high_T: return "high_T";
    }
    return "none";
}

RhoFromT rho_from_T(double T, double cap) {
    if (std::isnan(T)) throw DomainError("T is not a number");
    if (T <= 0.25 + kClampSlack) return {cap, 0.0, Clamp::low_T};
    if (T >= 1.0 / 3.0 - kClampSlack) return {0.0, 1.0, Clamp::high_T};
    const double t = std::tan(std::numbers::pi * T);
    const double t2 = t * t;
    const double rho = std::sqrt((3.0 - t2) / (t2 - 1.0));
    return {rho, 1.0 / (1.0 + rho), Clamp::none};
}

double statistic_T(const WinLossMatrix& matrix) {
    require_rounds(matrix);
    const double cells = static_cast<double>(matrix.players()) * static_cast<double>(matrix.rounds());
    const double squares = static_cast<double>(matrix.sum_of_squared_row_sums());
    return (squares / cells - 0.5) / static_cast<double>(matrix.rounds() - 1);
}

mpq_class statistic_T_exact(const WinLossMatrix& matrix) {
    require_rounds(matrix);
    const mpz_class squares(std::to_string(matrix.sum_of_squared_row_sums()));
    const mpz_class cells = mpz_class(std::to_string(matrix.players())) *
                            mpz_class(std::to_string(matrix.rounds()));
    mpq_class mean_square(squares, cells);
    mean_square.canonicalize();
    mpq_class T = (mean_square - mpq_class(1, 2)) /
                  mpq_class(static_cast<long>(matrix.rounds() - 1));
    T.canonicalize();
    return T;
}

FluctuationEstimate estimate_rho(const WinLossMatrix& matrix, double cap) {
    FluctuationEstimate out;
    out.T = statistic_T(matrix);
    const RhoFromT r = rho_from_T(out.T, cap);
    out.rho_hat = r.rho_hat;
    out.beta = r.beta;
    out.clamped = r.clamped;
    out.M = matrix.players();
    out.n = matrix.rounds();
    return out;
}

MatrixMetrics matrix_metrics(const WinLossMatrix& matrix, double tolerance) {
    if (!(tolerance >= 0.0)) throw ValidationError("win-loss tolerance must be nonnegative");
    MatrixMetrics out;
    out.T_exact = statistic_T_exact(matrix);
    out.T = out.T_exact.get_d();
    const double half = static_cast<double>(matrix.players()) / 2.0;
    const double slack = tolerance * static_cast<double>(matrix.players());
    out.is_winloss = true;
    for (std::size_t k = 0; k < matrix.rounds(); ++k) {
        if (std::abs(static_cast<double>(matrix.column_sum(k)) - half) > slack) {
            out.is_winloss = false;
            break;
        }
    }
    const RhoFromT r = rho_from_T(out.T);
    out.clamped = r.clamped;
    out.beta = r.beta;
    out.rho = r.clamped == Clamp::low_T ? std::numeric_limits<double>::infinity() : r.rho_hat;
    return out;
}

WinLossMatrix counting_matrix(int digits) {
    if (digits < 1 || digits > 20) {
        throw DomainError("counting matrix digits must lie in 1..20, got " + std::to_string(digits));
    }
    const std::size_t rows = std::size_t{1} << digits;
    WinLossMatrix out(rows, static_cast<std::size_t>(digits));
    for (std::size_t r = 0; r < rows; ++r) {
        for (int k = 0; k < digits; ++k) out.set(r, static_cast<std::size_t>(k), (r >> (digits - 1 - k)) & 1U);
    }
    return out;
}

} // namespace arena
