#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace arena {

/// Univariate polynomial with exact rational coefficients.
///
/// Stored as integer numerators over one shared positive denominator, kept in
/// lowest terms, with trailing zero coefficients removed. No operation rounds.
/// Products of long polynomials go through Kronecker substitution so that GMP's
/// large-integer multiplication does the heavy lifting.
class RatPoly {
public:
    RatPoly();  // zero polynomial
    explicit RatPoly(const std::vector<mpq_class>& coefficients);

    static RatPoly constant(const mpq_class& c);
    static RatPoly monomial(const mpq_class& c, std::size_t degree);
    /// p(u) = u
    static RatPoly identity();

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(num_.size()) - 1; }
    bool is_zero() const { return num_.empty(); }

    mpq_class coefficient(std::size_t k) const;
    std::vector<mpq_class> coefficients() const;

    RatPoly operator-() const;
    RatPoly& operator+=(const RatPoly& rhs);
    RatPoly& operator-=(const RatPoly& rhs);
    RatPoly& operator*=(const RatPoly& rhs);
    RatPoly& operator*=(const mpq_class& c);

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(RatPoly a, const mpq_class& c) { return a *= c; }
    friend RatPoly operator*(const mpq_class& c, RatPoly a) { return a *= c; }

    bool operator==(const RatPoly& rhs) const;
    bool operator!=(const RatPoly& rhs) const { return !(*this == rhs); }

    RatPoly square() const;
    RatPoly pow(unsigned exponent) const;
    /// this(inner(u))
    RatPoly compose(const RatPoly& inner) const;
    RatPoly derivative() const;
    /// Exact value of the integral over [0, 1].
    mpq_class integral_unit() const;

    mpq_class evaluate(const mpq_class& x) const;
    /// Exact evaluation at the binary value of x, rounded once at the end.
    double evaluate(double x) const;

    std::string to_string() const;

private:
    RatPoly(std::vector<mpz_class> numerators, mpz_class denominator);
    void normalize();

    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
};

} // namespace arena
