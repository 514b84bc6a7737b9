#include "arena/rational_poly.h"

#include <algorithm>
#include <sstream>
#include <utility>

namespace arena {

namespace {

using Coeffs = std::vector<mpz_class>;

constexpr std::size_t kKroneckerThreshold = 24;

std::size_t max_bits(const Coeffs& c) {
    std::size_t bits = 0;
    for (const auto& v : c) {
        if (v != 0) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    }
    return bits;
}

std::size_t bit_length(std::size_t v) {
    std::size_t bits = 0;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

Coeffs schoolbook(const Coeffs& a, const Coeffs& b) {
    Coeffs out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

mpz_class pack(const Coeffs& c, std::size_t slot_limbs) {
    std::vector<mp_limb_t> buf(c.size() * slot_limbs, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        std::size_t count = 0;
        mpz_export(buf.data() + k * slot_limbs, &count, -1, sizeof(mp_limb_t), 0, 0,
                   c[k].get_mpz_t());
    }
    mpz_class packed;
    mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    return packed;
}

// Both inputs have nonnegative coefficients.
Coeffs kronecker_unsigned(const Coeffs& a, const Coeffs& b, bool squaring) {
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t bits_a = max_bits(a);
    const std::size_t bits_b = squaring ? bits_a : max_bits(b);
    if (bits_a == 0 || bits_b == 0) return Coeffs(out_len);

    const std::size_t bits =
        bits_a + bits_b + bit_length(std::min(a.size(), b.size())) + 1;
    const std::size_t limb_bits = sizeof(mp_limb_t) * 8;
    const std::size_t slot_limbs = (bits + limb_bits - 1) / limb_bits;

    const mpz_class pa = pack(a, slot_limbs);
    mpz_class product;
    if (squaring) {
        product = pa * pa;
    } else {
        product = pa * pack(b, slot_limbs);
    }

    std::vector<mp_limb_t> buf(out_len * slot_limbs + 1, 0);
    std::size_t count = 0;
    mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, product.get_mpz_t());
    Coeffs out(out_len);
    for (std::size_t k = 0; k < out_len; ++k) {
        mpz_import(out[k].get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0,
                   buf.data() + k * slot_limbs);
    }
    return out;
}

void split_signs(const Coeffs& c, Coeffs& pos, Coeffs& neg, bool& has_neg) {
    pos.assign(c.size(), 0);
    neg.assign(c.size(), 0);
    has_neg = false;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] > 0) {
            pos[k] = c[k];
        } else if (c[k] < 0) {
            neg[k] = -c[k];
            has_neg = true;
        }
    }
}

void accumulate(Coeffs& into, const Coeffs& term, int sign) {
    for (std::size_t k = 0; k < term.size(); ++k) {
        if (sign > 0) {
            into[k] += term[k];
        } else {
            into[k] -= term[k];
        }
    }
}

Coeffs multiply(const Coeffs& a, const Coeffs& b, bool squaring) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKroneckerThreshold) return schoolbook(a, b);

    Coeffs ap, an, bp, bn;
    bool a_neg = false;
    bool b_neg = false;
    split_signs(a, ap, an, a_neg);
    if (squaring) {
        Coeffs out = kronecker_unsigned(ap, ap, true);
        if (a_neg) {
            accumulate(out, kronecker_unsigned(an, an, true), +1);
            Coeffs cross = kronecker_unsigned(ap, an, false);
            for (auto& v : cross) v *= 2;
            accumulate(out, cross, -1);
        }
        return out;
    }
    split_signs(b, bp, bn, b_neg);
    Coeffs out = kronecker_unsigned(ap, bp, false);
    if (a_neg && b_neg) accumulate(out, kronecker_unsigned(an, bn, false), +1);
    if (b_neg) accumulate(out, kronecker_unsigned(ap, bn, false), -1);
    if (a_neg) accumulate(out, kronecker_unsigned(an, bp, false), -1);
    return out;
}

} // namespace

RatPoly::RatPoly() = default;

RatPoly::RatPoly(const std::vector<mpq_class>& coefficients) {
    mpz_class common = 1;
    for (const auto& c : coefficients) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    }
    num_.reserve(coefficients.size());
    for (const auto& c : coefficients) {
        num_.push_back(c.get_num() * (common / c.get_den()));
    }
    den_ = common;
    normalize();
}

RatPoly::RatPoly(std::vector<mpz_class> numerators, mpz_class denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
    normalize();
}

RatPoly RatPoly::constant(const mpq_class& c) { return RatPoly(std::vector<mpq_class>{c}); }

RatPoly RatPoly::monomial(const mpq_class& c, std::size_t degree) {
    std::vector<mpq_class> coeffs(degree + 1, 0);
    coeffs[degree] = c;
    return RatPoly(coeffs);
}

RatPoly RatPoly::identity() { return monomial(1, 1); }

void RatPoly::normalize() {
    while (!num_.empty() && num_.back() == 0) num_.pop_back();
    if (num_.empty()) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& v : num_) v = -v;
    }
    mpz_class g = den_;
    for (const auto& v : num_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g != 1) {
        for (auto& v : num_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

mpq_class RatPoly::coefficient(std::size_t k) const {
    if (k >= num_.size()) return 0;
    mpq_class q(num_[k], den_);
    q.canonicalize();
    return q;
}

std::vector<mpq_class> RatPoly::coefficients() const {
    std::vector<mpq_class> out;
    out.reserve(num_.size());
    for (std::size_t k = 0; k < num_.size(); ++k) out.push_back(coefficient(k));
    return out;
}

RatPoly RatPoly::operator-() const {
    RatPoly out = *this;
    for (auto& v : out.num_) v = -v;
    return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), rhs.den_.get_mpz_t());
    const mpz_class scale_lhs = rhs.den_ / g;
    const mpz_class scale_rhs = den_ / g;
    if (num_.size() < rhs.num_.size()) num_.resize(rhs.num_.size(), 0);
    if (scale_lhs != 1) {
        for (auto& v : num_) v *= scale_lhs;
    }
    for (std::size_t k = 0; k < rhs.num_.size(); ++k) {
        mpz_addmul(num_[k].get_mpz_t(), rhs.num_[k].get_mpz_t(), scale_rhs.get_mpz_t());
    }
    den_ *= scale_lhs;
    normalize();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& rhs) { return *this += -rhs; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RatPoly(multiply(a.num_, b.num_, &a == &b), a.den_ * b.den_);
}

RatPoly& RatPoly::operator*=(const RatPoly& rhs) { return *this = *this * rhs; }

RatPoly& RatPoly::operator*=(const mpq_class& c) {
    if (c == 0) return *this = RatPoly();
    for (auto& v : num_) v *= c.get_num();
    den_ *= c.get_den();
    normalize();
    return *this;
}

bool RatPoly::operator==(const RatPoly& rhs) const {
    return den_ == rhs.den_ && num_ == rhs.num_;
}

RatPoly RatPoly::square() const {
    if (is_zero()) return {};
    return RatPoly(multiply(num_, num_, true), den_ * den_);
}

RatPoly RatPoly::pow(unsigned exponent) const {
    RatPoly result = constant(1);
    RatPoly base = *this;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent != 0) base = base.square();
    }
    return result;
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
    RatPoly result;
    for (std::size_t k = num_.size(); k-- > 0;) {
        result = result * inner + constant(coefficient(k));
    }
    return result;
}

RatPoly RatPoly::derivative() const {
    if (num_.size() <= 1) return {};
    std::vector<mpz_class> out(num_.size() - 1);
    for (std::size_t k = 1; k < num_.size(); ++k) {
        out[k - 1] = num_[k] * static_cast<unsigned long>(k);
    }
    return RatPoly(std::move(out), den_);
}

mpq_class RatPoly::integral_unit() const {
    if (is_zero()) return 0;
    mpz_class common = 1;
    for (std::size_t k = 1; k <= num_.size(); ++k) {
        mpz_lcm_ui(common.get_mpz_t(), common.get_mpz_t(), k);
    }
    mpz_class sum = 0;
    mpz_class factor;
    for (std::size_t k = 0; k < num_.size(); ++k) {
        mpz_divexact_ui(factor.get_mpz_t(), common.get_mpz_t(), k + 1);
        mpz_addmul(sum.get_mpz_t(), num_[k].get_mpz_t(), factor.get_mpz_t());
    }
    mpq_class out(sum, common * den_);
    out.canonicalize();
    return out;
}

mpq_class RatPoly::evaluate(const mpq_class& x) const {
    if (is_zero()) return 0;
    const mpz_class& p = x.get_num();
    const mpz_class& q = x.get_den();
    mpz_class acc = num_.back();
    mpz_class q_power = q;
    for (std::size_t k = num_.size() - 1; k-- > 0;) {
        acc *= p;
        mpz_addmul(acc.get_mpz_t(), num_[k].get_mpz_t(), q_power.get_mpz_t());
        q_power *= q;
    }
    // q_power overshoots by one factor of q.
    mpq_class out(acc * q, den_ * q_power);
    out.canonicalize();
    return out;
}

double RatPoly::evaluate(double x) const {
    return evaluate(mpq_class(x)).get_d();
}

std::string RatPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < num_.size(); ++k) {
        if (num_[k] == 0) continue;
        const mpq_class c = coefficient(k);
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        out << mpq_class(abs(c)).get_str();
        if (k >= 1) out << "*u";
        if (k >= 2) out << "^" << k;
    }
    return out.str();
}

} // namespace arena
