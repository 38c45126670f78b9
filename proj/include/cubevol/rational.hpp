#pragma once

#include "cubevol/bigint.hpp"
#include "cubevol/errors.hpp"

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace cubevol {

// Exact arbitrary-precision fraction, always kept reduced with a positive
// denominator and the sign on the numerator. Every operation is exact.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    template <std::integral T>
    Rational(T n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) fail(errc::invalid_function, "division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= *this.
    BigInt floor() const {
        if (den_ == 1) return num_;
        BigInt q = num_ / den_;  // truncates toward zero
        if (num_ < 0) q -= 1;
        return q;
    }

    BigInt ceil() const { return -((-*this).floor()); }

    Rational pow(std::int64_t e) const {
        if (e < 0) fail(errc::invalid_function, "negative exponent");
        Rational r;
        r.num_ = pow_int(num_, e);
        r.den_ = pow_int(den_, e);
        return r;  // already reduced: gcd(num,den)=1 implies gcd(num^e,den^e)=1
    }

    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    void normalize() {
        if (den_ == 0) fail(errc::invalid_function, "zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

// Bits needed to write a reduced p/q: ceil(log2(|p|+1)) + ceil(log2(q+1)).
inline std::int64_t encoding_length(const Rational& x) {
    const BigInt p = x.num() < 0 ? BigInt(-x.num()) : x.num();
    return ceil_log2(p + 1) + ceil_log2(x.den() + 1);
}

// Minimum distance between two distinct rationals of encoding length <= L:
// any such pair differs by at least 1/2^(2L).
inline Rational min_gap(std::int64_t L) {
    if (L < 1) fail(errc::out_of_range, "min_gap requires L >= 1");
    return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(2 * L));
}

// Parses "p/q" or "p" (optional leading '-', no whitespace, q > 0).
inline Rational parse_rational(std::string_view text) {
    const auto bad = [&] { fail(errc::parse_error, "bad rational '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    const auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    bool neg = false;
    if (body.front() == '-') {
        neg = true;
        body.remove_prefix(1);
    }
    std::string_view num_part = body;
    std::string_view den_part = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num_part = body.substr(0, slash);
        den_part = body.substr(slash + 1);
    }
    if (!is_digits(num_part) || !is_digits(den_part)) bad();
    BigInt p{std::string(num_part)};
    BigInt q{std::string(den_part)};
    if (q == 0) bad();
    if (neg) p = -p;
    return Rational(std::move(p), std::move(q));
}

}  // namespace cubevol
