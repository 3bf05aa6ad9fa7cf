#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "taut/bigint.hpp"

namespace taut {

/// Exact rational number.  Always in lowest terms, denominator > 0,
/// zero stored as 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    /// Parses "n", "-n" or "n/d".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::from_decimal(s));
        return Rational(BigInt::from_decimal(s.substr(0, slash)),
                        BigInt::from_decimal(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    friend Rational operator-(const Rational& a) { return raw(-a.num_, a.den_); }

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
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const {
        if (den_.is_one()) return num_.to_decimal();
        return num_.to_decimal() + "/" + den_.to_decimal();
    }

    std::size_t hash() const { return num_.hash() * 31 ^ den_.hash(); }

    static Rational factorial(int n) {
        if (n < 0) throw std::invalid_argument("factorial of negative argument");
        BigInt acc(1);
        for (int k = 2; k <= n; ++k) acc = acc * BigInt(k);
        return Rational(std::move(acc));
    }

    /// Odd double factorial n!! for odd n >= -1, with (-1)!! = 1.
    static Rational double_factorial(int n) {
        if (n < -1 || n % 2 == 0)
            throw std::invalid_argument("double_factorial expects odd n >= -1");
        BigInt acc(1);
        for (int k = n; k >= 3; k -= 2) acc = acc * BigInt(k);
        return Rational(std::move(acc));
    }

    static Rational binomial(int n, int k) {
        if (k < 0 || k > n) return Rational(0);
        BigInt acc(1);
        for (int i = 0; i < k; ++i) acc = acc * BigInt(n - i);
        return Rational(std::move(acc)) / factorial(k);
    }

    static Rational pow(const Rational& base, int exp) {
        if (exp < 0) return pow(Rational(1) / base, -exp);
        Rational acc(1), b = base;
        while (exp) {
            if (exp & 1) acc *= b;
            b *= b;
            exp >>= 1;
        }
        return acc;
    }

private:
    BigInt num_, den_;

    static Rational raw(BigInt n, BigInt d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

}  // namespace taut
