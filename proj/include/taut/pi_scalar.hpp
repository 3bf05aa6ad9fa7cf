#pragma once

#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "taut/rational.hpp"

namespace taut {

/// Exact element of the graded ring  ⊕_k π^{2k}·ℚ.
///
/// Every pairing value and volume coefficient in this library lives here.
/// Terms are kept in a sparse map from the even π-exponent 2k to a nonzero
/// rational; π is only ever evaluated numerically at the presentation
/// boundary (to_double).  Odd exponents are not representable: everything
/// in scope carries even π-grade.
class PiScalar {
public:
    PiScalar() = default;

    /// q · π^pi_power.  pi_power must be even and >= 0.
    PiScalar(int pi_power, Rational q) { add_term(pi_power, std::move(q)); }

    /// Plain rational (π-grade 0).
    static PiScalar from_rational(Rational q) { return PiScalar(0, std::move(q)); }
    static PiScalar pi_power(int p) { return PiScalar(p, Rational(1)); }
    static PiScalar zero() { return PiScalar{}; }
    static PiScalar one() { return PiScalar(0, Rational(1)); }

    bool is_zero() const { return terms_.empty(); }

    /// True when the value is a single term q·π^p.
    bool is_monomial() const { return terms_.size() == 1; }

    /// Coefficient of π^p (zero if absent).
    Rational coeff(int p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    void add_term(int pi_power, Rational q) {
        if (pi_power < 0 || pi_power % 2 != 0)
            throw std::invalid_argument("PiScalar: pi exponent must be even and >= 0");
        if (q.is_zero()) return;
        auto it = terms_.find(pi_power);
        if (it == terms_.end()) {
            terms_.emplace(pi_power, std::move(q));
        } else {
            it->second += q;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend PiScalar operator-(const PiScalar& a) {
        PiScalar r;
        for (const auto& [p, q] : a.terms_) r.terms_.emplace(p, -q);
        return r;
    }

    friend PiScalar operator+(const PiScalar& a, const PiScalar& b) {
        PiScalar r = a;
        for (const auto& [p, q] : b.terms_) r.add_term(p, q);
        return r;
    }

    friend PiScalar operator-(const PiScalar& a, const PiScalar& b) {
        PiScalar r = a;
        for (const auto& [p, q] : b.terms_) r.add_term(p, -q);
        return r;
    }

    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        PiScalar r;
        for (const auto& [pa, qa] : a.terms_)
            for (const auto& [pb, qb] : b.terms_) r.add_term(pa + pb, qa * qb);
        return r;
    }

    PiScalar& operator+=(const PiScalar& o) { return *this = *this + o; }
    PiScalar& operator-=(const PiScalar& o) { return *this = *this - o; }
    PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }

    friend PiScalar operator*(const PiScalar& a, const Rational& q) {
        PiScalar r;
        for (const auto& [p, c] : a.terms_) r.add_term(p, c * q);
        return r;
    }
    friend PiScalar operator*(const Rational& q, const PiScalar& a) { return a * q; }

    friend bool operator==(const PiScalar& a, const PiScalar& b) {
        return a.terms_ == b.terms_;
    }

    /// Approximate value with double-precision π.  Presentation only.
    double to_double() const {
        double acc = 0.0;
        for (const auto& [p, q] : terms_) {
            double pw = 1.0;
            for (int i = 0; i < p; ++i) pw *= std::numbers::pi;
            acc += q.to_double() * pw;
        }
        return acc;
    }

    /// Plain-text rendering, terms by ascending π-power: "3/4", "pi^2",
    /// "2*pi^2", "3 - 1/4*pi^4".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [p, q] : terms_) {
            Rational mag = q.sign() < 0 ? -q : q;
            if (first) {
                if (q.sign() < 0) out += "-";
                first = false;
            } else {
                out += q.sign() < 0 ? " - " : " + ";
            }
            if (p == 0) {
                out += mag.to_string();
            } else {
                if (!mag.is_one()) out += mag.to_string() + "*";
                out += "pi^" + std::to_string(p);
            }
        }
        return out;
    }

private:
    std::map<int, Rational> terms_;
};

}  // namespace taut
