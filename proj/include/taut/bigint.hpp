#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taut {

/// Sign-magnitude arbitrary-precision integer, base 2^32.
///
/// Only what exact rational arithmetic needs: add/sub/mul, truncating
/// divmod, gcd, decimal conversion, comparisons.  Magnitudes are stored
/// little-endian with no leading zero limbs; zero has an empty magnitude
/// and sign 0.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // careful with LLONG_MIN: negate in unsigned space
        std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1
                                  : static_cast<std::uint64_t>(v);
        mag_.push_back(static_cast<std::uint32_t>(mag));
        if (mag >> 32) mag_.push_back(static_cast<std::uint32_t>(mag >> 32));
    }

    explicit BigInt(std::string_view decimal) { *this = from_decimal(decimal); }

    static BigInt from_decimal(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigInt: empty decimal string");
        int sign = 1;
        std::size_t i = 0;
        if (s[0] == '+' || s[0] == '-') {
            sign = s[0] == '-' ? -1 : 1;
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: sign without digits");
        BigInt out;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("BigInt: invalid digit in decimal string");
            out.mul_small_add(10, static_cast<std::uint32_t>(s[i] - '0'));
        }
        if (!out.mag_.empty()) out.sign_ = sign;
        return out;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

    bool fits_i64() const {
        if (mag_.size() > 2) return false;
        std::uint64_t m = mag_u64();
        if (sign_ >= 0) return m <= static_cast<std::uint64_t>(INT64_MAX);
        return m <= static_cast<std::uint64_t>(INT64_MAX) + 1;
    }

    std::int64_t to_i64() const {
        if (!fits_i64()) throw std::overflow_error("BigInt: does not fit in 64 bits");
        std::uint64_t m = mag_u64();
        return sign_ < 0 ? -static_cast<std::int64_t>(m - 1) - 1
                         : static_cast<std::int64_t>(m);
    }

    double to_double() const {
        double acc = 0.0;
        for (std::size_t i = mag_.size(); i-- > 0;) acc = acc * 4294967296.0 + mag_[i];
        return sign_ < 0 ? -acc : acc;
    }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> work = mag_;
        std::string digits;
        while (!work.empty()) {
            // divide the magnitude by 1e9, emitting 9 decimal digits per pass
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            for (int k = 0; k < 9; ++k) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (sign_ < 0) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
            return r;
        }
        int c = cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt{};
        if (c > 0) {
            r.mag_ = sub_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            r.mag_ = sub_mag(b.mag_, a.mag_);
            r.sign_ = b.sign_;
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                                    r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.mag_[i + b.mag_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    /// Truncating division; remainder carries the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) {
            q = BigInt{};
            r = a;
            return;
        }
        // binary long division on magnitudes
        std::size_t bits = bit_length(a.mag_);
        std::vector<std::uint32_t> rem, quo((bits + 31) / 32, 0);
        rem.reserve(b.mag_.size() + 1);
        for (std::size_t i = bits; i-- > 0;) {
            shift_left_one(rem);
            if ((a.mag_[i / 32] >> (i % 32)) & 1u) {
                if (rem.empty())
                    rem.push_back(1);
                else
                    rem[0] |= 1u;
            }
            if (cmp_mag(rem, b.mag_) >= 0) {
                rem = sub_mag(rem, b.mag_);
                quo[i / 32] |= (1u << (i % 32));
            }
        }
        q.mag_ = std::move(quo);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.mag_ = std::move(rem);
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    /// gcd of |a| and |b| (binary algorithm); gcd(0,0) = 0.
    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        unsigned shift = 0;
        while (a.is_even() && b.is_even()) {
            a.shr1();
            b.shr1();
            ++shift;
        }
        while (a.is_even()) a.shr1();
        while (!b.is_zero()) {
            while (b.is_even()) b.shr1();
            if (cmp_mag(a.mag_, b.mag_) > 0) std::swap(a, b);
            b = b - a;
            b.sign_ = b.mag_.empty() ? 0 : 1;
        }
        for (unsigned i = 0; i < shift; ++i) a.shl1();
        return a;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ < 0) c = -c;
        return c <=> 0;
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(sign_ + 1);
        for (std::uint32_t limb : mag_) h = h * 1000003u ^ limb;
        return h;
    }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    std::uint64_t mag_u64() const {
        std::uint64_t m = 0;
        if (mag_.size() > 1) m = static_cast<std::uint64_t>(mag_[1]) << 32;
        if (!mag_.empty()) m |= mag_[0];
        return m;
    }

    bool is_even() const { return mag_.empty() || (mag_[0] & 1u) == 0; }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    void shr1() {
        std::uint32_t carry = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) {
            std::uint32_t next = mag_[i] & 1u;
            mag_[i] = (mag_[i] >> 1) | (carry << 31);
            carry = next;
        }
        trim();
    }

    void shl1() {
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            std::uint32_t next = mag_[i] >> 31;
            mag_[i] = (mag_[i] << 1) | carry;
            carry = next;
        }
        if (carry) mag_.push_back(carry);
    }

    void mul_small_add(std::uint32_t mul, std::uint32_t add) {
        std::uint64_t carry = add;
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(mag_[i]) * mul + carry;
            mag_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            mag_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
        if (!mag_.empty()) sign_ = 1;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> out;
        out.reserve(big.size() + 1);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0u);
            out.push_back(static_cast<std::uint32_t>(cur));
            carry = cur >> 32;
        }
        if (carry) out.push_back(static_cast<std::uint32_t>(carry));
        return out;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> out;
        out.reserve(a.size());
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                               (i < b.size() ? b[i] : 0u);
            borrow = cur < 0;
            if (cur < 0) cur += (static_cast<std::int64_t>(1) << 32);
            out.push_back(static_cast<std::uint32_t>(cur));
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }

    static std::size_t bit_length(const std::vector<std::uint32_t>& mag) {
        if (mag.empty()) return 0;
        std::uint32_t top = mag.back();
        std::size_t bits = (mag.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    static void shift_left_one(std::vector<std::uint32_t>& v) {
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uint32_t next = v[i] >> 31;
            v[i] = (v[i] << 1) | carry;
            carry = next;
        }
        if (carry) v.push_back(carry);
    }
};

}  // namespace taut
