#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "cudim/natural.hpp"

namespace cudim {

// Arbitrary-precision signed integer, sign + magnitude.
class Integer {
public:
    Integer() = default;

    Integer(std::int64_t v) {
        if (v < 0) {
            negative_ = true;
            // avoid overflow on INT64_MIN
            mag_ = Natural(static_cast<std::uint64_t>(-(v + 1)) + 1);
        } else {
            mag_ = Natural(static_cast<std::uint64_t>(v));
        }
    }

    Integer(Natural mag, bool negative = false)
        : mag_(std::move(mag)), negative_(negative && !mag_.is_zero()) {}

    static Integer from_decimal(std::string_view s) {
        bool neg = false;
        std::size_t start = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            start = 1;
        }
        return Integer(Natural::from_decimal(s.substr(start)), neg);
    }

    bool is_zero() const { return mag_.is_zero(); }
    bool is_negative() const { return negative_; }
    const Natural& magnitude() const { return mag_; }

    std::int64_t to_i64() const {
        std::uint64_t m = mag_.to_u64();
        if (negative_) {
            if (m > static_cast<std::uint64_t>(INT64_MAX) + 1)
                throw std::overflow_error("Integer does not fit in 64 bits");
            return static_cast<std::int64_t>(~m + 1);
        }
        if (m > static_cast<std::uint64_t>(INT64_MAX))
            throw std::overflow_error("Integer does not fit in 64 bits");
        return static_cast<std::int64_t>(m);
    }

    std::string to_decimal() const {
        return negative_ ? "-" + mag_.to_decimal() : mag_.to_decimal();
    }

    Integer abs() const { return Integer(mag_, false); }
    Integer negated() const { return Integer(mag_, !negative_); }
    friend Integer operator-(const Integer& a) { return a.negated(); }

    friend bool operator==(const Integer& a, const Integer& b) {
        return a.negative_ == b.negative_ && a.mag_ == b.mag_;
    }

    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        if (a.negative_ != b.negative_)
            return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
        auto m = a.mag_ <=> b.mag_;
        return a.negative_ ? 0 <=> m : m;
    }

    friend Integer operator+(const Integer& a, const Integer& b) {
        if (a.negative_ == b.negative_) return Integer(a.mag_ + b.mag_, a.negative_);
        if (a.mag_ >= b.mag_) return Integer(a.mag_ - b.mag_, a.negative_);
        return Integer(b.mag_ - a.mag_, b.negative_);
    }

    friend Integer operator-(const Integer& a, const Integer& b) { return a + b.negated(); }

    friend Integer operator*(const Integer& a, const Integer& b) {
        return Integer(a.mag_ * b.mag_, a.negative_ != b.negative_);
    }

    Integer& operator+=(const Integer& o) { return *this = *this + o; }
    Integer& operator-=(const Integer& o) { return *this = *this - o; }
    Integer& operator*=(const Integer& o) { return *this = *this * o; }

    // Truncating division (C semantics): quotient rounds toward zero,
    // remainder takes the dividend's sign.
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        auto [q, r] = Natural::divmod(a.mag_, b.mag_);
        return {Integer(std::move(q), a.negative_ != b.negative_),
                Integer(std::move(r), a.negative_)};
    }

    friend Integer operator/(const Integer& a, const Integer& b) { return divmod(a, b).first; }
    friend Integer operator%(const Integer& a, const Integer& b) { return divmod(a, b).second; }

    friend Integer gcd(Integer a, Integer b) {
        a = a.abs();
        b = b.abs();
        while (!b.is_zero()) {
            Integer r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

private:
    Natural mag_;
    bool negative_ = false;
};

} // namespace cudim
