#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cudim/errors.hpp"

namespace cudim {

// Arbitrary-precision unsigned integer. Limbs are base 2^32, little-endian,
// no trailing zero limbs (zero = empty limb vector).
class Natural {
public:
    Natural() = default;

    Natural(std::uint64_t v) {
        if (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
            if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    static Natural from_decimal(std::string_view s) {
        if (s.empty()) throw parse_error("empty number", 0);
        Natural n;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw parse_error("expected digit", i);
            n.mul_small(10);
            n.add_small(static_cast<std::uint32_t>(c - '0'));
        }
        return n;
    }

    bool is_zero() const { return limbs_.empty(); }

    bool fits_u64() const { return limbs_.size() <= 2; }

    std::uint64_t to_u64() const {
        if (!fits_u64()) throw std::overflow_error("Natural does not fit in 64 bits");
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        Natural tmp = *this;
        std::string out;
        while (!tmp.is_zero()) {
            std::uint32_t rem = tmp.divmod_small(1000000000u);
            std::string chunk = std::to_string(rem);
            if (!tmp.is_zero()) chunk.insert(0, 9 - chunk.size(), '0');
            out.insert(0, chunk);
        }
        return out;
    }

    friend bool operator==(const Natural& a, const Natural& b) { return a.limbs_ == b.limbs_; }

    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() <=> b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
        }
        return std::strong_ordering::equal;
    }

    Natural& operator+=(const Natural& o) {
        if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t cur = carry + limbs_[i];
            if (i < o.limbs_.size()) cur += o.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }

    // Requires *this >= o.
    Natural& operator-=(const Natural& o) {
        if (*this < o) throw std::underflow_error("Natural subtraction underflow");
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(limbs_[i]) - borrow;
            if (i < o.limbs_.size()) cur -= o.limbs_[i];
            borrow = 0;
            if (cur < 0) {
                cur += (std::int64_t{1} << 32);
                borrow = 1;
            }
            limbs_[i] = static_cast<std::uint32_t>(cur);
        }
        trim();
        return *this;
    }

    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }

    friend Natural operator*(const Natural& a, const Natural& b) {
        if (a.is_zero() || b.is_zero()) return Natural{};
        Natural r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = r.limbs_[i + j] + carry +
                                    static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j];
                r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    Natural& operator*=(const Natural& o) { return *this = *this * o; }

    // Quotient and remainder; shift-subtract long division.
    static std::pair<Natural, Natural> divmod(const Natural& u, const Natural& v) {
        if (v.is_zero()) throw domain_error("division by zero");
        if (u < v) return {Natural{}, u};
        Natural q, r;
        q.limbs_.assign(u.limbs_.size(), 0);
        for (std::size_t bit = u.limbs_.size() * 32; bit-- > 0;) {
            r.shift_left_one();
            if (u.get_bit(bit)) r.set_bit(0);
            if (r >= v) {
                r -= v;
                q.set_bit(bit);
            }
        }
        q.trim();
        return {q, r};
    }

    friend Natural operator/(const Natural& a, const Natural& b) { return divmod(a, b).first; }
    friend Natural operator%(const Natural& a, const Natural& b) { return divmod(a, b).second; }

    Natural& increment() { return add_small(1), *this; }

    // Requires nonzero.
    Natural& decrement() {
        if (is_zero()) throw std::underflow_error("decrement of zero");
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            if (limbs_[i]-- != 0) break;
        }
        trim();
        return *this;
    }

private:
    std::vector<std::uint32_t> limbs_;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    Natural& add_small(std::uint32_t v) {
        std::uint64_t carry = v;
        for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
            std::uint64_t cur = carry + limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    void mul_small(std::uint32_t v) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * v + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        if (v == 0) trim();
    }

    std::uint32_t divmod_small(std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    bool get_bit(std::size_t i) const {
        std::size_t limb = i / 32;
        if (limb >= limbs_.size()) return false;
        return (limbs_[limb] >> (i % 32)) & 1u;
    }

    void set_bit(std::size_t i) {
        std::size_t limb = i / 32;
        if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
        limbs_[limb] |= (std::uint32_t{1} << (i % 32));
    }

    void shift_left_one() {
        std::uint32_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
    }
};

} // namespace cudim
