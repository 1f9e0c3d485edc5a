#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cudim/errors.hpp"
#include "cudim/natural.hpp"

namespace cudim {

// Ordinal number below w^w in Cantor normal form: a finite sum of terms
// w^exponent * coefficient with strictly decreasing exponents and
// coefficients >= 1. The empty term list is zero. Representation is
// canonical, so equality of ordinals is equality of term lists.
class Ordinal {
public:
    struct Term {
        Natural exponent;
        Natural coefficient;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Ordinal() = default;

    // Finite ordinal n.
    Ordinal(std::uint64_t n) {
        if (n != 0) terms_.push_back({Natural(0), Natural(n)});
    }

    static Ordinal zero() { return Ordinal{}; }

    static Ordinal omega() { return from_terms({{Natural(1), Natural(1)}}); }

    // w^exponent * coefficient (zero if coefficient is 0).
    static Ordinal omega_power(Natural exponent, Natural coefficient) {
        Ordinal o;
        if (!coefficient.is_zero())
            o.terms_.push_back({std::move(exponent), std::move(coefficient)});
        return o;
    }

    // Validates the CNF invariants.
    static Ordinal from_terms(std::vector<Term> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].coefficient.is_zero())
                throw domain_error("ordinal term with zero coefficient");
            if (i > 0 && !(terms[i - 1].exponent > terms[i].exponent))
                throw domain_error("ordinal exponents must strictly decrease");
        }
        Ordinal o;
        o.terms_ = std::move(terms);
        return o;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_finite() const {
        return terms_.empty() || terms_.front().exponent.is_zero();
    }

    // Value of a finite ordinal.
    std::uint64_t finite_value() const {
        if (terms_.empty()) return 0;
        if (!is_finite()) throw domain_error("ordinal is infinite");
        return terms_.front().coefficient.to_u64();
    }

    bool invariants_hold() const {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coefficient.is_zero()) return false;
            if (i > 0 && !(terms_[i - 1].exponent > terms_[i].exponent)) return false;
        }
        return true;
    }

    friend bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

    // CNF ordering: compare term lists lexicographically by (exponent,
    // coefficient); a longer list with a common prefix is the larger ordinal.
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
            if (auto c = a.terms_[i].coefficient <=> b.terms_[i].coefficient; c != 0) return c;
        }
        return a.terms_.size() <=> b.terms_.size();
    }

private:
    std::vector<Term> terms_;
};

// Ordinal sum. The leading term of b absorbs every strictly smaller term of
// a; an equal-exponent term of a merges into it by coefficient addition.
// This is the closed form of the inductive definition (a + 0 = a,
// a + (b+1) = (a+b) + 1, limits by supremum).
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Natural& lead = b.terms().front().exponent;
    std::vector<Ordinal::Term> out;
    std::size_t i = 0;
    while (i < a.terms().size() && a.terms()[i].exponent > lead) out.push_back(a.terms()[i++]);
    Ordinal::Term head = b.terms().front();
    if (i < a.terms().size() && a.terms()[i].exponent == lead)
        head.coefficient += a.terms()[i].coefficient;
    out.push_back(std::move(head));
    out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
    return Ordinal::from_terms(std::move(out));
}

inline std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

// Supremum of a nonempty finite set = its maximum.
template <typename Container>
Ordinal ord_sup(const Container& s) {
    auto it = s.begin();
    if (it == s.end()) throw domain_error("empty supremum");
    Ordinal best = *it;
    for (++it; it != s.end(); ++it)
        if (*it > best) best = *it;
    return best;
}

inline Ordinal ord_sup(std::initializer_list<Ordinal> s) {
    return ord_sup<std::initializer_list<Ordinal>>(s);
}

// Rendering: descending terms joined by '+'; "w^e*c" with "^1" and "*1"
// omitted; the exponent-zero term is a bare numeral; zero is "0".
inline std::string ord_format(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += '+';
        first = false;
        if (t.exponent.is_zero()) {
            out += t.coefficient.to_decimal();
            continue;
        }
        out += 'w';
        if (t.exponent != Natural(1)) {
            out += '^';
            out += t.exponent.to_decimal();
        }
        if (t.coefficient != Natural(1)) {
            out += '*';
            out += t.coefficient.to_decimal();
        }
    }
    return out;
}

namespace detail {

inline Natural parse_nat_at(std::string_view s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw parse_error("expected number", start);
    return Natural::from_decimal(s.substr(start, pos - start));
}

} // namespace detail

// Grammar:  ordinal := "0" | term ("+" term)* ;  term := "w" ("^" NAT)?
// ("*" NAT)? | NAT.  The parsed term list must already be canonical
// (strictly decreasing exponents, coefficients >= 1).
inline Ordinal ord_parse(std::string_view s) {
    if (s == "0") return Ordinal::zero();
    if (s.empty()) throw parse_error("empty ordinal", 0);
    std::vector<Ordinal::Term> terms;
    std::size_t pos = 0;
    while (true) {
        std::size_t term_start = pos;
        Natural exponent, coefficient;
        if (pos < s.size() && s[pos] == 'w') {
            ++pos;
            exponent = Natural(1);
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exponent = detail::parse_nat_at(s, pos);
            }
            coefficient = Natural(1);
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                coefficient = detail::parse_nat_at(s, pos);
            }
        } else {
            exponent = Natural(0);
            coefficient = detail::parse_nat_at(s, pos);
        }
        if (coefficient.is_zero()) throw parse_error("zero coefficient", term_start);
        if (!terms.empty() && !(terms.back().exponent > exponent))
            throw parse_error("exponents must strictly decrease", term_start);
        terms.push_back({std::move(exponent), std::move(coefficient)});
        if (pos == s.size()) break;
        if (s[pos] != '+') throw parse_error("expected '+' or end of input", pos);
        ++pos;
    }
    return Ordinal::from_terms(std::move(terms));
}

} // namespace cudim
