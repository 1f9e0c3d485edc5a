#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cudim/errors.hpp"
#include "cudim/factorization.hpp"
#include "cudim/partition.hpp"

namespace cudim {

// Isomorphism type of a finite abelian group: one exponent partition per
// prime (primary decomposition). The empty map is the zero module. Map
// equality is isomorphism, so this is a complete canonical invariant.
class AbelianType {
public:
    AbelianType() = default;

    // Validates keys (prime) and values (nonempty partitions).
    explicit AbelianType(std::map<std::uint64_t, Partition> primary,
                         const FactorBudget& budget = {}) {
        for (auto& [p, lambda] : primary) {
            if (lambda.empty()) continue;
            if (!is_prime(p, budget))
                throw domain_error("AbelianType key " + std::to_string(p) + " is not prime");
            primary_.emplace(p, std::move(lambda));
        }
    }

    static AbelianType zero() { return AbelianType{}; }

    // Single-prime type p -> lambda.
    static AbelianType p_type(std::uint64_t p, Partition lambda, const FactorBudget& budget = {}) {
        std::map<std::uint64_t, Partition> m;
        m.emplace(p, std::move(lambda));
        return AbelianType(std::move(m), budget);
    }

    const std::map<std::uint64_t, Partition>& primary() const { return primary_; }
    bool is_zero() const { return primary_.empty(); }

    const Partition* component(std::uint64_t p) const {
        auto it = primary_.find(p);
        return it == primary_.end() ? nullptr : &it->second;
    }

    // Composition length: total number of simple factors.
    std::uint64_t length() const {
        std::uint64_t n = 0;
        for (const auto& [p, lambda] : primary_) n += lambda.weight();
        return n;
    }

    // Goldie (uniform) dimension: number of cyclic summands.
    std::uint64_t uniform_dim() const {
        std::uint64_t n = 0;
        for (const auto& [p, lambda] : primary_) n += lambda.count();
        return n;
    }

    friend bool operator==(const AbelianType&, const AbelianType&) = default;

    friend std::strong_ordering operator<=>(const AbelianType& a, const AbelianType& b) {
        auto ia = a.primary_.begin(), ib = b.primary_.begin();
        for (; ia != a.primary_.end() && ib != b.primary_.end(); ++ia, ++ib) {
            if (auto c = ia->first <=> ib->first; c != 0) return c;
            if (auto c = ia->second <=> ib->second; c != 0) return c;
        }
        return a.primary_.size() <=> b.primary_.size();
    }

private:
    std::map<std::uint64_t, Partition> primary_;
};

// Primary decomposition of a direct sum of cyclic groups of the given
// orders. Order 1 summands vanish; order 0 would be the infinite cyclic
// group, which this finite engine rejects.
inline AbelianType type_from_orders(const std::vector<std::uint64_t>& orders,
                                    const FactorBudget& budget = {}) {
    std::map<std::uint64_t, std::vector<std::uint32_t>> exps;
    for (auto n : orders) {
        if (n == 0)
            throw domain_error("infinite cyclic summand unsupported here (use catalog)");
        for (const auto& [p, e] : factorize(n, budget)) exps[p].push_back(e);
    }
    std::map<std::uint64_t, Partition> primary;
    for (auto& [p, e] : exps) primary.emplace(p, Partition(std::move(e)));
    return AbelianType(std::move(primary), budget);
}

// Invariant-factor chain d_1 | d_2 | ... | d_t of a finite type (ascending
// divisibility; empty for the zero module). Inverse of type_from_orders on
// canonical input.
inline std::vector<std::uint64_t> invariant_factors(const AbelianType& t) {
    std::size_t count = 0;
    for (const auto& [p, lambda] : t.primary()) count = std::max(count, lambda.count());
    std::vector<std::uint64_t> factors;
    for (std::size_t k = count; k-- > 0;) {
        std::uint64_t d = 1;
        for (const auto& [p, lambda] : t.primary()) {
            if (k >= lambda.count()) continue;
            for (std::uint32_t i = 0; i < lambda.parts()[k]; ++i) {
                if (d > UINT64_MAX / p) throw budget_error("invariant factor exceeds the 2^64 budget");
                d *= p;
            }
        }
        factors.push_back(d);
    }
    return factors;
}

inline AbelianType direct_sum(const AbelianType& a, const AbelianType& b) {
    std::map<std::uint64_t, Partition> primary;
    for (const auto& [p, lambda] : a.primary()) primary[p] = lambda;
    for (const auto& [p, lambda] : b.primary()) {
        auto parts = primary[p].parts();
        auto more = lambda.parts();
        parts.insert(parts.end(), more.begin(), more.end());
        primary[p] = Partition(std::move(parts));
    }
    return AbelianType(std::move(primary));
}

// Structural predicates and classical invariants of a finite type.
struct StructureInfo {
    std::uint64_t length = 0;
    std::uint64_t uniform_dim = 0;
    AbelianType socle;
    AbelianType radical;
    bool is_uniform = false;
    bool is_semisimple = false;
    bool is_homogeneous = false;
    bool is_anti_cohopfian = false;
    bool is_fully_cohopfian = true; // finite modules are artinian
};

inline StructureInfo invariants(const AbelianType& t) {
    StructureInfo info;
    info.length = t.length();
    info.uniform_dim = t.uniform_dim();

    std::map<std::uint64_t, Partition> socle, radical;
    bool all_exponent_one = true;
    for (const auto& [p, lambda] : t.primary()) {
        socle.emplace(p, Partition(std::vector<std::uint32_t>(lambda.count(), 1)));
        std::vector<std::uint32_t> lowered;
        for (auto part : lambda.parts())
            if (part > 1) lowered.push_back(part - 1);
        if (!lowered.empty()) radical.emplace(p, Partition(std::move(lowered)));
        if (lambda.largest() > 1) all_exponent_one = false;
    }
    info.socle = AbelianType(std::move(socle));
    info.radical = AbelianType(std::move(radical));

    bool single_prime = t.primary().size() == 1;
    bool single_part = single_prime && t.primary().begin()->second.count() == 1;
    info.is_uniform = single_part;
    info.is_semisimple = all_exponent_one;
    info.is_homogeneous = all_exponent_one && single_prime;
    info.is_anti_cohopfian = single_part && t.primary().begin()->second.largest() == 1;
    return info;
}

// Isomorphism types of subgroups of a group of type t, including the zero
// type and t itself. Per prime these are exactly the partitions contained
// in the component's diagram; primes combine independently. This classical
// rule is cross-checked against literal lattice enumeration by the oracle
// suite.
inline std::set<AbelianType> subtypes(const AbelianType& t) {
    std::set<AbelianType> out;
    std::vector<std::pair<std::uint64_t, std::vector<Partition>>> choices;
    for (const auto& [p, lambda] : t.primary()) choices.emplace_back(p, subpartitions(lambda));
    std::map<std::uint64_t, Partition> current;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == choices.size()) {
            out.insert(AbelianType(current));
            return;
        }
        for (const auto& mu : choices[i].second) {
            if (mu.empty()) {
                self(self, i + 1);
            } else {
                current[choices[i].first] = mu;
                self(self, i + 1);
                current.erase(choices[i].first);
            }
        }
    };
    rec(rec, 0);
    return out;
}

// Isomorphism types of quotients of a group of type t. Finite abelian
// groups are self-dual, exchanging subgroups and quotients type-for-type,
// so the set coincides with subtypes(t); the oracle suite validates this
// against literal quotient enumeration.
inline std::set<AbelianType> quotient_types(const AbelianType& t) { return subtypes(t); }

// -------- group-spec grammar --------
//
//   spec    := summand ("+" summand)*
//   summand := "Z" NAT ("^" NAT)?     (whitespace ignored)
//
// "Z8+Z2^3" is Z_8 + Z_2 + Z_2 + Z_2; "Z1" is the zero summand.

// Cyclic orders named by a group spec, in written order, "Z1" summands and
// repetition included ("Z4+Z2^2" -> [4, 2, 2]).
inline std::vector<std::uint64_t> parse_group_spec_orders(std::string_view s) {
    std::vector<std::uint64_t> orders;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    };
    auto parse_nat = [&](const char* what) {
        skip_ws();
        std::size_t start = pos;
        std::uint64_t v = 0;
        bool overflow = false;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            std::uint64_t d = static_cast<std::uint64_t>(s[pos] - '0');
            if (v > (UINT64_MAX - d) / 10) overflow = true;
            if (!overflow) v = v * 10 + d;
            ++pos;
        }
        if (pos == start) throw parse_error(std::string("expected ") + what, start);
        if (overflow) throw budget_error("cyclic order exceeds the 2^64 budget");
        return v;
    };
    while (true) {
        skip_ws();
        if (pos >= s.size() || s[pos] != 'Z') throw parse_error("expected 'Z'", pos);
        ++pos;
        std::uint64_t order = parse_nat("cyclic order");
        std::uint64_t repeat = 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            repeat = parse_nat("repetition count");
            if (repeat > 4096) throw budget_error("summand repetition exceeds budget (4096)");
        }
        for (std::uint64_t i = 0; i < repeat; ++i) orders.push_back(order);
        skip_ws();
        if (pos == s.size()) break;
        if (s[pos] != '+') throw parse_error("expected '+' or end of input", pos);
        ++pos;
    }
    return orders;
}

inline AbelianType parse_group_spec(std::string_view s, const FactorBudget& budget = {}) {
    return type_from_orders(parse_group_spec_orders(s), budget);
}

// Canonical spec string: primes ascending, parts descending, equal orders
// grouped with '^'. The zero type renders as "Z1". Reparsing yields the
// same type.
inline std::string format_group_spec(const AbelianType& t) {
    if (t.is_zero()) return "Z1";
    std::string out;
    for (const auto& [p, lambda] : t.primary()) {
        const auto& parts = lambda.parts();
        for (std::size_t i = 0; i < parts.size();) {
            std::size_t j = i;
            while (j < parts.size() && parts[j] == parts[i]) ++j;
            std::uint64_t order = 1;
            for (std::uint32_t k = 0; k < parts[i]; ++k) {
                if (order > UINT64_MAX / p)
                    throw budget_error("cyclic order exceeds the 2^64 budget");
                order *= p;
            }
            if (!out.empty()) out += '+';
            out += 'Z';
            out += std::to_string(order);
            if (j - i > 1) {
                out += '^';
                out += std::to_string(j - i);
            }
            i = j;
        }
    }
    return out;
}

} // namespace cudim
