#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cudim/errors.hpp"

namespace cudim {

// Trial-division budget. Orders must fit in 64 bits and have their smallest
// prime factor within `trial_bound`; anything beyond raises budget_error
// rather than risking a wrong factorization.
struct FactorBudget {
    std::uint64_t trial_bound = 10'000'000;
};

// Prime factorization n = prod p^e, n >= 1.
inline std::map<std::uint64_t, std::uint32_t> factorize(std::uint64_t n,
                                                        const FactorBudget& budget = {}) {
    if (n == 0) throw domain_error("cannot factor 0");
    std::map<std::uint64_t, std::uint32_t> out;
    auto strip = [&](std::uint64_t p) {
        while (n % p == 0) {
            n /= p;
            ++out[p];
        }
    };
    strip(2);
    for (std::uint64_t p = 3; p <= budget.trial_bound && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        // Remaining cofactor has no factor <= trial_bound; it is prime iff
        // it is below trial_bound^2.
        if (n > budget.trial_bound * budget.trial_bound)
            throw budget_error("factorization budget exceeded for " + std::to_string(n) +
                               " (smallest-factor bound " + std::to_string(budget.trial_bound) +
                               ")");
        ++out[n];
    }
    return out;
}

inline bool is_prime(std::uint64_t n, const FactorBudget& budget = {}) {
    if (n < 2) return false;
    auto f = factorize(n, budget);
    return f.size() == 1 && f.begin()->second == 1;
}

} // namespace cudim
