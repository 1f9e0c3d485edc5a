#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cudim/abelian_type.hpp"
#include "cudim/errors.hpp"
#include "cudim/factorization.hpp"
#include "cudim/ordinal.hpp"

namespace cudim {

enum class Provenance { fast, oracle, catalog };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::fast: return "fast";
        case Provenance::oracle: return "oracle";
        case Provenance::catalog: return "catalog";
    }
    return "?";
}

// Computed dimension bundle. `defined` states that the couniserial
// dimension exists; `cudim` carries the exact value when one is known,
// otherwise `cudim_lower` carries a lower bound. A missing u_dim means the
// uniform dimension is infinite.
struct DimensionReport {
    bool defined = true;
    std::optional<Ordinal> cudim;
    std::optional<Ordinal> cudim_lower;
    std::optional<Ordinal> usdim;
    std::optional<std::uint64_t> u_dim;
    std::optional<std::uint64_t> length;
    std::optional<StructureInfo> structure;
    Provenance provenance = Provenance::fast;
    std::vector<std::string> notes;

    bool consistent() const {
        if (!defined && cudim) return false;
        if (cudim && cudim_lower && *cudim_lower > *cudim) return false;
        return true;
    }
};

// Infinite modules with closed-form dimension facts: free abelian groups
// Z^n, Pruefer groups Z_{p^inf}^m, and the countable homogeneous semisimple
// group (Z_p)^(omega).
struct FreeAbelian {
    std::uint64_t rank = 1;
};
struct Pruefer {
    std::uint64_t prime = 2;
    std::uint64_t multiplicity = 1;
};
struct InfHomogeneousSemisimple {
    std::uint64_t prime = 2;
};
using InfiniteDescriptor = std::variant<FreeAbelian, Pruefer, InfHomogeneousSemisimple>;

// Memoized dimension computations over isomorphism types. The cache is
// append-only and idempotent; a mutex makes concurrent duplicate inserts
// harmless.
class DimensionEngine {
public:
    // Couniserial dimension: 0 for the zero type, 1 for uniform types,
    // otherwise one more than the maximum over proper nonzero subtypes.
    // The subtype set is finite, so the least ordinal exceeding every
    // proper-subtype dimension is that maximum's successor.
    Ordinal cudim(const AbelianType& t) {
        if (t.is_zero()) return Ordinal::zero();
        if (auto hit = lookup(cu_cache_, t)) return *hit;
        Ordinal result;
        if (invariants(t).is_uniform) {
            result = Ordinal(1);
        } else {
            Ordinal best;
            for (const auto& mu : subtypes(t)) {
                if (mu.is_zero() || mu == t) continue;
                Ordinal d = cudim(mu);
                if (d > best) best = d;
            }
            result = ord_add(best, Ordinal(1));
        }
        store(cu_cache_, t, result);
        return result;
    }

    // Uniserial dimension, dual over quotient types: 0 for the zero type,
    // 1 for uniserial types (single prime, single part: chain lattice),
    // otherwise one more than the maximum over proper nonzero quotient
    // types.
    Ordinal usdim(const AbelianType& t) {
        if (t.is_zero()) return Ordinal::zero();
        if (auto hit = lookup(us_cache_, t)) return *hit;
        Ordinal result;
        if (is_uniserial(t)) {
            result = Ordinal(1);
        } else {
            Ordinal best;
            for (const auto& mu : quotient_types(t)) {
                if (mu.is_zero() || mu == t) continue;
                Ordinal d = usdim(mu);
                if (d > best) best = d;
            }
            result = ord_add(best, Ordinal(1));
        }
        store(us_cache_, t, result);
        return result;
    }

    // A subtype of t whose couniserial dimension is exactly beta, scanning
    // the canonical subtype enumeration from the largest down so that
    // beta = cudim(t) yields t itself and beta = 0 yields the zero type.
    AbelianType realize(const AbelianType& t, const Ordinal& beta) {
        if (beta <= cudim(t)) {
            auto subs = subtypes(t);
            for (auto it = subs.rbegin(); it != subs.rend(); ++it)
                if (cudim(*it) == beta) return *it;
        }
        throw domain_error("unrealizable: no subtype of " + format_group_spec(t) +
                           " has couniserial dimension " + ord_format(beta));
    }

    DimensionReport report(const AbelianType& t) {
        DimensionReport r;
        r.defined = true;
        r.cudim = cudim(t);
        r.usdim = usdim(t);
        r.u_dim = t.uniform_dim();
        r.length = t.length();
        r.structure = invariants(t);
        r.provenance = Provenance::fast;
        return r;
    }

    static bool is_uniserial(const AbelianType& t) {
        return t.primary().size() == 1 && t.primary().begin()->second.count() == 1;
    }

private:
    std::map<AbelianType, Ordinal> cu_cache_;
    std::map<AbelianType, Ordinal> us_cache_;
    std::mutex mutex_;

    std::optional<Ordinal> lookup(const std::map<AbelianType, Ordinal>& cache,
                                  const AbelianType& t) {
        std::lock_guard lock(mutex_);
        auto it = cache.find(t);
        if (it == cache.end()) return std::nullopt;
        return it->second;
    }

    void store(std::map<AbelianType, Ordinal>& cache, const AbelianType& t, const Ordinal& d) {
        std::lock_guard lock(mutex_);
        cache.emplace(t, d);
    }
};

inline DimensionEngine& shared_engine() {
    static DimensionEngine engine;
    return engine;
}

inline Ordinal couniserial_dim(const AbelianType& t) { return shared_engine().cudim(t); }
inline Ordinal uniserial_dim(const AbelianType& t) { return shared_engine().usdim(t); }
inline AbelianType realize_subtype(const AbelianType& t, const Ordinal& beta) {
    return shared_engine().realize(t, beta);
}
inline DimensionReport dimension_report(const AbelianType& t) { return shared_engine().report(t); }

// Closed-form dimension facts for the infinite families. The Pruefer
// square and higher powers have no emitted exact value: they are artinian
// (so the dimension exists) with an infinite dimension, reported as the
// lower bound omega.
inline DimensionReport catalog(const InfiniteDescriptor& d, const FactorBudget& budget = {}) {
    DimensionReport r;
    r.provenance = Provenance::catalog;
    if (const auto* free = std::get_if<FreeAbelian>(&d)) {
        if (free->rank < 1) throw domain_error("free rank must be >= 1");
        r.defined = true;
        r.cudim = Ordinal(free->rank);
        r.u_dim = free->rank;
        r.notes.push_back("c.u.dim(Z^n) = n; for n = " + std::to_string(free->rank) +
                          " this equals u.dim as well");
        return r;
    }
    if (const auto* pr = std::get_if<Pruefer>(&d)) {
        if (!is_prime(pr->prime, budget))
            throw domain_error(std::to_string(pr->prime) + " is not prime");
        if (pr->multiplicity < 1) throw domain_error("multiplicity must be >= 1");
        r.defined = true;
        r.u_dim = pr->multiplicity;
        if (pr->multiplicity == 1) {
            r.cudim = Ordinal(1);
            r.usdim = Ordinal(1);
            r.notes.push_back("the Pruefer group's proper subgroups form a chain, so it is "
                              "uniform (and uniserial)");
        } else {
            r.cudim_lower = Ordinal::omega();
            r.notes.push_back("artinian, hence the couniserial dimension exists; it is "
                              "infinite while u.dim = " + std::to_string(pr->multiplicity) +
                              "; no exact value is emitted");
        }
        return r;
    }
    const auto& ss = std::get<InfHomogeneousSemisimple>(d);
    if (!is_prime(ss.prime, budget)) throw domain_error(std::to_string(ss.prime) + " is not prime");
    r.defined = true;
    r.cudim = Ordinal::omega();
    r.usdim = Ordinal::omega();
    r.u_dim = std::nullopt; // infinite
    r.notes.push_back("countable homogeneous semisimple: c.u.dim = u.s.dim = w, u.dim infinite");
    return r;
}

// Whether the countable power of every quotient of a finite type keeps a
// couniserial dimension; for finite length this holds exactly for the
// semisimple types (finitely many homogeneous components).
inline bool infinite_power_defined(const AbelianType& t) { return invariants(t).is_semisimple; }

} // namespace cudim
