#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cudim/abelian_type.hpp"
#include "cudim/dimension.hpp"
#include "cudim/errors.hpp"
#include "cudim/oracle.hpp"
#include "cudim/ordinal.hpp"

namespace cudim {

using json = nlohmann::ordered_json;

struct SuiteConfig {
    std::uint32_t max_ptype_size = 10;
    std::vector<std::uint64_t> primes = {2, 3, 5};
    OracleBudget oracle_budget;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> suites; // empty = all

    // Exhaustion bounds: exhaustive below, sampled above.
    std::uint64_t oracle_equiv_max_order = 64;
    std::uint32_t multi_prime_max_length = 6;
    std::uint32_t pair_weight_max = 8;
    std::uint32_t realization_weight_max = 8;
    std::uint32_t ordinal_law_cases = 10'000;
    std::uint32_t chain_cases = 1'000;
    std::uint64_t per_suite_deadline_ms = 300'000;
};

struct CaseFailure {
    std::string description;
    json replay;
};

struct PropertyResult {
    std::string name;
    std::string statement;
    std::string status = "law"; // or "derived-regularity"
    std::uint64_t cases_run = 0;
    std::uint64_t failure_count = 0;
    std::vector<CaseFailure> failures; // minimal/first failure kept
    bool deadline_exceeded = false;
    double elapsed_ms = 0.0;

    bool passed() const { return failure_count == 0 && !deadline_exceeded; }
};

struct SuiteReport {
    std::uint64_t seed = 0;
    SuiteConfig config;
    std::vector<PropertyResult> properties;

    bool passed() const {
        for (const auto& p : properties)
            if (!p.passed()) return false;
        return true;
    }

    json to_json(bool include_timings = false) const {
        json out;
        out["seed"] = seed;
        out["config"] = {{"max_ptype_size", config.max_ptype_size},
                         {"primes", config.primes},
                         {"oracle_order_budget", config.oracle_budget.max_order},
                         {"oracle_equiv_max_order", config.oracle_equiv_max_order}};
        out["properties"] = json::array();
        for (const auto& p : properties) {
            json jp;
            jp["name"] = p.name;
            jp["statement"] = p.statement;
            jp["status"] = p.status;
            jp["cases_run"] = p.cases_run;
            jp["failure_count"] = p.failure_count;
            jp["failures"] = json::array();
            for (const auto& f : p.failures)
                jp["failures"].push_back({{"description", f.description}, {"replay", f.replay}});
            jp["deadline_exceeded"] = p.deadline_exceeded;
            if (include_timings) jp["elapsed_ms"] = p.elapsed_ms;
            jp["passed"] = p.passed();
            out["properties"].push_back(std::move(jp));
        }
        out["passed"] = passed();
        return out;
    }
};

using OrdinalAddFn = std::function<Ordinal(const Ordinal&, const Ordinal&)>;

namespace suite_detail {

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "bounds",           "chain-characterization", "duality",
        "monotonicity",     "oracle-equivalence",     "ordinal-laws",
        "prime-independence", "realization",          "superadditivity"};
    return names;
}

class PropertyRun {
public:
    PropertyRun(std::string name, std::string statement, std::uint64_t deadline_ms)
        : start_(std::chrono::steady_clock::now()), deadline_ms_(deadline_ms) {
        result_.name = std::move(name);
        result_.statement = std::move(statement);
    }

    bool expired() {
        if (result_.deadline_exceeded) return true;
        if (++clock_probe_ % 64 != 0) return false;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        if (static_cast<std::uint64_t>(ms) > deadline_ms_) result_.deadline_exceeded = true;
        return result_.deadline_exceeded;
    }

    void check(bool ok, const std::string& description, const json& replay) {
        ++result_.cases_run;
        if (ok) return;
        ++result_.failure_count;
        if (result_.failures.empty()) result_.failures.push_back({description, replay});
    }

    // Replaces the stored failure with a smaller one (used after shrinking).
    void replace_failure(const std::string& description, const json& replay) {
        if (!result_.failures.empty()) result_.failures[0] = {description, replay};
    }

    PropertyResult finish() {
        result_.elapsed_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
                std::chrono::steady_clock::now() - start_)
                .count();
        return result_;
    }

    PropertyResult& result() { return result_; }

private:
    PropertyResult result_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t deadline_ms_;
    std::uint64_t clock_probe_ = 0;
};

// Deterministic bounded sampler (distribution classes vary per stdlib).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Ordinal random_ordinal_below_w5(std::mt19937_64& rng) {
    std::vector<Ordinal::Term> terms;
    for (std::uint64_t e = 5; e-- > 0;) {
        if (bounded(rng, 2) == 0) continue;
        terms.push_back({Natural(e), Natural(1 + bounded(rng, 6))});
    }
    return Ordinal::from_terms(std::move(terms));
}

// Strictly smaller variants of an ordinal: drop a term, decrement a
// coefficient, or decrement an exponent where that keeps the CNF canonical.
inline std::vector<Ordinal> ordinal_shrinks(const Ordinal& o) {
    std::vector<Ordinal> out;
    const auto& terms = o.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto t = terms;
        t.erase(t.begin() + i);
        out.push_back(Ordinal::from_terms(std::move(t)));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coefficient == Natural(1)) continue;
        auto t = terms;
        t[i].coefficient.decrement();
        out.push_back(Ordinal::from_terms(std::move(t)));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].exponent.is_zero()) continue;
        Natural lowered = terms[i].exponent;
        lowered.decrement();
        if (i + 1 < terms.size() && !(terms[i + 1].exponent < lowered)) continue;
        auto t = terms;
        t[i].exponent = lowered;
        out.push_back(Ordinal::from_terms(std::move(t)));
    }
    return out;
}

struct OrdinalCase {
    Ordinal a, b, c;
    std::string law;
};

inline bool ordinal_case_holds(const OrdinalCase& cs, const OrdinalAddFn& add) {
    const Ordinal &a = cs.a, &b = cs.b, &c = cs.c;
    if (cs.law == "canonical-form")
        return add(a, b).invariants_hold();
    if (cs.law == "associativity")
        return add(add(a, b), c) == add(a, add(b, c));
    if (cs.law == "left-strict-monotonicity")
        return !(a < b) || add(c, a) < add(c, b);
    if (cs.law == "right-weak-monotonicity")
        return !(a < b) || add(a, c) <= add(b, c);
    if (cs.law == "right-identity")
        return add(a, Ordinal::zero()) == a;
    if (cs.law == "left-identity")
        return add(Ordinal::zero(), a) == a;
    if (cs.law == "non-commutativity-witness") {
        Ordinal omega_plus_one =
            Ordinal::from_terms({{Natural(1), Natural(1)}, {Natural(0), Natural(1)}});
        return add(Ordinal(1), Ordinal::omega()) == Ordinal::omega() &&
               add(Ordinal::omega(), Ordinal(1)) == omega_plus_one &&
               !(add(Ordinal(1), Ordinal::omega()) == add(Ordinal::omega(), Ordinal(1)));
    }
    throw domain_error("unknown ordinal law: " + cs.law);
}

inline json ordinal_case_json(const OrdinalCase& cs) {
    return json{{"law", cs.law},
                {"a", ord_format(cs.a)},
                {"b", ord_format(cs.b)},
                {"c", ord_format(cs.c)}};
}

inline OrdinalCase ordinal_case_from_json(const json& j) {
    return {ord_parse(j.at("a").get<std::string>()), ord_parse(j.at("b").get<std::string>()),
            ord_parse(j.at("c").get<std::string>()), j.at("law").get<std::string>()};
}

inline OrdinalCase shrink_ordinal_case(OrdinalCase cs, const OrdinalAddFn& add) {
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (int slot = 0; slot < 3 && !progressed; ++slot) {
            Ordinal& target = slot == 0 ? cs.a : slot == 1 ? cs.b : cs.c;
            for (const auto& candidate : ordinal_shrinks(target)) {
                OrdinalCase smaller = cs;
                (slot == 0 ? smaller.a : slot == 1 ? smaller.b : smaller.c) = candidate;
                if (!ordinal_case_holds(smaller, add)) {
                    cs = smaller;
                    progressed = true;
                    break;
                }
            }
        }
    }
    return cs;
}

// All single-prime types {p: lambda}, weight 1..max, per prime.
inline std::vector<AbelianType> ptype_universe(const std::vector<std::uint64_t>& primes,
                                               std::uint32_t max_weight) {
    std::vector<AbelianType> out;
    for (auto p : primes)
        for (const auto& lambda : partitions_up_to(max_weight))
            if (!lambda.empty()) out.push_back(AbelianType::p_type(p, lambda));
    return out;
}

// All types over the given primes with total composition length <= max;
// includes the zero type and single-prime types.
inline std::vector<AbelianType> multiprime_universe(const std::vector<std::uint64_t>& primes,
                                                    std::uint32_t max_length) {
    std::vector<AbelianType> out;
    std::map<std::uint64_t, Partition> current;
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t budget) -> void {
        if (i == primes.size()) {
            out.push_back(AbelianType(current));
            return;
        }
        self(self, i + 1, budget); // skip this prime
        for (const auto& lambda : partitions_up_to(budget)) {
            if (lambda.empty()) continue;
            current[primes[i]] = lambda;
            self(self, i + 1, budget - static_cast<std::uint32_t>(lambda.weight()));
            current.erase(primes[i]);
        }
    };
    rec(rec, 0, max_length);
    std::sort(out.begin(), out.end());
    return out;
}

// Nondecreasing factor multisets with product <= max_product (the empty
// multiset = trivial group included).
inline std::vector<std::vector<std::uint64_t>> moduli_multisets(std::uint64_t max_product) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> current;
    auto rec = [&](auto&& self, std::uint64_t min_factor, std::uint64_t remaining) -> void {
        out.push_back(current);
        for (std::uint64_t m = min_factor; m <= remaining; ++m) {
            current.push_back(m);
            self(self, m, remaining / m);
            current.pop_back();
        }
    };
    rec(rec, 2, max_product);
    return out;
}

// Cyclic moduli of a finite type (p^a per part); nullopt when the order
// would exceed the cap.
inline std::optional<std::vector<std::uint64_t>> moduli_of_type(const AbelianType& t,
                                                                std::uint64_t max_order) {
    std::vector<std::uint64_t> moduli;
    std::uint64_t order = 1;
    for (const auto& [p, lambda] : t.primary()) {
        for (auto part : lambda.parts()) {
            std::uint64_t m = 1;
            for (std::uint32_t i = 0; i < part; ++i) {
                if (m > max_order / p) return std::nullopt;
                m *= p;
            }
            if (order > max_order / m) return std::nullopt;
            order *= m;
            moduli.push_back(m);
        }
    }
    return moduli;
}

inline json type_json(const AbelianType& t) { return json(format_group_spec(t)); }

// Combined single-prime + multi-prime universe, ordered by composition
// length then canonically, so the first failure an exhaustive sweep reports
// is a minimal counterexample.
inline std::vector<AbelianType> sorted_universe(const std::vector<std::uint64_t>& primes,
                                                std::uint32_t ptype_weight,
                                                std::uint32_t multi_length) {
    auto universe = ptype_universe(primes, ptype_weight);
    auto multi = multiprime_universe(primes, multi_length);
    universe.insert(universe.end(), multi.begin(), multi.end());
    std::sort(universe.begin(), universe.end(), [](const AbelianType& a, const AbelianType& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a < b;
    });
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    return universe;
}

inline AbelianType type_from_json(const json& j) {
    return parse_group_spec(j.get<std::string>());
}

} // namespace suite_detail

// ---------------- individual suites ----------------

inline PropertyResult run_ordinal_laws(const SuiteConfig& cfg, const OrdinalAddFn& add_fn = {}) {
    using namespace suite_detail;
    OrdinalAddFn add = add_fn ? add_fn : OrdinalAddFn([](const Ordinal& a, const Ordinal& b) {
        return ord_add(a, b);
    });
    PropertyRun run("ordinal-laws",
                    "ordinal sums below w^w: associativity, strict left and weak right "
                    "monotonicity, canonical results, identities, 1+w = w != w+1",
                    cfg.per_suite_deadline_ms);
    std::mt19937_64 rng(cfg.rng_seed ^ 0x6f7264696e616cull);

    auto check_case = [&](const OrdinalCase& cs) {
        bool ok = false;
        std::string description;
        try {
            ok = ordinal_case_holds(cs, add);
            description = "violated: " + cs.law;
        } catch (const std::exception& e) {
            description = std::string("exception: ") + e.what();
        }
        if (!ok) {
            OrdinalCase minimal = cs;
            try {
                minimal = shrink_ordinal_case(cs, add);
            } catch (const std::exception&) {
            }
            run.check(false, description, ordinal_case_json(minimal));
        } else {
            run.check(true, "", {});
        }
    };

    check_case({Ordinal::zero(), Ordinal::zero(), Ordinal::zero(), "non-commutativity-witness"});
    for (std::uint32_t i = 0; i < cfg.ordinal_law_cases && !run.expired(); ++i) {
        OrdinalCase cs{random_ordinal_below_w5(rng), random_ordinal_below_w5(rng),
                       random_ordinal_below_w5(rng), ""};
        for (const char* law : {"canonical-form", "associativity", "left-strict-monotonicity",
                                "right-weak-monotonicity", "right-identity", "left-identity"}) {
            cs.law = law;
            check_case(cs);
        }
    }
    return run.finish();
}

inline PropertyResult run_monotonicity(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("monotonicity",
                    "subtype c.u.dim never exceeds the parent's, strictly below it for "
                    "non-uniform parents; every nonzero type has a uniform subtype; a type "
                    "whose only nonzero subtype is itself is uniform",
                    cfg.per_suite_deadline_ms);
    auto universe = sorted_universe(cfg.primes, cfg.max_ptype_size, cfg.multi_prime_max_length);

    for (const auto& t : universe) {
        if (run.expired()) break;
        if (t.is_zero()) continue;
        Ordinal dt = engine.cudim(t);
        bool uniform = invariants(t).is_uniform;
        bool has_uniform_subtype = false;
        bool only_self = true;
        for (const auto& mu : subtypes(t)) {
            if (mu.is_zero()) continue;
            Ordinal dmu = engine.cudim(mu);
            run.check(dmu <= dt, "subtype dimension exceeds parent",
                      json{{"type", type_json(t)}, {"subtype", type_json(mu)}});
            if (!(mu == t)) {
                only_self = false;
                if (!uniform)
                    run.check(dmu < dt, "non-uniform parent matched by proper subtype dimension",
                              json{{"type", type_json(t)}, {"subtype", type_json(mu)}});
            }
            if (invariants(mu).is_uniform) has_uniform_subtype = true;
        }
        run.check(has_uniform_subtype, "nonzero type without uniform subtype",
                  json{{"type", type_json(t)}});
        if (only_self)
            run.check(uniform, "self-only subtype lattice but not uniform",
                      json{{"type", type_json(t)}});
    }
    return run.finish();
}

inline PropertyResult run_bounds(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("bounds",
                    "u.dim(t) <= c.u.dim(t) <= length(t), and no quotient type raises c.u.dim",
                    cfg.per_suite_deadline_ms);
    auto universe = sorted_universe(cfg.primes, cfg.max_ptype_size, cfg.multi_prime_max_length);

    for (const auto& t : universe) {
        if (run.expired()) break;
        Ordinal d = engine.cudim(t);
        run.check(Ordinal(t.uniform_dim()) <= d && d <= Ordinal(t.length()),
                  "u.dim <= c.u.dim <= length violated", json{{"type", type_json(t)}});
        for (const auto& mu : quotient_types(t))
            run.check(engine.cudim(mu) <= d, "quotient type raises c.u.dim",
                      json{{"type", type_json(t)}, {"quotient", type_json(mu)}});
    }
    return run.finish();
}

inline PropertyResult run_superadditivity(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("superadditivity",
                    "c.u.dim(s + t) >= c.u.dim(s) + c.u.dim(t) for finite types; strict at "
                    "Z2, Z4",
                    cfg.per_suite_deadline_ms);
    auto universe = sorted_universe(cfg.primes, 0, cfg.pair_weight_max);
    for (const auto& s : universe) {
        if (s.is_zero()) continue;
        if (run.expired()) break;
        for (const auto& t : universe) {
            if (t.is_zero() || s.length() + t.length() > cfg.pair_weight_max) continue;
            Ordinal lhs = engine.cudim(direct_sum(s, t));
            Ordinal rhs = ord_add(engine.cudim(s), engine.cudim(t));
            run.check(rhs <= lhs, "superadditivity violated",
                      json{{"s", type_json(s)}, {"t", type_json(t)}});
        }
    }
    AbelianType z2 = parse_group_spec("Z2"), z4 = parse_group_spec("Z4");
    run.check(engine.cudim(direct_sum(z2, z4)) == Ordinal(3) &&
                  ord_add(engine.cudim(z2), engine.cudim(z4)) == Ordinal(2),
              "strictness witness Z2+Z4 failed", json{{"s", "Z2"}, {"t", "Z4"}});
    return run.finish();
}

inline PropertyResult run_realization(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("realization",
                    "for every beta <= c.u.dim(t) some subtype realizes c.u.dim exactly beta "
                    "(oracle-checked when the subtype is small)",
                    cfg.per_suite_deadline_ms);
    auto universe =
        sorted_universe(cfg.primes, cfg.realization_weight_max, cfg.realization_weight_max);

    for (const auto& t : universe) {
        if (run.expired()) break;
        std::uint64_t top = engine.cudim(t).finite_value();
        for (std::uint64_t beta = 0; beta <= top; ++beta) {
            bool ok = false;
            std::string description = "realization failed";
            try {
                AbelianType mu = engine.realize(t, Ordinal(beta));
                ok = engine.cudim(mu) == Ordinal(beta);
                if (ok) {
                    if (auto moduli = moduli_of_type(mu, cfg.oracle_equiv_max_order)) {
                        ok = oracle_cudim(ExplicitGroup(*moduli), cfg.oracle_budget) ==
                             Ordinal(beta);
                        description = "oracle disagrees with realized subtype dimension";
                    }
                } else {
                    description = "realized subtype has wrong dimension";
                }
            } catch (const std::exception& e) {
                description = std::string("exception: ") + e.what();
            }
            run.check(ok, description, json{{"type", type_json(t)}, {"beta", beta}});
        }
    }
    return run.finish();
}

inline PropertyResult run_duality(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("duality",
                    "u.s.dim(t) = c.u.dim(t) on every tested finite type (an identity for "
                    "semisimple types; recorded as a computed regularity in general)",
                    cfg.per_suite_deadline_ms);
    run.result().status = "derived-regularity";
    auto universe = sorted_universe(cfg.primes, cfg.max_ptype_size, cfg.multi_prime_max_length);
    for (const auto& t : universe) {
        if (run.expired()) break;
        run.check(engine.cudim(t) == engine.usdim(t), "u.s.dim differs from c.u.dim",
                  json{{"type", type_json(t)}});
    }
    return run.finish();
}

inline PropertyResult run_prime_independence(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("prime-independence",
                    "c.u.dim and u.s.dim of {p: lambda} do not depend on the prime p",
                    cfg.per_suite_deadline_ms);
    for (const auto& lambda : partitions_up_to(cfg.max_ptype_size)) {
        if (lambda.empty()) continue;
        if (run.expired()) break;
        std::optional<Ordinal> cu, us;
        bool consistent = true;
        for (auto p : cfg.primes) {
            AbelianType t = AbelianType::p_type(p, lambda);
            Ordinal c = engine.cudim(t), u = engine.usdim(t);
            if (!cu) {
                cu = c;
                us = u;
            } else if (!(c == *cu) || !(u == *us)) {
                consistent = false;
            }
        }
        json parts = json::array();
        for (auto part : lambda.parts()) parts.push_back(part);
        run.check(consistent, "dimension depends on the prime",
                  json{{"partition", parts}, {"primes", cfg.primes}});
    }
    return run.finish();
}

inline PropertyResult run_oracle_equivalence(const SuiteConfig& cfg, DimensionEngine& engine) {
    using namespace suite_detail;
    PropertyRun run("oracle-equivalence",
                    "type-level c.u.dim/u.s.dim, subtype and quotient-type sets, and "
                    "uniformity agree with literal subgroup-lattice evaluation on every "
                    "group within the exhaustive order bound",
                    cfg.per_suite_deadline_ms);
    for (const auto& moduli : moduli_multisets(cfg.oracle_equiv_max_order)) {
        if (run.expired()) break;
        json replay = json{{"moduli", moduli}};
        try {
            ExplicitGroup g(moduli);
            SubgroupLattice lat = enumerate_subgroups(g, cfg.oracle_budget);
            AbelianType t = g.type();

            run.check(oracle_cudim(lat) == engine.cudim(t), "oracle c.u.dim disagrees", replay);
            run.check(oracle_usdim(lat) == engine.usdim(t), "oracle u.s.dim disagrees", replay);
            run.check(oracle_subgroup_types(lat) == subtypes(t),
                      "subgroup types differ from the componentwise subtype rule", replay);
            run.check(oracle_quotient_types(lat) == quotient_types(t),
                      "quotient types differ from the self-dual quotient rule", replay);

            bool uniform_agree = true;
            bool lagrange = true;
            for (std::size_t i = 0; i < lat.size(); ++i) {
                if (lat.is_uniform_node(i) != invariants(lat.node_type(i)).is_uniform)
                    uniform_agree = false;
                if (g.order() % lat.node(i).order != 0) lagrange = false;
            }
            run.check(uniform_agree, "pairwise-intersection uniformity disagrees with flag",
                      replay);
            run.check(lagrange, "subgroup order does not divide group order", replay);

            // Spot count formulas: Z_p x Z_p has p+3 subgroups, Z_p^3 has
            // 2(p^2+p+1)+2, Z4 x Z2 has 8.
            if (moduli.size() == 2 && moduli[0] == moduli[1] && is_prime(moduli[0]))
                run.check(lat.size() == moduli[0] + 3, "Z_p x Z_p subgroup count wrong", replay);
            if (moduli.size() == 3 && moduli[0] == moduli[1] && moduli[1] == moduli[2] &&
                is_prime(moduli[0])) {
                std::uint64_t p = moduli[0];
                run.check(lat.size() == 2 * (p * p + p + 1) + 2,
                          "Z_p^3 subgroup count wrong", replay);
            }
            if (moduli == std::vector<std::uint64_t>{2, 4})
                run.check(lat.size() == 8, "Z4 x Z2 subgroup count wrong", replay);
        } catch (const std::exception& e) {
            run.check(false, std::string("exception: ") + e.what(), replay);
        }
    }
    return run.finish();
}

inline PropertyResult run_chain_characterization(const SuiteConfig& cfg) {
    using namespace suite_detail;
    PropertyRun run("chain-characterization",
                    "every weakly descending subgroup chain has a member that is uniform or "
                    "isomorphic to the whole tail, and the verdict is sound",
                    cfg.per_suite_deadline_ms);
    std::mt19937_64 rng(cfg.rng_seed ^ 0x636861696e73ull);
    auto multisets = moduli_multisets(cfg.oracle_equiv_max_order);
    // Drop the trivial group: chains there are constant anyway.
    std::vector<std::vector<std::uint64_t>> pool;
    for (auto& m : multisets)
        if (!m.empty()) pool.push_back(m);

    std::map<std::vector<std::uint64_t>, SubgroupLattice> cache;
    for (std::uint32_t i = 0; i < cfg.chain_cases && !run.expired(); ++i) {
        const auto& moduli = pool[bounded(rng, pool.size())];
        auto it = cache.find(moduli);
        if (it == cache.end())
            it = cache.emplace(moduli, enumerate_subgroups(ExplicitGroup(moduli),
                                                           cfg.oracle_budget))
                     .first;
        const SubgroupLattice& lat = it->second;

        std::vector<Subgroup> chain;
        std::size_t current = bounded(rng, lat.size());
        std::size_t length = 3 + bounded(rng, 5);
        std::vector<json> chain_replay;
        for (std::size_t step = 0; step < length; ++step) {
            chain.push_back(lat.node(current));
            chain_replay.push_back(json(lat.node(current).elements()));
            std::vector<std::size_t> inside;
            for (std::size_t j = 0; j < lat.size(); ++j)
                if (lat.includes(current, j)) inside.push_back(j);
            current = inside[bounded(rng, inside.size())];
        }
        json replay = json{{"moduli", moduli}, {"chain", chain_replay}};
        try {
            ChainVerdict v = chain_check(lat.group(), chain, cfg.oracle_budget);
            bool ok = v.witness_index >= 1 && v.witness_index <= chain.size();
            if (ok) {
                std::size_t n = v.witness_index - 1;
                auto idx = lat.find(chain[n].mask);
                if (!idx) {
                    ok = false;
                } else if (v.reason == ChainVerdict::Reason::uniform) {
                    ok = lat.is_uniform_node(*idx);
                } else {
                    for (std::size_t k = n; k < chain.size() && ok; ++k) {
                        auto kidx = lat.find(chain[k].mask);
                        ok = kidx && lat.node_type(*kidx) == lat.node_type(*idx);
                    }
                }
            }
            run.check(ok, "chain verdict missing or unsound", replay);
        } catch (const std::exception& e) {
            run.check(false, std::string("exception: ") + e.what(), replay);
        }
    }
    return run.finish();
}

// ---------------- dispatch ----------------

inline SuiteReport run_suite(const SuiteConfig& cfg) {
    using namespace suite_detail;
    std::vector<std::string> selected = cfg.suites;
    if (selected.empty()) selected = suite_names();
    for (const auto& name : selected) {
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            std::string valid;
            for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
            throw domain_error("unknown suite name '" + name + "' (valid: " + valid + ")");
        }
    }
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

    DimensionEngine engine;
    SuiteReport report;
    report.seed = cfg.rng_seed;
    report.config = cfg;
    for (const auto& name : selected) {
        if (name == "ordinal-laws")
            report.properties.push_back(run_ordinal_laws(cfg));
        else if (name == "monotonicity")
            report.properties.push_back(run_monotonicity(cfg, engine));
        else if (name == "bounds")
            report.properties.push_back(run_bounds(cfg, engine));
        else if (name == "superadditivity")
            report.properties.push_back(run_superadditivity(cfg, engine));
        else if (name == "realization")
            report.properties.push_back(run_realization(cfg, engine));
        else if (name == "duality")
            report.properties.push_back(run_duality(cfg, engine));
        else if (name == "prime-independence")
            report.properties.push_back(run_prime_independence(cfg, engine));
        else if (name == "oracle-equivalence")
            report.properties.push_back(run_oracle_equivalence(cfg, engine));
        else if (name == "chain-characterization")
            report.properties.push_back(run_chain_characterization(cfg));
    }
    return report;
}

// Re-runs one reported case; true = the case passes now. `add_fn` lets the
// ordinal-laws replay target the same implementation that failed.
inline bool replay_case(const std::string& suite, const json& replay,
                        const OrdinalAddFn& add_fn = {}) {
    using namespace suite_detail;
    DimensionEngine engine;
    if (suite == "ordinal-laws") {
        OrdinalAddFn add = add_fn ? add_fn : OrdinalAddFn([](const Ordinal& a, const Ordinal& b) {
            return ord_add(a, b);
        });
        return ordinal_case_holds(ordinal_case_from_json(replay), add);
    }
    if (suite == "monotonicity" || suite == "bounds" || suite == "duality") {
        AbelianType t = type_from_json(replay.at("type"));
        Ordinal d = engine.cudim(t);
        if (suite == "duality") return engine.usdim(t) == d;
        if (suite == "bounds") {
            if (!(Ordinal(t.uniform_dim()) <= d && d <= Ordinal(t.length()))) return false;
            for (const auto& mu : quotient_types(t))
                if (!(engine.cudim(mu) <= d)) return false;
            return true;
        }
        for (const auto& mu : subtypes(t)) {
            if (mu.is_zero()) continue;
            if (!(engine.cudim(mu) <= d)) return false;
            if (!(mu == t) && !invariants(t).is_uniform && !(engine.cudim(mu) < d)) return false;
        }
        return true;
    }
    if (suite == "superadditivity") {
        AbelianType s = type_from_json(replay.at("s")), t = type_from_json(replay.at("t"));
        return ord_add(engine.cudim(s), engine.cudim(t)) <= engine.cudim(direct_sum(s, t));
    }
    if (suite == "realization") {
        AbelianType t = type_from_json(replay.at("type"));
        Ordinal beta(replay.at("beta").get<std::uint64_t>());
        return engine.cudim(engine.realize(t, beta)) == beta;
    }
    if (suite == "prime-independence") {
        std::vector<std::uint32_t> parts;
        for (const auto& v : replay.at("partition")) parts.push_back(v.get<std::uint32_t>());
        Partition lambda(parts);
        std::optional<Ordinal> cu, us;
        for (const auto& pv : replay.at("primes")) {
            AbelianType t = AbelianType::p_type(pv.get<std::uint64_t>(), lambda);
            Ordinal c = engine.cudim(t), u = engine.usdim(t);
            if (!cu) {
                cu = c;
                us = u;
            } else if (!(c == *cu) || !(u == *us)) {
                return false;
            }
        }
        return true;
    }
    if (suite == "oracle-equivalence") {
        std::vector<std::uint64_t> moduli;
        for (const auto& v : replay.at("moduli")) moduli.push_back(v.get<std::uint64_t>());
        ExplicitGroup g(moduli);
        SubgroupLattice lat = enumerate_subgroups(g);
        AbelianType t = g.type();
        return oracle_cudim(lat) == engine.cudim(t) && oracle_usdim(lat) == engine.usdim(t) &&
               oracle_subgroup_types(lat) == subtypes(t) &&
               oracle_quotient_types(lat) == quotient_types(t);
    }
    if (suite == "chain-characterization") {
        std::vector<std::uint64_t> moduli;
        for (const auto& v : replay.at("moduli")) moduli.push_back(v.get<std::uint64_t>());
        ExplicitGroup g(moduli);
        std::vector<Subgroup> chain;
        for (const auto& member : replay.at("chain")) {
            Subgroup sg;
            sg.mask = ElementSet(g.order());
            for (const auto& e : member) sg.mask.set(e.get<std::uint64_t>());
            sg.order = sg.mask.count();
            chain.push_back(std::move(sg));
        }
        ChainVerdict v = chain_check(g, chain);
        return v.witness_index >= 1 && v.witness_index <= chain.size();
    }
    throw domain_error("unknown suite name '" + suite + "'");
}

} // namespace cudim
