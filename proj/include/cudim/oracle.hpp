#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cudim/abelian_type.hpp"
#include "cudim/errors.hpp"
#include "cudim/ordinal.hpp"

namespace cudim {

struct OracleBudget {
    std::uint64_t max_order = 512;
    std::uint64_t max_nodes = 1'000'000;
};

// Membership mask over the elements of an explicit group.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::uint64_t universe)
        : bits_(universe), words_((universe + 63) / 64, 0) {}

    std::uint64_t universe() const { return bits_; }

    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    std::uint64_t count() const {
        std::uint64_t n = 0;
        for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
        return n;
    }

    bool subset_of(const ElementSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    // Shared elements beyond the identity (bit 0 is set in every subgroup).
    bool intersects_nontrivially(const ElementSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i] & o.words_[i];
            if (i == 0) w &= ~std::uint64_t{1};
            if (w) return true;
        }
        return false;
    }

    void union_with(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                std::uint64_t bit = w & (~w + 1);
                fn(static_cast<std::uint32_t>(i * 64 + __builtin_ctzll(w)));
                w ^= bit;
            }
        }
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

    friend bool operator==(const ElementSet&, const ElementSet&) = default;

    // Lexicographic on words; used only to fix a deterministic node order.
    friend bool operator<(const ElementSet& a, const ElementSet& b) {
        return a.words_ < b.words_;
    }

private:
    std::uint64_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Direct product of cyclic groups Z_{m_1} x ... x Z_{m_k}; elements are
// mixed-radix indices over the moduli, index 0 the identity.
class ExplicitGroup {
public:
    explicit ExplicitGroup(const std::vector<std::uint64_t>& moduli) {
        order_ = 1;
        for (auto m : moduli) {
            if (m == 0) throw domain_error("infinite cyclic summand unsupported here (use catalog)");
            if (m == 1) continue;
            if (order_ > UINT64_MAX / m) throw budget_error("group order exceeds the 2^64 budget");
            order_ *= m;
            moduli_.push_back(m);
        }
    }

    const std::vector<std::uint64_t>& moduli() const { return moduli_; }
    std::uint64_t order() const { return order_; }

    std::vector<std::uint64_t> decode(std::uint64_t x) const {
        std::vector<std::uint64_t> tuple(moduli_.size());
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            tuple[i] = x % moduli_[i];
            x /= moduli_[i];
        }
        return tuple;
    }

    std::uint64_t encode(const std::vector<std::uint64_t>& tuple) const {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) x = x * moduli_[i] + tuple[i] % moduli_[i];
        return x;
    }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        std::uint64_t out = 0, scale = 1;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            std::uint64_t m = moduli_[i];
            out += ((x % m + y % m) % m) * scale;
            scale *= m;
            x /= m;
            y /= m;
        }
        return out;
    }

    std::uint64_t scalar_mul(std::uint64_t k, std::uint64_t x) const {
        std::uint64_t out = 0, scale = 1;
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            std::uint64_t m = moduli_[i];
            out += ((x % m) * (k % m) % m) * scale;
            scale *= m;
            x /= m;
        }
        return out;
    }

    AbelianType type(const FactorBudget& budget = {}) const {
        return type_from_orders(moduli_, budget);
    }

private:
    std::vector<std::uint64_t> moduli_;
    std::uint64_t order_ = 1;
};

struct Subgroup {
    ElementSet mask;
    std::vector<std::uint64_t> generators; // generating chain discovered by enumeration
    std::uint64_t order = 0;

    std::vector<std::uint32_t> elements() const {
        std::vector<std::uint32_t> out;
        out.reserve(order);
        mask.for_each([&](std::uint32_t x) { out.push_back(x); });
        return out;
    }
};

namespace detail {

// <H, g> in an abelian group is the union of the cosets H + j*g.
inline ElementSet close_with(const ExplicitGroup& g, const ElementSet& h, std::uint64_t gen) {
    ElementSet out = h;
    std::uint64_t t = gen;
    while (!h.test(t)) {
        h.for_each([&](std::uint32_t x) { out.set(g.add(x, t)); });
        t = g.add(t, gen);
    }
    return out;
}

// Isomorphism type from element-order statistics: for each prime p the
// count of x with p^i * x in K (a power of p) determines the conjugate
// partition layer by layer.
inline AbelianType type_from_order_counts(const ExplicitGroup& g, const ElementSet& h,
                                          const ElementSet& k, std::uint64_t quotient_order) {
    std::map<std::uint64_t, Partition> primary;
    for (const auto& [p, vmax] : factorize(quotient_order)) {
        std::vector<std::uint64_t> cumulative(vmax + 1, 0); // m_i = #cosets killed by p^i
        h.for_each([&](std::uint32_t x) {
            std::uint64_t y = x;
            std::uint32_t steps = 0;
            while (!k.test(y) && steps <= vmax) {
                y = g.scalar_mul(p, y);
                ++steps;
            }
            if (k.test(y) && steps <= vmax)
                for (std::uint32_t i = steps; i <= vmax; ++i) ++cumulative[i];
        });
        std::uint64_t divisor = k.count();
        std::vector<std::uint32_t> conjugate_parts;
        std::uint64_t prev_log = 0;
        for (std::uint32_t i = 1; i <= vmax; ++i) {
            if (cumulative[i] % divisor != 0)
                throw domain_error("order statistics inconsistent: input set is not a subgroup");
            std::uint64_t m = cumulative[i] / divisor;
            std::uint64_t log = 0, check = 1;
            for (std::uint64_t v = m; v > 1; v /= p) {
                ++log;
                check *= p;
            }
            if (check != m || log < prev_log)
                throw domain_error("order statistics inconsistent: input set is not a subgroup");
            conjugate_parts.push_back(static_cast<std::uint32_t>(log - prev_log));
            prev_log = log;
        }
        Partition lambda = Partition(std::move(conjugate_parts)).conjugate();
        if (!lambda.empty()) primary.emplace(p, lambda);
    }
    AbelianType result(std::move(primary));
    std::uint64_t reconstructed = 1;
    for (const auto& [p, lambda] : result.primary())
        for (auto part : lambda.parts())
            for (std::uint32_t i = 0; i < part; ++i) reconstructed *= p;
    if (reconstructed != quotient_order)
        throw domain_error("order statistics inconsistent: input set is not a subgroup");
    return result;
}

} // namespace detail

inline AbelianType subgroup_type(const ExplicitGroup& g, const ElementSet& h) {
    ElementSet identity(g.order());
    identity.set(0);
    return detail::type_from_order_counts(g, h, identity, h.count());
}

inline AbelianType subgroup_type(const ExplicitGroup& g, const Subgroup& h) {
    return subgroup_type(g, h.mask);
}

// Type of the quotient H/K via order statistics on cosets.
inline AbelianType quotient_type(const ExplicitGroup& g, const ElementSet& h,
                                 const ElementSet& k) {
    return detail::type_from_order_counts(g, h, k, h.count() / k.count());
}

// The full subgroup lattice of an explicit group, nodes deduplicated by
// element set and sorted by (order, element set).
class SubgroupLattice {
public:
    SubgroupLattice(ExplicitGroup group, std::vector<Subgroup> nodes)
        : group_(std::move(group)), nodes_(std::move(nodes)) {
        std::sort(nodes_.begin(), nodes_.end(), [](const Subgroup& a, const Subgroup& b) {
            if (a.order != b.order) return a.order < b.order;
            return a.mask < b.mask;
        });
        types_.reserve(nodes_.size());
        for (const auto& node : nodes_) types_.push_back(subgroup_type(group_, node.mask));
    }

    const ExplicitGroup& group() const { return group_; }
    std::size_t size() const { return nodes_.size(); }
    const Subgroup& node(std::size_t i) const { return nodes_[i]; }
    const AbelianType& node_type(std::size_t i) const { return types_[i]; }

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return nodes_.size() - 1; }

    bool includes(std::size_t outer, std::size_t inner) const {
        return nodes_[inner].mask.subset_of(nodes_[outer].mask);
    }

    std::optional<std::size_t> find(const ElementSet& mask) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].mask == mask) return i;
        return std::nullopt;
    }

    // Literal uniformity: nonzero, and every pair of nontrivial subgroups
    // meets nontrivially (checked by pairwise intersection, not by type).
    bool is_uniform_node(std::size_t i) const {
        if (nodes_[i].order <= 1) return false;
        std::vector<std::size_t> subs;
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (nodes_[j].order > 1 && includes(i, j)) subs.push_back(j);
        for (std::size_t a = 0; a < subs.size(); ++a)
            for (std::size_t b = a + 1; b < subs.size(); ++b)
                if (!nodes_[subs[a]].mask.intersects_nontrivially(nodes_[subs[b]].mask))
                    return false;
        return true;
    }

private:
    ExplicitGroup group_;
    std::vector<Subgroup> nodes_;
    std::vector<AbelianType> types_;
};

// Breadth-first closure enumeration: grow every known subgroup by one more
// generator, deduplicating by element set, until no new subgroup appears.
inline SubgroupLattice enumerate_subgroups(const ExplicitGroup& g,
                                           const OracleBudget& budget = {}) {
    if (g.order() > budget.max_order)
        throw budget_error("group order " + std::to_string(g.order()) +
                           " exceeds oracle budget " + std::to_string(budget.max_order));

    std::vector<Subgroup> nodes;
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen; // hash -> node indices
    auto lookup = [&](const ElementSet& mask) -> bool {
        auto it = seen.find(mask.hash());
        if (it == seen.end()) return false;
        for (auto idx : it->second)
            if (nodes[idx].mask == mask) return true;
        return false;
    };
    auto insert = [&](Subgroup sg) {
        seen[sg.mask.hash()].push_back(nodes.size());
        nodes.push_back(std::move(sg));
        if (nodes.size() > budget.max_nodes)
            throw budget_error("subgroup count exceeds node cap " +
                               std::to_string(budget.max_nodes));
    };

    Subgroup trivial;
    trivial.mask = ElementSet(g.order());
    trivial.mask.set(0);
    trivial.order = 1;
    insert(trivial);

    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (auto idx : frontier) {
            for (std::uint64_t gen = 1; gen < g.order(); ++gen) {
                if (nodes[idx].mask.test(gen)) continue;
                ElementSet mask = detail::close_with(g, nodes[idx].mask, gen);
                if (lookup(mask)) continue;
                Subgroup sg;
                sg.order = mask.count();
                sg.mask = std::move(mask);
                sg.generators = nodes[idx].generators;
                sg.generators.push_back(gen);
                next.push_back(nodes.size());
                insert(std::move(sg));
            }
        }
        frontier = std::move(next);
    }

    return SubgroupLattice(ExplicitGroup(g), std::move(nodes));
}

namespace detail {

// Couniserial dimension of every node, literally by the definition:
// 0 for the trivial subgroup, 1 for uniform ones, otherwise one more than
// the largest dimension over nonzero subgroups of non-equal type.
inline std::vector<std::uint32_t> oracle_cudim_table(const SubgroupLattice& lat) {
    std::vector<std::uint32_t> dim(lat.size(), 0);
    for (std::size_t i = 0; i < lat.size(); ++i) {
        if (lat.node(i).order == 1) {
            dim[i] = 0;
        } else if (lat.is_uniform_node(i)) {
            dim[i] = 1;
        } else {
            std::uint32_t best = 0;
            for (std::size_t j = 0; j < i; ++j) {
                if (lat.node(j).order <= 1 || !lat.includes(i, j)) continue;
                if (lat.node_type(j) == lat.node_type(i)) continue;
                best = std::max(best, dim[j]);
            }
            dim[i] = best + 1;
        }
    }
    return dim;
}

// Uniserial dimension of G/K for every node K, by the dual definition on
// the quotient side; the correspondence theorem identifies submodules and
// quotients of G/K with the interval [K, G] in the lattice.
inline std::vector<std::uint32_t> oracle_usdim_table(const SubgroupLattice& lat) {
    const std::size_t n = lat.size();
    std::vector<std::uint32_t> dim(n, 0);
    std::vector<std::optional<AbelianType>> qtype(n);
    auto quotient_type_of = [&](std::size_t k) -> const AbelianType& {
        if (!qtype[k])
            qtype[k] = quotient_type(lat.group(), lat.node(lat.top()).mask, lat.node(k).mask);
        return *qtype[k];
    };

    // Descending order index: nodes are sorted ascending, so walk backward;
    // every L > K in the interval then has its value already.
    for (std::size_t ii = n; ii-- > 0;) {
        std::size_t k = ii;
        if (k == lat.top()) {
            dim[k] = 0;
            continue;
        }
        std::vector<std::size_t> interval; // nodes L with K <= L <= G, ascending
        for (std::size_t j = ii; j < n; ++j)
            if (lat.includes(j, k)) interval.push_back(j);

        bool chain = true;
        for (std::size_t a = 0; a + 1 < interval.size() && chain; ++a) {
            if (lat.node(interval[a]).order >= lat.node(interval[a + 1]).order ||
                !lat.includes(interval[a + 1], interval[a]))
                chain = false;
        }
        if (chain) {
            dim[k] = 1;
            continue;
        }
        std::uint32_t best = 0;
        for (auto l : interval) {
            if (l == lat.top()) continue; // G/L must be a proper quotient's source
            if (lat.node(l).order == lat.node(k).order &&
                quotient_type_of(l) == quotient_type_of(k))
                continue; // excluded: quotient isomorphic to G/K itself
            best = std::max(best, dim[l]);
        }
        dim[k] = best + 1;
    }
    return dim;
}

} // namespace detail

inline Ordinal oracle_cudim(const SubgroupLattice& lat) {
    return Ordinal(detail::oracle_cudim_table(lat)[lat.top()]);
}

inline Ordinal oracle_usdim(const SubgroupLattice& lat) {
    return Ordinal(detail::oracle_usdim_table(lat)[lat.bottom()]);
}

inline Ordinal oracle_cudim(const ExplicitGroup& g, const OracleBudget& budget = {}) {
    return oracle_cudim(enumerate_subgroups(g, budget));
}

inline Ordinal oracle_usdim(const ExplicitGroup& g, const OracleBudget& budget = {}) {
    return oracle_usdim(enumerate_subgroups(g, budget));
}

// Every subgroup isomorphism type realized in the lattice.
inline std::set<AbelianType> oracle_subgroup_types(const SubgroupLattice& lat) {
    std::set<AbelianType> out;
    for (std::size_t i = 0; i < lat.size(); ++i) out.insert(lat.node_type(i));
    return out;
}

// Every quotient isomorphism type G/K realized in the lattice.
inline std::set<AbelianType> oracle_quotient_types(const SubgroupLattice& lat) {
    std::set<AbelianType> out;
    for (std::size_t i = 0; i < lat.size(); ++i)
        out.insert(quotient_type(lat.group(), lat.node(lat.top()).mask, lat.node(i).mask));
    return out;
}

struct ChainVerdict {
    std::size_t witness_index = 0; // 1-based position in the chain
    enum class Reason { uniform, stabilized_isomorphic } reason = Reason::uniform;
};

// Least n whose tail satisfies the descending-chain dichotomy: M_n uniform,
// or M_n isomorphic to every later member of the given chain.
inline ChainVerdict chain_check(const ExplicitGroup& g, const std::vector<Subgroup>& chain,
                                const OracleBudget& budget = {}) {
    if (chain.empty()) throw domain_error("empty chain");
    SubgroupLattice lat = enumerate_subgroups(g, budget);

    std::vector<std::size_t> node_of;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        auto idx = lat.find(chain[i].mask);
        if (!idx)
            throw domain_error("chain member " + std::to_string(i + 1) +
                               " is not a subgroup of the given group");
        if (i > 0 && !chain[i].mask.subset_of(chain[i - 1].mask))
            throw domain_error("chain is not descending at step " + std::to_string(i + 1));
        node_of.push_back(*idx);
    }

    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (lat.is_uniform_node(node_of[i]))
            return {i + 1, ChainVerdict::Reason::uniform};
        bool stabilized = true;
        for (std::size_t k = i + 1; k < chain.size() && stabilized; ++k)
            if (!(lat.node_type(node_of[k]) == lat.node_type(node_of[i]))) stabilized = false;
        if (stabilized) return {i + 1, ChainVerdict::Reason::stabilized_isomorphic};
    }
    // Unreachable: the last member always stabilizes vacuously.
    throw domain_error("no witness found");
}

// Convenience: subgroup value for tests and the CLI, built from generator
// element indices.
inline Subgroup subgroup_generated_by(const ExplicitGroup& g,
                                      const std::vector<std::uint64_t>& generators) {
    Subgroup sg;
    sg.mask = ElementSet(g.order());
    sg.mask.set(0);
    for (auto gen : generators) sg.mask = detail::close_with(g, sg.mask, gen);
    sg.generators = generators;
    sg.order = sg.mask.count();
    return sg;
}

} // namespace cudim
