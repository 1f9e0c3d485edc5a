#include <doctest.h>

#include "cudim/dimension.hpp"
#include "cudim/oracle.hpp"

using namespace cudim;

namespace {

ElementSet set_of(const ExplicitGroup& g, std::initializer_list<std::uint64_t> elements) {
    ElementSet s(g.order());
    for (auto e : elements) s.set(e);
    return s;
}

AbelianType pt(std::uint64_t p, std::vector<std::uint32_t> parts) {
    return AbelianType::p_type(p, Partition(std::move(parts)));
}

} // namespace

TEST_CASE("element arithmetic in the mixed-radix encoding") {
    ExplicitGroup g({4, 2});
    CHECK(g.order() == 8);
    CHECK(g.encode({2, 1}) == 5);
    CHECK(g.decode(5) == std::vector<std::uint64_t>{2, 1});
    CHECK(g.add(g.encode({3, 1}), g.encode({1, 1})) == g.encode({0, 0}));
    CHECK(g.scalar_mul(3, g.encode({1, 1})) == g.encode({3, 1}));
    CHECK(g.scalar_mul(2, g.encode({1, 1})) == g.encode({2, 0}));
    // order-1 moduli vanish, order-0 rejected
    CHECK(ExplicitGroup({1, 5, 1}).order() == 5);
    CHECK_THROWS_AS(ExplicitGroup({0}), domain_error);
}

TEST_CASE("subgroup counts") {
    // Z4 x Z2: trivial, three of order 2, two cyclic and one Klein of
    // order 4, and the whole group = 8.
    CHECK(enumerate_subgroups(ExplicitGroup({4, 2})).size() == 8);
    for (std::uint64_t p : {2, 3, 5})
        CHECK(enumerate_subgroups(ExplicitGroup({p, p})).size() == p + 3);
    CHECK(enumerate_subgroups(ExplicitGroup({5})).size() == 2);
    CHECK(enumerate_subgroups(ExplicitGroup({})).size() == 1);
}

TEST_CASE("every node satisfies Lagrange and appears once") {
    SubgroupLattice lat = enumerate_subgroups(ExplicitGroup({12}));
    CHECK(lat.size() == 6); // divisors of 12
    CHECK(lat.node(lat.bottom()).order == 1);
    CHECK(lat.node(lat.top()).order == 12);
    for (std::size_t i = 0; i < lat.size(); ++i) {
        CHECK(12 % lat.node(i).order == 0);
        CHECK(lat.includes(lat.top(), i));
        CHECK(lat.includes(i, lat.bottom()));
        for (std::size_t j = i + 1; j < lat.size(); ++j)
            CHECK(!(lat.node(i).mask == lat.node(j).mask));
    }
}

TEST_CASE("subgroup_type from element-order statistics") {
    ExplicitGroup g({4, 2});
    // Klein subgroup {(0,0), (2,0), (0,1), (2,1)}
    CHECK(subgroup_type(g, set_of(g, {0, 4, 1, 5})) == pt(2, {1, 1}));
    // cyclic of order 4 generated by (1,1)
    CHECK(subgroup_type(g, subgroup_generated_by(g, {g.encode({1, 1})}).mask) == pt(2, {2}));
    // trivial subgroup
    CHECK(subgroup_type(g, set_of(g, {0})) == AbelianType::zero());
    // whole group
    CHECK(subgroup_type(g, subgroup_generated_by(g, {g.encode({1, 0}), g.encode({0, 1})}).mask) ==
          pt(2, {2, 1}));
    // order statistics on a non-subgroup are rejected
    CHECK_THROWS_AS(subgroup_type(g, set_of(g, {0, 2})), domain_error);
}

TEST_CASE("quotient types via coset order statistics") {
    ExplicitGroup g({4, 2});
    SubgroupLattice lat = enumerate_subgroups(g);
    ElementSet whole = lat.node(lat.top()).mask;
    CHECK(quotient_type(g, whole, set_of(g, {0, 1})) == pt(2, {2}));    // mod <(0,1)> = Z4
    CHECK(quotient_type(g, whole, set_of(g, {0, 4})) == pt(2, {1, 1})); // mod <(2,0)> = Klein
    CHECK(quotient_type(g, whole, whole) == AbelianType::zero());
    CHECK(oracle_quotient_types(lat) == quotient_types(pt(2, {2, 1})));
    CHECK(oracle_subgroup_types(lat) == subtypes(pt(2, {2, 1})));
}

TEST_CASE("oracle couniserial dimension") {
    CHECK(oracle_cudim(ExplicitGroup({4, 2})) == Ordinal(3));
    for (std::uint64_t p : {2, 3, 5})
        CHECK(oracle_cudim(ExplicitGroup({p, p})) == Ordinal(2));
    CHECK(oracle_cudim(ExplicitGroup({8})) == Ordinal(1));
    CHECK(oracle_cudim(ExplicitGroup({})) == Ordinal::zero());
}

TEST_CASE("oracle uniserial dimension") {
    CHECK(oracle_usdim(ExplicitGroup({4, 2})) == Ordinal(3));
    for (std::uint64_t p : {2, 3, 5})
        CHECK(oracle_usdim(ExplicitGroup({p, p})) == Ordinal(2));
    CHECK(oracle_usdim(ExplicitGroup({8})) == Ordinal(1));
    CHECK(oracle_usdim(ExplicitGroup({})) == Ordinal::zero());
}

TEST_CASE("dimension is isomorphism-invariant across moduli orderings") {
    CHECK(oracle_cudim(ExplicitGroup({2, 4})) == oracle_cudim(ExplicitGroup({4, 2})));
    CHECK(oracle_usdim(ExplicitGroup({2, 4})) == oracle_usdim(ExplicitGroup({4, 2})));
    CHECK(oracle_cudim(ExplicitGroup({6, 2})) == oracle_cudim(ExplicitGroup({2, 6})));
    CHECK(oracle_cudim(ExplicitGroup({12})) == oracle_cudim(ExplicitGroup({4, 3})));
}

TEST_CASE("literal uniformity agrees with the structural flag") {
    for (auto moduli : {std::vector<std::uint64_t>{4, 2}, {9}, {2, 2}, {6}, {8, 4}}) {
        SubgroupLattice lat = enumerate_subgroups(ExplicitGroup(moduli));
        for (std::size_t i = 0; i < lat.size(); ++i)
            CHECK(lat.is_uniform_node(i) == invariants(lat.node_type(i)).is_uniform);
    }
}

TEST_CASE("chain_check finds the least witness") {
    ExplicitGroup g({4, 2});
    Subgroup whole = subgroup_generated_by(g, {g.encode({1, 0}), g.encode({0, 1})});
    Subgroup klein = subgroup_generated_by(g, {g.encode({2, 0}), g.encode({0, 1})});
    Subgroup order2 = subgroup_generated_by(g, {g.encode({2, 0})});

    SUBCASE("descends to a uniform member") {
        ChainVerdict v = chain_check(g, {whole, klein, order2});
        CHECK(v.witness_index == 3);
        CHECK(v.reason == ChainVerdict::Reason::uniform);
    }
    SUBCASE("constant chain stabilizes immediately") {
        ChainVerdict v = chain_check(g, {whole, whole, whole});
        CHECK(v.witness_index == 1);
        CHECK(v.reason == ChainVerdict::Reason::stabilized_isomorphic);
    }
    SUBCASE("uniform head wins over stabilization") {
        ChainVerdict v = chain_check(g, {order2, order2});
        CHECK(v.witness_index == 1);
        CHECK(v.reason == ChainVerdict::Reason::uniform);
    }
    SUBCASE("maximal chains in Z_p x Z_p witness at the order-p step") {
        for (std::uint64_t p : {2, 3, 5}) {
            ExplicitGroup h({p, p});
            SubgroupLattice lat = enumerate_subgroups(h);
            for (std::size_t i = 0; i < lat.size(); ++i) {
                if (lat.node(i).order != p) continue;
                ChainVerdict v =
                    chain_check(h, {lat.node(lat.top()), lat.node(i), lat.node(lat.bottom())});
                CHECK(v.witness_index == 2);
                CHECK(v.reason == ChainVerdict::Reason::uniform);
            }
        }
    }
    SUBCASE("non-descending chains are rejected") {
        CHECK_THROWS_WITH_AS(chain_check(g, {order2, klein}), doctest::Contains("descending"),
                             domain_error);
    }
    SUBCASE("non-subgroups are rejected") {
        Subgroup bogus;
        bogus.mask = set_of(g, {0, 2});
        bogus.order = 2;
        CHECK_THROWS_WITH_AS(chain_check(g, {whole, bogus}),
                             doctest::Contains("not a subgroup"), domain_error);
    }
    SUBCASE("empty chain is rejected") {
        CHECK_THROWS_AS(chain_check(g, {}), domain_error);
    }
}

TEST_CASE("budgets fail loudly") {
    CHECK_THROWS_WITH_AS(enumerate_subgroups(ExplicitGroup({1024})),
                         doctest::Contains("exceeds oracle budget"), budget_error);
    OracleBudget tight;
    tight.max_nodes = 5;
    CHECK_THROWS_WITH_AS(enumerate_subgroups(ExplicitGroup({4, 2}), tight),
                         doctest::Contains("node cap"), budget_error);
    OracleBudget wide;
    wide.max_order = 2048;
    CHECK(enumerate_subgroups(ExplicitGroup({1024}), wide).size() == 11);
}

TEST_CASE("generators recorded by enumeration generate their subgroup") {
    ExplicitGroup g({8, 4});
    SubgroupLattice lat = enumerate_subgroups(g);
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const Subgroup& node = lat.node(i);
        CHECK(subgroup_generated_by(g, node.generators).mask == node.mask);
        CHECK(node.mask.count() == node.order);
        CHECK(node.elements().size() == node.order);
    }
}
