#include <doctest.h>

#include <random>
#include <set>

#include "cudim/ordinal.hpp"
#include "testutil.hpp"

using cudim::Natural;
using cudim::Ordinal;
using cudim::ord_add;
using cudim::ord_cmp;
using cudim::ord_format;
using cudim::ord_parse;
using cudim::ord_sup;

namespace {

Ordinal rand_small_ordinal(std::mt19937_64& rng) {
    std::vector<Ordinal::Term> terms;
    for (std::uint64_t e = 4; e-- > 0;)
        if (rng() % 2) terms.push_back({Natural(e), Natural(1 + rng() % 4)});
    return Ordinal::from_terms(std::move(terms));
}

} // namespace

TEST_CASE("addition base cases") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        Ordinal a = rand_small_ordinal(rng);
        CHECK(ord_add(a, Ordinal::zero()) == a);
        CHECK(ord_add(Ordinal::zero(), a) == a);
    }
    CHECK(ord_add(Ordinal(1), Ordinal::omega()) == Ordinal::omega());
    CHECK(ord_add(Ordinal(3), Ordinal(4)) == Ordinal(7));
}

TEST_CASE("addition matches the inductive-definition evaluator") {
    // Frozen value derived from the inductive clauses: (w+2) + w*2 = w*3.
    Ordinal lhs = ord_parse("w+2");
    Ordinal rhs = ord_parse("w*2");
    Ordinal by_induction = testutil::add_by_induction(lhs, rhs);
    CHECK(by_induction == ord_parse("w*3"));
    CHECK(ord_add(lhs, rhs) == by_induction);

    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        Ordinal a = rand_small_ordinal(rng);
        Ordinal b = rand_small_ordinal(rng);
        CHECK(ord_add(a, b) == testutil::add_by_induction(a, b));
    }
}

TEST_CASE("comparison") {
    for (std::uint64_t n : {0ull, 1ull, 5ull, 1000ull})
        CHECK(ord_cmp(Ordinal(n), Ordinal::omega()) == std::strong_ordering::less);
    CHECK(ord_cmp(ord_parse("w*2"), ord_parse("w+5")) == std::strong_ordering::greater);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        Ordinal a = rand_small_ordinal(rng);
        Ordinal b = rand_small_ordinal(rng);
        CHECK(ord_cmp(a, a) == std::strong_ordering::equal);
        CHECK(ord_cmp(a, b) == testutil::cmp_by_base_eval(a, b));
    }
}

TEST_CASE("supremum of finite sets is the maximum") {
    CHECK(ord_sup({Ordinal(3), Ordinal::omega(), ord_parse("w+1")}) == ord_parse("w+1"));
    CHECK(ord_sup({Ordinal::zero()}) == Ordinal::zero());
    CHECK(ord_sup({ord_parse("w*2"), ord_parse("w+9"), Ordinal(17)}) == ord_parse("w*2"));
    std::vector<Ordinal> empty;
    CHECK_THROWS_AS(ord_sup(empty), cudim::domain_error);
}

TEST_CASE("non-commutativity witness") {
    CHECK(ord_add(Ordinal(1), Ordinal::omega()) == Ordinal::omega());
    CHECK(ord_add(Ordinal::omega(), Ordinal(1)) == ord_parse("w+1"));
    CHECK(ord_add(Ordinal(1), Ordinal::omega()) != ord_add(Ordinal::omega(), Ordinal(1)));
}

TEST_CASE("ordering laws on random triples") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        Ordinal a = rand_small_ordinal(rng);
        Ordinal b = rand_small_ordinal(rng);
        Ordinal c = rand_small_ordinal(rng);
        CHECK(ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c)));
        if (a < b) {
            CHECK(ord_add(c, a) < ord_add(c, b));
            CHECK(ord_add(a, c) <= ord_add(b, c));
        }
        CHECK(ord_add(a, b).invariants_hold());
    }
}

TEST_CASE("formatting") {
    CHECK(ord_format(ord_parse("w*2+3")) == "w*2+3");
    CHECK(ord_format(Ordinal::zero()) == "0");
    CHECK(ord_format(Ordinal(5)) == "5");
    CHECK(ord_format(Ordinal::omega()) == "w");
    CHECK(ord_format(Ordinal::from_terms({{Natural(2), Natural(1)},
                                          {Natural(1), Natural(1)},
                                          {Natural(0), Natural(1)}})) == "w^2+w+1");
}

TEST_CASE("parsing") {
    Ordinal o = ord_parse("w^2+w*4+1");
    REQUIRE(o.terms().size() == 3);
    CHECK(o.terms()[0].exponent == Natural(2));
    CHECK(o.terms()[0].coefficient == Natural(1));
    CHECK(o.terms()[1].exponent == Natural(1));
    CHECK(o.terms()[1].coefficient == Natural(4));
    CHECK(o.terms()[2].exponent == Natural(0));
    CHECK(o.terms()[2].coefficient == Natural(1));
    CHECK(ord_parse("0") == Ordinal::zero());
    CHECK(ord_parse("w") == Ordinal::omega());
    CHECK(ord_parse("w^3*2") == Ordinal::omega_power(Natural(3), Natural(2)));
}

TEST_CASE("parse errors carry positions") {
    auto expect_error_at = [](const char* input, std::size_t pos) {
        try {
            ord_parse(input);
            FAIL_CHECK("no error for ", input);
        } catch (const cudim::parse_error& e) {
            CHECK(e.position() == pos);
        }
    };
    expect_error_at("", 0);
    expect_error_at("x", 0);
    expect_error_at("w+", 2);
    expect_error_at("1+w", 2);     // exponents must strictly decrease
    expect_error_at("w+w", 2);     // repeated exponent
    expect_error_at("3+3", 2);
    expect_error_at("w*0", 0);     // zero coefficient
    expect_error_at("w^", 2);
    expect_error_at("w 1", 1);
}

TEST_CASE("format/parse round trip") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Ordinal a = rand_small_ordinal(rng);
        CHECK(ord_parse(ord_format(a)) == a);
    }
    // arbitrary-precision coefficients survive the trip
    Ordinal big = ord_parse("w^2*340282366920938463463374607431768211457+9");
    CHECK(ord_parse(ord_format(big)) == big);
}

TEST_CASE("canonical-form validation") {
    CHECK_THROWS_AS(Ordinal::from_terms({{Natural(1), Natural(0)}}), cudim::domain_error);
    CHECK_THROWS_AS(Ordinal::from_terms({{Natural(1), Natural(1)}, {Natural(1), Natural(1)}}),
                    cudim::domain_error);
    CHECK_THROWS_AS(Ordinal::from_terms({{Natural(0), Natural(1)}, {Natural(1), Natural(1)}}),
                    cudim::domain_error);
    CHECK(Ordinal::from_terms({{Natural(1), Natural(1)}, {Natural(0), Natural(1)}})
              .invariants_hold());
}

TEST_CASE("finite value accessor") {
    CHECK(Ordinal(42).finite_value() == 42);
    CHECK(Ordinal::zero().finite_value() == 0);
    CHECK(Ordinal(7).is_finite());
    CHECK(!Ordinal::omega().is_finite());
    CHECK_THROWS_AS(Ordinal::omega().finite_value(), cudim::domain_error);
}
