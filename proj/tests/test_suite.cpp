#include <doctest.h>

#include "cudim/suite.hpp"

using namespace cudim;

namespace {

SuiteConfig small_config(std::uint64_t seed = 0) {
    SuiteConfig cfg;
    cfg.rng_seed = seed;
    cfg.max_ptype_size = 5;
    cfg.multi_prime_max_length = 4;
    cfg.pair_weight_max = 5;
    cfg.realization_weight_max = 5;
    cfg.oracle_equiv_max_order = 16;
    cfg.ordinal_law_cases = 300;
    cfg.chain_cases = 60;
    return cfg;
}

// ord_add with the absorption comparison inverted: keeps too few terms.
Ordinal broken_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Natural& lead = b.terms().front().exponent;
    std::vector<Ordinal::Term> out;
    for (const auto& t : a.terms())
        if (t.exponent > lead + Natural(1)) out.push_back(t); // drops the equal-exponent merge
    out.insert(out.end(), b.terms().begin(), b.terms().end());
    return Ordinal::from_terms(std::move(out));
}

} // namespace

TEST_CASE("all suites pass on a reduced configuration") {
    SuiteReport report = run_suite(small_config(7));
    CHECK(report.properties.size() == 9);
    for (const auto& p : report.properties) {
        INFO(p.name);
        CHECK(p.passed());
        CHECK(p.cases_run > 0);
        CHECK(!p.deadline_exceeded);
    }
    CHECK(report.passed());
}

TEST_CASE("suite selection and determinism") {
    SuiteConfig cfg = small_config(42);
    cfg.suites = {"ordinal-laws"};
    SuiteReport first = run_suite(cfg);
    SuiteReport second = run_suite(cfg);
    REQUIRE(first.properties.size() == 1);
    CHECK(first.properties[0].name == "ordinal-laws");
    CHECK(first.properties[0].cases_run == second.properties[0].cases_run);
    CHECK(first.to_json(false) == second.to_json(false));
    CHECK(first.to_json(false).dump() == second.to_json(false).dump());
}

TEST_CASE("unknown suite names are rejected with the valid list") {
    SuiteConfig cfg = small_config();
    cfg.suites = {"no-such-suite"};
    CHECK_THROWS_WITH_AS(run_suite(cfg), doctest::Contains("ordinal-laws"), domain_error);
}

TEST_CASE("a broken ordinal addition is caught with a minimal counterexample") {
    SuiteConfig cfg = small_config(42);
    PropertyResult result = run_ordinal_laws(cfg, broken_add);
    CHECK(result.failure_count > 0);
    REQUIRE(!result.failures.empty());
    const CaseFailure& failure = result.failures.front();

    // replaying the counterexample reproduces the failure on the broken
    // implementation and passes on the real one
    CHECK(!replay_case("ordinal-laws", failure.replay, broken_add));
    CHECK(replay_case("ordinal-laws", failure.replay));

    // shrinking made it small
    Ordinal a = ord_parse(failure.replay.at("a").get<std::string>());
    Ordinal b = ord_parse(failure.replay.at("b").get<std::string>());
    Ordinal c = ord_parse(failure.replay.at("c").get<std::string>());
    CHECK(a.terms().size() + b.terms().size() + c.terms().size() <= 3);
}

TEST_CASE("replay accepts every suite's case encoding") {
    CHECK(replay_case("duality", json{{"type", "Z4+Z2"}}));
    CHECK(replay_case("bounds", json{{"type", "Z8+Z2"}}));
    CHECK(replay_case("monotonicity", json{{"type", "Z9+Z3"}}));
    CHECK(replay_case("superadditivity", json{{"s", "Z2"}, {"t", "Z4"}}));
    CHECK(replay_case("realization", json{{"type", "Z4+Z2"}, {"beta", 2}}));
    CHECK(replay_case("prime-independence",
                      json{{"partition", {2, 1}}, {"primes", {2, 3, 5}}}));
    CHECK(replay_case("oracle-equivalence", json{{"moduli", {4, 2}}}));
    CHECK_THROWS_AS(replay_case("nonsense", json{}), domain_error);
}

TEST_CASE("suite report JSON carries the schema") {
    SuiteConfig cfg = small_config(3);
    cfg.suites = {"bounds", "duality"};
    SuiteReport report = run_suite(cfg);
    json j = report.to_json(false);
    CHECK(j.at("seed") == 3);
    CHECK(j.at("passed") == true);
    REQUIRE(j.at("properties").size() == 2);
    CHECK(j.at("properties")[0].at("name") == "bounds");
    CHECK(j.at("properties")[1].at("name") == "duality");
    CHECK(j.at("properties")[1].at("status") == "derived-regularity");
    for (const auto& p : j.at("properties")) {
        CHECK(p.contains("statement"));
        CHECK(p.contains("cases_run"));
        CHECK(p.contains("failures"));
        CHECK(!p.contains("elapsed_ms")); // timings off by default
    }
    json with_timings = report.to_json(true);
    CHECK(with_timings.at("properties")[0].contains("elapsed_ms"));
}
