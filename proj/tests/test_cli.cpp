#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cudim/cli.hpp"

using namespace cudim;
using nlohmann::ordered_json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
    ordered_json json() const { return ordered_json::parse(out); }
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("cudim_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("dim on the worked example") {
    CliResult r = cli({"dim", "Z4+Z2", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    CHECK(j.at("command") == "dim");
    CHECK(j.at("type").at("spec") == "Z4+Z2");
    CHECK(j.at("report").at("cudim").at("str") == "3");
    CHECK(j.at("report").at("usdim").at("str") == "3");
    CHECK(j.at("report").at("cudim").at("cnf") == ordered_json::parse("[[0,3]]"));
    CHECK(j.at("report").at("u_dim") == 2);
    CHECK(j.at("report").at("length") == 3);
    CHECK(j.at("report").at("provenance") == "fast");
    CHECK(j.at("report").at("flags").at("fully_cohopfian") == true);
    CHECK(j.at("report").at("flags").at("uniform") == false);
}

TEST_CASE("dim on the zero module") {
    CliResult r = cli({"dim", "Z1", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    CHECK(j.at("type").at("spec") == "Z1");
    CHECK(j.at("report").at("cudim").at("str") == "0");
    CHECK(j.at("report").at("usdim").at("str") == "0");
    CHECK(j.at("report").at("u_dim") == 0);
    CHECK(j.at("report").at("length") == 0);
}

TEST_CASE("dim --oracle prints agreement") {
    CliResult r = cli({"dim", "Z9+Z3", "--oracle", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    CHECK(j.at("report").at("cudim").at("str") == "3");
    CHECK(j.at("oracle").at("agrees") == true);
    CHECK(j.at("oracle").at("cudim").at("str") == "3");

    CliResult text = cli({"dim", "Z9+Z3", "--oracle"});
    CHECK(text.code == exit_code::ok);
    CHECK(text.out.find("agrees") != std::string::npos);
}

TEST_CASE("dim input validation") {
    CHECK(cli({"dim", "Zx"}).code == exit_code::usage);
    CHECK(cli({"dim"}).code == exit_code::usage);
    CHECK(cli({"dim", "Z4", "--matrix", "whatever.json"}).code == exit_code::usage);
    CHECK(cli({"dim", "Z0"}).code == exit_code::usage);
    CliResult z0 = cli({"dim", "Z0"});
    CHECK(z0.err.find("catalog") != std::string::npos);
}

TEST_CASE("dim --matrix") {
    std::string path = write_temp("m1.json", "[[2,4],[6,8]]");
    CliResult r = cli({"dim", "--matrix", path, "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    CHECK(r.json().at("type").at("spec") == "Z4+Z2");
    std::remove(path.c_str());

    std::string free_path = write_temp("m2.json", "[[2,0],[0,0]]");
    CliResult fr = cli({"dim", "--matrix", free_path});
    CHECK(fr.code == exit_code::usage);
    CHECK(fr.err.find("catalog") != std::string::npos);
    std::remove(free_path.c_str());

    std::string bad_path = write_temp("m3.json", "[[2,");
    CHECK(cli({"dim", "--matrix", bad_path}).code == exit_code::usage);
    std::remove(bad_path.c_str());

    CHECK(cli({"dim", "--matrix", "no_such_file.json"}).code == exit_code::usage);
}

TEST_CASE("catalog command") {
    CliResult free3 = cli({"catalog", "Z^3", "--format", "json"});
    REQUIRE(free3.code == exit_code::ok);
    CHECK(free3.json().at("report").at("cudim").at("str") == "3");
    CHECK(free3.json().at("report").at("u_dim") == 3);
    CHECK(free3.json().at("report").at("provenance") == "catalog");

    CliResult pruefer = cli({"catalog", "Prufer(2)^2", "--format", "json"});
    REQUIRE(pruefer.code == exit_code::ok);
    ordered_json pj = pruefer.json();
    CHECK(pj.at("report").at("defined") == true);
    CHECK(pj.at("report").at("cudim").is_null());
    CHECK(pj.at("report").at("cudim_lower").at("str") == "w");
    CHECK(pj.at("report").at("u_dim") == 2);

    CliResult ss = cli({"catalog", "SS_inf(5)", "--format", "json"});
    REQUIRE(ss.code == exit_code::ok);
    CHECK(ss.json().at("report").at("cudim").at("str") == "w");
    CHECK(ss.json().at("report").at("u_dim_finite") == false);

    CliResult one = cli({"catalog", "Prufer(7)", "--format", "json"});
    CHECK(one.json().at("report").at("cudim").at("str") == "1");

    CliResult bad = cli({"catalog", "Q^2"});
    CHECK(bad.code == exit_code::usage);
    CHECK(bad.err.find("Z^n | Prufer(p)^m | SS_inf(p)") != std::string::npos);
    CHECK(cli({"catalog", "Prufer(6)"}).code == exit_code::usage);
    CHECK(cli({"catalog", "Z^0"}).code == exit_code::usage);
}

TEST_CASE("subtypes command") {
    CliResult r = cli({"subtypes", "Z4+Z2", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    REQUIRE(j.at("subtypes").size() == 5);
    // every listed spec reparses to the same type it names
    for (const auto& entry : j.at("subtypes")) {
        const std::string spec = entry.at("spec");
        CHECK(format_group_spec(parse_group_spec(spec)) == spec);
    }
    CHECK(j.at("subtypes").back().at("spec") == "Z4+Z2");
    CHECK(j.at("subtypes").back().at("cudim").at("str") == "3");
    CHECK(j.at("subtypes").front().at("spec") == "Z1");
}

TEST_CASE("table command matches the worked rows") {
    CliResult r = cli({"table", "--prime", "2", "--max-size", "3", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json rows = r.json().at("rows");
    REQUIRE(rows.size() == 6);
    auto row = [&](std::size_t i) {
        return std::make_pair(rows[i].at("partition").dump(),
                              rows[i].at("cudim").at("str").get<std::string>());
    };
    CHECK(row(0) == std::make_pair(std::string("[1]"), std::string("1")));
    CHECK(row(1) == std::make_pair(std::string("[2]"), std::string("1")));
    CHECK(row(2) == std::make_pair(std::string("[1,1]"), std::string("2")));
    CHECK(row(3) == std::make_pair(std::string("[3]"), std::string("1")));
    CHECK(row(4) == std::make_pair(std::string("[2,1]"), std::string("3")));
    CHECK(row(5) == std::make_pair(std::string("[1,1,1]"), std::string("3")));

    CliResult empty = cli({"table", "--max-size", "0", "--format", "json"});
    CHECK(empty.code == exit_code::ok);
    CHECK(empty.json().at("rows").empty());

    // prime independence shows up as identical dimension columns
    CliResult p3 = cli({"table", "--prime", "3", "--max-size", "3", "--format", "json"});
    ordered_json rows3 = p3.json().at("rows");
    REQUIRE(rows3.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rows[i].at("cudim") == rows3[i].at("cudim"));
        CHECK(rows[i].at("usdim") == rows3[i].at("usdim"));
    }

    CHECK(cli({"table", "--max-size", "31"}).code == exit_code::budget);
    CHECK(cli({"table", "--prime", "9", "--max-size", "2"}).code == exit_code::usage);
}

TEST_CASE("verify command") {
    CliResult r = cli({"verify", "--suite", "ordinal-laws", "--seed", "7", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    CHECK(j.at("command") == "verify");
    CHECK(j.at("report").at("passed") == true);
    CHECK(j.at("report").at("seed") == 7);

    // byte-identical reruns under a fixed seed
    CliResult again = cli({"verify", "--suite", "ordinal-laws", "--seed", "7", "--format",
                           "json"});
    CHECK(r.out == again.out);

    CHECK(cli({"verify", "--suite", "no-such"}).code == exit_code::usage);
}

TEST_CASE("oracle-check command") {
    CliResult r = cli({"oracle-check", "Z8+Z4", "--format", "json"});
    REQUIRE(r.code == exit_code::ok);
    ordered_json j = r.json();
    CHECK(j.at("agrees") == true);
    CHECK(j.at("fast").at("cudim") == j.at("oracle").at("cudim"));
    CHECK(j.at("fast").at("usdim") == j.at("oracle").at("usdim"));
    CHECK(j.at("order") == 32);

    CliResult budget = cli({"oracle-check", "Z1024"});
    CHECK(budget.code == exit_code::budget);
    CHECK(budget.err.find("budget") != std::string::npos);

    // a raised budget admits the same group
    CliResult wide = cli({"oracle-check", "Z1024", "--oracle-budget", "2048"});
    CHECK(wide.code == exit_code::ok);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == exit_code::usage);
    CHECK(cli({"frobnicate"}).code == exit_code::usage);
    CHECK(cli({"dim", "Z4", "--format", "yaml"}).code == exit_code::usage);
    CliResult help = cli({"--help"});
    CHECK(help.code == exit_code::ok);
    CHECK(help.out.find("dim") != std::string::npos);
}

TEST_CASE("text output is human-oriented but complete") {
    CliResult r = cli({"dim", "Z4+Z2"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("c.u.dim: 3") != std::string::npos);
    CHECK(r.out.find("u.s.dim: 3") != std::string::npos);
    CHECK(r.out.find("u.dim: 2") != std::string::npos);
    CHECK(r.out.find("length: 3") != std::string::npos);

    CliResult cat = cli({"catalog", "Prufer(2)^2"});
    CHECK(cat.out.find(">= w") != std::string::npos);
}
