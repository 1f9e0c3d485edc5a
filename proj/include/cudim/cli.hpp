#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cudim/abelian_type.hpp"
#include "cudim/dimension.hpp"
#include "cudim/errors.hpp"
#include "cudim/oracle.hpp"
#include "cudim/report_json.hpp"
#include "cudim/smith.hpp"
#include "cudim/suite.hpp"

namespace cudim {

// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 budget exceeded.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failure = 1;
inline constexpr int usage = 2;
inline constexpr int budget = 3;
} // namespace exit_code

namespace cli_detail {

struct GlobalOptions {
    std::string format = "text";
    std::uint64_t seed = 0;
    std::uint64_t oracle_budget = 512;

    bool json() const { return format == "json"; }
    OracleBudget budget() const { return OracleBudget{oracle_budget, 1'000'000}; }
};

inline void emit(std::ostream& out, const nlohmann::ordered_json& payload) {
    out << payload.dump(2) << "\n";
}

// catalog descriptor grammar: "Z^n" | "Prufer(p)" ("^" m)? | "SS_inf(p)"
inline InfiniteDescriptor parse_descriptor(const std::string& input) {
    std::string s;
    for (char c : input)
        if (c != ' ' && c != '\t') s += c;

    std::size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c)
            throw parse_error(std::string("expected '") + c +
                                  "'; grammar: Z^n | Prufer(p)^m | SS_inf(p)",
                              pos);
        ++pos;
    };
    auto number = [&]() {
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            std::uint64_t d = static_cast<std::uint64_t>(s[pos] - '0');
            if (v > (UINT64_MAX - d) / 10) throw budget_error("descriptor number exceeds 2^64");
            v = v * 10 + d;
            ++pos;
        }
        if (pos == start) throw parse_error("expected number", start);
        return v;
    };
    auto done = [&]() {
        if (pos != s.size()) throw parse_error("trailing input after descriptor", pos);
    };

    if (s.rfind("Z^", 0) == 0) {
        pos = 2;
        std::uint64_t n = number();
        done();
        if (n < 1) throw domain_error("free rank must be >= 1");
        return FreeAbelian{n};
    }
    if (s.rfind("Prufer(", 0) == 0) {
        pos = 7;
        std::uint64_t p = number();
        expect(')');
        std::uint64_t m = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            m = number();
        }
        done();
        return Pruefer{p, m};
    }
    if (s.rfind("SS_inf(", 0) == 0) {
        pos = 7;
        std::uint64_t p = number();
        expect(')');
        done();
        return InfHomogeneousSemisimple{p};
    }
    throw parse_error("unknown catalog descriptor; grammar: Z^n | Prufer(p)^m | SS_inf(p)", 0);
}

inline std::string descriptor_canonical(const InfiniteDescriptor& d) {
    if (const auto* f = std::get_if<FreeAbelian>(&d)) return "Z^" + std::to_string(f->rank);
    if (const auto* p = std::get_if<Pruefer>(&d)) {
        std::string s = "Prufer(" + std::to_string(p->prime) + ")";
        if (p->multiplicity != 1) s += "^" + std::to_string(p->multiplicity);
        return s;
    }
    return "SS_inf(" + std::to_string(std::get<InfHomogeneousSemisimple>(d).prime) + ")";
}

inline MatrixPresentation read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open matrix file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("matrix file is not valid JSON: ") + e.what(), 0);
    }
    if (!doc.is_array()) throw parse_error("matrix JSON must be an array of arrays", 0);
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& row : doc) {
        if (!row.is_array()) throw parse_error("matrix JSON must be an array of arrays", 0);
        std::vector<std::int64_t> r;
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw parse_error("matrix entries must be integers", 0);
            r.push_back(v.get<std::int64_t>());
        }
        rows.push_back(std::move(r));
    }
    return MatrixPresentation(rows);
}

inline std::string flag_summary(const StructureInfo& s) {
    std::string out;
    auto add = [&](bool set, const char* name) {
        if (!set) return;
        if (!out.empty()) out += ", ";
        out += name;
    };
    add(s.is_uniform, "uniform");
    add(s.is_semisimple, "semisimple");
    add(s.is_homogeneous, "homogeneous");
    add(s.is_anti_cohopfian, "anti_cohopfian");
    add(s.is_fully_cohopfian, "fully_cohopfian");
    return out.empty() ? "(none)" : out;
}

inline void print_report_text(std::ostream& out, const DimensionReport& r) {
    out << "defined: " << (r.defined ? "yes" : "no") << "\n";
    if (r.cudim)
        out << "c.u.dim: " << ord_format(*r.cudim) << "\n";
    else if (r.cudim_lower)
        out << "c.u.dim: >= " << ord_format(*r.cudim_lower) << " (no exact value emitted)\n";
    if (r.usdim) out << "u.s.dim: " << ord_format(*r.usdim) << "\n";
    if (r.u_dim)
        out << "u.dim: " << *r.u_dim << "\n";
    else
        out << "u.dim: infinite\n";
    if (r.length) out << "length: " << *r.length << "\n";
    if (r.structure) {
        out << "flags: " << flag_summary(*r.structure) << "\n";
        out << "socle: " << format_group_spec(r.structure->socle) << "\n";
        out << "radical: " << format_group_spec(r.structure->radical) << "\n";
    }
    out << "provenance: " << to_string(r.provenance) << "\n";
    for (const auto& note : r.notes) out << "note: " << note << "\n";
}

inline std::string partition_text(const Partition& lambda) {
    std::string out = "(";
    for (std::size_t i = 0; i < lambda.parts().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(lambda.parts()[i]);
    }
    return out + ")";
}

// ------------- commands -------------

struct DimArgs {
    std::string spec;
    std::string matrix_file;
    bool with_oracle = false;
};

inline int cmd_dim(const GlobalOptions& g, const DimArgs& a, std::ostream& out) {
    if (a.spec.empty() == a.matrix_file.empty())
        throw domain_error("provide exactly one of a group spec or --matrix FILE");

    AbelianType t;
    std::vector<std::uint64_t> oracle_moduli;
    nlohmann::ordered_json input;
    if (!a.spec.empty()) {
        oracle_moduli = parse_group_spec_orders(a.spec);
        t = type_from_orders(oracle_moduli);
        input = {{"spec", a.spec}};
    } else {
        MatrixPresentation m = read_matrix_file(a.matrix_file);
        t = type_from_matrix(m);
        for (const auto& d : smith_normal_form(m).diagonal) oracle_moduli.push_back(d.to_u64());
        input = {{"matrix", a.matrix_file}};
    }

    DimensionEngine engine;
    DimensionReport report = engine.report(t);

    bool agrees = true;
    std::optional<Ordinal> ocu, ous;
    if (a.with_oracle) {
        SubgroupLattice lat = enumerate_subgroups(ExplicitGroup(oracle_moduli), g.budget());
        ocu = oracle_cudim(lat);
        ous = oracle_usdim(lat);
        agrees = *ocu == *report.cudim && *ous == *report.usdim;
    }

    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "dim";
        payload["input"] = input;
        payload["type"] = type_to_json(t);
        payload["report"] = report_to_json(report);
        if (a.with_oracle)
            payload["oracle"] = {{"cudim", ordinal_to_json(*ocu)},
                                 {"usdim", ordinal_to_json(*ous)},
                                 {"agrees", agrees}};
        else
            payload["oracle"] = nullptr;
        emit(out, payload);
    } else {
        out << "type: " << format_group_spec(t) << "\n";
        print_report_text(out, report);
        if (a.with_oracle)
            out << "oracle: c.u.dim " << ord_format(*ocu) << ", u.s.dim " << ord_format(*ous)
                << (agrees ? " -- agrees" : " -- DISAGREES") << "\n";
    }
    return agrees ? exit_code::ok : exit_code::verification_failure;
}

inline int cmd_catalog(const GlobalOptions& g, const std::string& descriptor,
                       std::ostream& out) {
    InfiniteDescriptor d = parse_descriptor(descriptor);
    DimensionReport report = catalog(d);
    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "catalog";
        payload["descriptor"] = descriptor_canonical(d);
        payload["report"] = report_to_json(report);
        emit(out, payload);
    } else {
        out << "descriptor: " << descriptor_canonical(d) << "\n";
        print_report_text(out, report);
    }
    return exit_code::ok;
}

inline int cmd_subtypes(const GlobalOptions& g, const std::string& spec, std::ostream& out) {
    AbelianType t = parse_group_spec(spec);
    if (t.length() > 32)
        throw budget_error("subtype enumeration limited to types of length <= 32");
    DimensionEngine engine;
    auto subs = subtypes(t);
    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "subtypes";
        payload["type"] = type_to_json(t);
        payload["subtypes"] = nlohmann::ordered_json::array();
        for (const auto& mu : subs)
            payload["subtypes"].push_back({{"spec", format_group_spec(mu)},
                                           {"cudim", ordinal_to_json(engine.cudim(mu))},
                                           {"usdim", ordinal_to_json(engine.usdim(mu))}});
        emit(out, payload);
    } else {
        out << "type: " << format_group_spec(t) << "\n";
        out << "subtypes (" << subs.size() << "):\n";
        for (const auto& mu : subs)
            out << "  " << format_group_spec(mu) << "  c.u.dim "
                << ord_format(engine.cudim(mu)) << "\n";
    }
    return exit_code::ok;
}

struct TableArgs {
    std::uint64_t prime = 2;
    std::uint32_t max_size = 0;
};

inline int cmd_table(const GlobalOptions& g, const TableArgs& a, std::ostream& out) {
    if (a.max_size > 30) throw budget_error("table limited to partition weight <= 30");
    if (!is_prime(a.prime)) throw domain_error(std::to_string(a.prime) + " is not prime");
    DimensionEngine engine;

    struct Row {
        Partition lambda;
        AbelianType type;
        Ordinal cu, us;
    };
    std::vector<Row> rows;
    for (std::uint32_t w = 1; w <= a.max_size; ++w)
        for (const auto& lambda : partitions_of(w)) {
            AbelianType t = AbelianType::p_type(a.prime, lambda);
            rows.push_back({lambda, t, engine.cudim(t), engine.usdim(t)});
        }

    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "table";
        payload["prime"] = a.prime;
        payload["max_size"] = a.max_size;
        payload["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json parts = nlohmann::ordered_json::array();
            for (auto p : r.lambda.parts()) parts.push_back(p);
            payload["rows"].push_back({{"partition", parts},
                                       {"spec", format_group_spec(r.type)},
                                       {"cudim", ordinal_to_json(r.cu)},
                                       {"usdim", ordinal_to_json(r.us)},
                                       {"u_dim", r.type.uniform_dim()},
                                       {"length", r.type.length()}});
        }
        emit(out, payload);
    } else {
        out << "prime " << a.prime << ", partitions of weight <= " << a.max_size << "\n";
        out << "partition\tspec\tc.u.dim\tu.s.dim\tu.dim\tlength\n";
        for (const auto& r : rows)
            out << partition_text(r.lambda) << "\t" << format_group_spec(r.type) << "\t"
                << ord_format(r.cu) << "\t" << ord_format(r.us) << "\t"
                << r.type.uniform_dim() << "\t" << r.type.length() << "\n";
    }
    return exit_code::ok;
}

struct VerifyArgs {
    std::vector<std::string> suites;
    bool all = false;
    std::uint32_t max_ptype_size = 10;
    std::uint64_t oracle_equiv_max_order = 64;
    bool timings = false;
};

inline int cmd_verify(const GlobalOptions& g, const VerifyArgs& a, std::ostream& out) {
    SuiteConfig cfg;
    cfg.rng_seed = g.seed;
    cfg.oracle_budget = g.budget();
    cfg.max_ptype_size = a.max_ptype_size;
    cfg.oracle_equiv_max_order = a.oracle_equiv_max_order;
    if (!a.all) cfg.suites = a.suites;

    SuiteReport report = run_suite(cfg);
    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "verify";
        payload["report"] = report.to_json(a.timings);
        emit(out, payload);
    } else {
        out << "seed " << report.seed << "\n";
        for (const auto& p : report.properties) {
            out << (p.passed() ? "PASS" : "FAIL") << "  " << p.name << "  cases="
                << p.cases_run;
            if (a.timings) out << "  elapsed_ms=" << static_cast<std::uint64_t>(p.elapsed_ms);
            if (p.deadline_exceeded) out << "  DEADLINE EXCEEDED";
            out << "\n";
            for (const auto& f : p.failures)
                out << "      " << f.description << "  replay=" << f.replay.dump() << "\n";
        }
        out << "verdict: " << (report.passed() ? "PASS" : "FAIL") << " ("
            << report.properties.size() << " properties)\n";
    }
    return report.passed() ? exit_code::ok : exit_code::verification_failure;
}

inline int cmd_oracle_check(const GlobalOptions& g, const std::string& spec, std::ostream& out) {
    std::vector<std::uint64_t> orders = parse_group_spec_orders(spec);
    ExplicitGroup group(orders);
    SubgroupLattice lat = enumerate_subgroups(group, g.budget());
    AbelianType t = group.type();

    DimensionEngine engine;
    Ordinal fast_cu = engine.cudim(t), fast_us = engine.usdim(t);
    Ordinal orc_cu = oracle_cudim(lat), orc_us = oracle_usdim(lat);
    bool agrees = fast_cu == orc_cu && fast_us == orc_us;

    if (g.json()) {
        nlohmann::ordered_json payload;
        payload["command"] = "oracle-check";
        payload["type"] = type_to_json(t);
        payload["order"] = group.order();
        payload["subgroups"] = lat.size();
        payload["fast"] = {{"cudim", ordinal_to_json(fast_cu)},
                           {"usdim", ordinal_to_json(fast_us)}};
        payload["oracle"] = {{"cudim", ordinal_to_json(orc_cu)},
                             {"usdim", ordinal_to_json(orc_us)}};
        payload["agrees"] = agrees;
        emit(out, payload);
    } else {
        out << "group: " << format_group_spec(t) << " (order " << group.order() << ", "
            << lat.size() << " subgroups)\n";
        out << "fast:   c.u.dim " << ord_format(fast_cu) << ", u.s.dim " << ord_format(fast_us)
            << "\n";
        out << "oracle: c.u.dim " << ord_format(orc_cu) << ", u.s.dim " << ord_format(orc_us)
            << "\n";
        out << "agreement: " << (agrees ? "yes" : "NO") << "\n";
    }
    return agrees ? exit_code::ok : exit_code::verification_failure;
}

} // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{"exact couniserial/uniserial dimension engine for finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough(true);

    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--seed", global.seed, "random seed for verify")->capture_default_str();
    app.add_option("--oracle-budget", global.oracle_budget,
                   "maximum group order for lattice enumeration")
        ->capture_default_str();

    DimArgs dim_args;
    auto* dim = app.add_subcommand("dim", "dimension report for a group spec or matrix file");
    dim->add_option("spec", dim_args.spec, "group spec, e.g. \"Z4+Z2\"");
    dim->add_option("--matrix", dim_args.matrix_file, "JSON integer relation matrix file");
    dim->add_flag("--oracle", dim_args.with_oracle, "cross-check with the lattice oracle");

    std::string catalog_desc;
    auto* cat = app.add_subcommand("catalog", "closed-form dimensions of infinite families");
    cat->add_option("descriptor", catalog_desc, "Z^n | Prufer(p)^m | SS_inf(p)")->required();

    std::string subtypes_spec;
    auto* sub = app.add_subcommand("subtypes", "subgroup isomorphism types of a group spec");
    sub->add_option("spec", subtypes_spec, "group spec")->required();

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "dimension table over p-group partitions");
    table->add_option("--prime", table_args.prime, "prime p")->capture_default_str();
    table->add_option("--max-size", table_args.max_size, "maximum partition weight")
        ->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run the property verification suites");
    verify->add_option("--suite", verify_args.suites, "suite name (repeatable)");
    verify->add_flag("--all", verify_args.all, "run every suite");
    verify->add_option("--max-ptype-size", verify_args.max_ptype_size,
                       "partition weight bound for type universes")
        ->capture_default_str();
    verify->add_option("--oracle-order", verify_args.oracle_equiv_max_order,
                       "exhaustive order bound for oracle equivalence")
        ->capture_default_str();
    verify->add_flag("--timings", verify_args.timings, "include elapsed times in output");

    std::string oracle_spec;
    auto* ocheck = app.add_subcommand("oracle-check", "compare fast and oracle dimensions");
    ocheck->add_option("spec", oracle_spec, "group spec")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (dim->parsed()) return cmd_dim(global, dim_args, out);
        if (cat->parsed()) return cmd_catalog(global, catalog_desc, out);
        if (sub->parsed()) return cmd_subtypes(global, subtypes_spec, out);
        if (table->parsed()) return cmd_table(global, table_args, out);
        if (verify->parsed()) return cmd_verify(global, verify_args, out);
        if (ocheck->parsed()) return cmd_oracle_check(global, oracle_spec, out);
        err << "error: no command\n";
        return exit_code::usage;
    } catch (const budget_error& e) {
        err << "budget error: " << e.what() << "\n";
        return exit_code::budget;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::verification_failure;
    }
}

} // namespace cudim
