#pragma once

#include <json.hpp>

#include "cudim/abelian_type.hpp"
#include "cudim/dimension.hpp"
#include "cudim/natural.hpp"
#include "cudim/ordinal.hpp"

namespace cudim {

// Values above 2^53 - 1 are rendered as decimal strings so consumers never
// lose precision to double conversion.
inline nlohmann::ordered_json natural_to_json(const Natural& n) {
    if (n.fits_u64() && n.to_u64() < (std::uint64_t{1} << 53)) return n.to_u64();
    return n.to_decimal();
}

// Structured CNF plus display string; parse the structured form.
inline nlohmann::ordered_json ordinal_to_json(const Ordinal& o) {
    nlohmann::ordered_json cnf = nlohmann::ordered_json::array();
    for (const auto& t : o.terms())
        cnf.push_back({natural_to_json(t.exponent), natural_to_json(t.coefficient)});
    return {{"cnf", std::move(cnf)}, {"str", ord_format(o)}};
}

inline nlohmann::ordered_json type_to_json(const AbelianType& t) {
    nlohmann::ordered_json primes = nlohmann::ordered_json::object();
    for (const auto& [p, lambda] : t.primary()) {
        nlohmann::ordered_json parts = nlohmann::ordered_json::array();
        for (auto part : lambda.parts()) parts.push_back(part);
        primes[std::to_string(p)] = std::move(parts);
    }
    return {{"spec", format_group_spec(t)}, {"primes", std::move(primes)}};
}

inline nlohmann::ordered_json report_to_json(const DimensionReport& r) {
    nlohmann::ordered_json out;
    out["defined"] = r.defined;
    out["cudim"] = r.cudim ? ordinal_to_json(*r.cudim) : nlohmann::ordered_json(nullptr);
    out["cudim_lower"] =
        r.cudim_lower ? ordinal_to_json(*r.cudim_lower) : nlohmann::ordered_json(nullptr);
    out["usdim"] = r.usdim ? ordinal_to_json(*r.usdim) : nlohmann::ordered_json(nullptr);
    out["u_dim_finite"] = r.u_dim.has_value();
    out["u_dim"] = r.u_dim ? nlohmann::ordered_json(*r.u_dim) : nlohmann::ordered_json(nullptr);
    out["length"] = r.length ? nlohmann::ordered_json(*r.length) : nlohmann::ordered_json(nullptr);
    if (r.structure) {
        out["flags"] = {{"uniform", r.structure->is_uniform},
                        {"semisimple", r.structure->is_semisimple},
                        {"homogeneous", r.structure->is_homogeneous},
                        {"anti_cohopfian", r.structure->is_anti_cohopfian},
                        {"fully_cohopfian", r.structure->is_fully_cohopfian}};
        out["socle"] = format_group_spec(r.structure->socle);
        out["radical"] = format_group_spec(r.structure->radical);
    } else {
        out["flags"] = nullptr;
        out["socle"] = nullptr;
        out["radical"] = nullptr;
    }
    out["provenance"] = to_string(r.provenance);
    out["notes"] = r.notes;
    return out;
}

} // namespace cudim
