#include "nilmult/json_io.hpp"

#include "nilmult/errors.hpp"

namespace nilmult {

nlohmann::json big_to_json(const BigInt& value) {
    if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(value);
    if (value < 0 && value >= std::numeric_limits<std::int64_t>::min()) return static_cast<std::int64_t>(value);
    return value.str();
}

namespace {

BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    throw DomainError("expected an integer");
}

}  // namespace

nlohmann::json to_json(const AbelianStructure& group) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : group.display())
        factors.push_back({{"modulus", f.modulus}, {"multiplicity", big_to_json(f.multiplicity)}});
    nlohmann::json primary = nlohmann::json::array();
    for (auto it = group.primary().rbegin(); it != group.primary().rend(); ++it)
        primary.push_back({{"modulus", it->first}, {"multiplicity", big_to_json(it->second)}});
    return {{"free_rank", big_to_json(group.free_rank())},
            {"factors", factors},
            {"primary", primary},
            {"text", group.to_text()}};
}

AbelianStructure abelian_from_json(const nlohmann::json& j) {
    std::vector<CyclicFactor> raw{{0, big_from_json(j.at("free_rank"))}};
    for (const auto& f : j.at("factors")) raw.push_back({f.at("modulus").get<Order>(), big_from_json(f.at("multiplicity"))});
    return canonicalize(raw);
}

nlohmann::json to_json(const OrderStatistics& stats) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [order, count] : stats) out[std::to_string(order)] = big_to_json(count);
    return out;
}

nlohmann::json to_json(const Verdict& verdict) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : verdict.violations) {
        nlohmann::json item{{"message", v.message}};
        if (v.prime != 0) item["prime"] = v.prime;
        if (v.position != 0) {
            item["factor"] = v.position;
            item["order"] = v.order;
        }
        violations.push_back(std::move(item));
    }
    return {{"ok", verdict.ok()}, {"violations", violations}};
}

nlohmann::json to_json(const VerificationReport& report) {
    return {{"class", report.spec.class_n},
            {"c", report.c},
            {"orders", report.spec.orders},
            {"ambient_class", report.ambient_class},
            {"gamma_index", report.gamma_index},
            {"subgroup_order", report.subgroup_order},
            {"predicted", to_json(report.predicted)},
            {"predicted_orders", to_json(report.predicted_orders)},
            {"oracle_abelian", report.oracle.abelian},
            {"oracle_orders", to_json(report.oracle.orders)},
            {"match", report.match}};
}

}  // namespace nilmult
