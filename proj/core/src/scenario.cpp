#include "ammlab/scenario.hpp"

#include "ammlab/errors.hpp"

#include <fstream>

namespace ammlab {

namespace {

Rational rational_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw ParseError(std::string("operation missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return parse_rational(nlohmann::json(v).dump());
    throw ParseError(std::string("field '") + key + "' must be a number or numeric string");
}

Token token_from_label(const std::string& label) {
    if (label == "YES" || label == "yes" || label == "X" || label == "x") return Token::X;
    if (label == "NO" || label == "no" || label == "Y" || label == "y") return Token::Y;
    throw ParseError("unknown token label '" + label + "'");
}

}  // namespace

Operation operation_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("op"))
        throw ParseError("operation must be an object with an 'op' field");
    const std::string kind = j.at("op").get<std::string>();
    if (kind == "swap") {
        const std::string label = j.value("token_in", std::string("NO"));
        return Swap{token_from_label(label), rational_field(j, "amount_in")};
    }
    if (kind == "add_liquidity") return AddLiquidity{rational_field(j, "alpha")};
    if (kind == "remove_liquidity") return RemoveLiquidity{rational_field(j, "alpha")};
    throw ParseError("unknown operation kind '" + kind + "'");
}

nlohmann::json operation_to_json(const Operation& op) {
    return std::visit(
        [](const auto& o) -> nlohmann::json {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Swap>) {
                return {{"op", "swap"},
                        {"token_in", o.token_in == Token::X ? "YES" : "NO"},
                        {"amount_in", format_sig(o.amount_in, 18)}};
            } else if constexpr (std::is_same_v<T, AddLiquidity>) {
                return {{"op", "add_liquidity"}, {"alpha", format_sig(o.alpha, 18)}};
            } else {
                return {{"op", "remove_liquidity"}, {"alpha", format_sig(o.alpha, 18)}};
            }
        },
        op);
}

ScenarioFile scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("scenario file must be a JSON object");

    ScenarioFile out{Scenario{}, MarketPool(Rational(1000), Rational(1000))};
    out.scenario.name = j.value("name", std::string("custom"));

    if (j.contains("initial")) {
        const auto& init = j.at("initial");
        out.initial = MarketPool(rational_field(init, "yes"), rational_field(init, "no"));
    }

    for (const char* key : {"path1", "path2"}) {
        if (!j.contains(key) || !j.at(key).is_array())
            throw ParseError(std::string("scenario needs an array field '") + key + "'");
        auto& dst = std::string(key) == "path1" ? out.scenario.path1 : out.scenario.path2;
        for (const auto& item : j.at(key)) dst.push_back(operation_from_json(item));
    }

    if (!same_multiset(out.scenario.path1, out.scenario.path2))
        throw ValidationError("scenario paths are not permutations of the same operations");
    return out;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NetworkError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid scenario JSON in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

}  // namespace ammlab
