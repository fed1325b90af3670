#pragma once

#include "ammlab/prediction_market.hpp"

#include <json.hpp>

#include <string>

namespace ammlab {

/// Operation wire form used by scenario files:
///   {"op": "swap", "token_in": "NO", "amount_in": "500"}
///   {"op": "add_liquidity", "alpha": "0.5"}
///   {"op": "remove_liquidity", "alpha": "1/4"}
/// Token labels accept YES/NO or X/Y; amounts are decimal or p/q strings.
Operation operation_from_json(const nlohmann::json& j);
nlohmann::json operation_to_json(const Operation& op);

/// Scenario file shape:
///   {"name": "...", "initial": {"yes": "1000", "no": "1000"},
///    "path1": [...], "path2": [...]}
/// The two paths must hold the same operation multiset.
struct ScenarioFile {
    Scenario scenario;
    MarketPool initial;
};

ScenarioFile scenario_from_json(const nlohmann::json& j);
ScenarioFile load_scenario_file(const std::string& path);

}  // namespace ammlab
