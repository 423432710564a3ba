#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "rschain/core_analysis.hpp"
#include "rschain/piecewise.hpp"
#include "rschain/rs_game.hpp"
#include "rschain/rs_model.hpp"
#include "rschain/solutions.hpp"

namespace rschain::json {

using nlohmann::json;

/// Parses text, throwing ParseError with the parser's message.
json parse(std::string_view text);

// Curve: {"domain_lo": n, "segments": [{"lo", "hi" (number or "inf"), "alpha", "beta", "gamma"}]}.
// Unknown fields are rejected.
json to_json(const PiecewiseCurve& curve);
PiecewiseCurve curve_from_json(const json& j);

// Situation: {"c": n, "w": curve, "retailers": [{"id": i, "p": curve}]} with ids 1..n.
json to_json(const RSSituation& sit);
RSSituation situation_from_json(const json& j);

// Single problem: {"c": n, "w": curve, "p": curve}.
RSProblem problem_from_json(const json& j);

/// Accepts either document shape; a single problem becomes a one-retailer
/// situation.
RSSituation any_situation_from_json(const json& j);

// Game: {"n": int, "values": [{"coalition": [ids], "v": n}]}, sorted by size
// then lexicographic ids. Import requires every nonempty coalition.
json to_json(const RSGame& game);
RSGame game_from_json(const json& j);

// Allocation: {"label": s, "payoffs": [supplier first]}.
json to_json(const Allocation& x);
Allocation allocation_from_json(const json& j);

// Prices: {"prices": [retailer order]}.
json to_json(const PriceVector& w);
PriceVector prices_from_json(const json& j);

json to_json(Coalition s);
json to_json(const AxiomReport& r);
json to_json(const MgpcResult& r);
json to_json(const StructureReport& r);
json to_json(const CoalitionSolution& s);

}  // namespace rschain::json
