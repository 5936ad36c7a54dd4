#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stgc/changepoint.hpp"
#include "stgc/core.hpp"
#include "stgc/spatial.hpp"

namespace stgc::cli {

using Json = nlohmann::ordered_json;

/// Label used for a direction in reports, e.g. "X->Y".
[[nodiscard]] std::string direction_label(const TimeSeriesPair& pair, Direction d);

[[nodiscard]] Json to_json(const GcEstimate& est, std::optional<double> alpha);
[[nodiscard]] Json to_json(const SearchObjective& obj);
[[nodiscard]] Json to_json(const SearchResult& result);
[[nodiscard]] Json to_json(const StgcReport& report, std::optional<double> alpha);

/// True when p < alpha.
[[nodiscard]] bool significant(const std::optional<double>& p, std::optional<double> alpha);

/// Every `results[].label` / `results[].value` entry of a report, or of each
/// report in an array.
[[nodiscard]] std::vector<LabeledValue> labeled_values(const Json& report);

}  // namespace stgc::cli
