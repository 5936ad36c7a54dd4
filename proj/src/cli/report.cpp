#include "cli/report.hpp"

namespace stgc::cli {

std::string direction_label(const TimeSeriesPair& pair, Direction d) {
  return d == Direction::x_to_y ? pair.label_x() + "->" + pair.label_y() : pair.label_y() + "->" + pair.label_x();
}

bool significant(const std::optional<double>& p, std::optional<double> alpha) {
  return p.has_value() && alpha.has_value() && *p < *alpha;
}

Json to_json(const GcEstimate& est, std::optional<double> alpha) {
  Json j;
  j["kind"] = std::string(to_string(est.kind));
  j["direction"] = std::string(to_string(est.direction));
  j["value"] = est.value;
  j["df"] = est.df;
  j["p_value"] = est.p_value ? Json(*est.p_value) : Json(nullptr);
  if (alpha) j["significant"] = significant(est.p_value, alpha);
  return j;
}

Json to_json(const SearchObjective& obj) {
  Json j;
  j["lambda"] = obj.lambda;
  j["m"] = obj.m;
  j["err"] = obj.err;
  j["agc"] = obj.agc;
  j["cost"] = obj.cost;
  j["bic"] = obj.bic;
  j["changepoints"] = obj.changepoints.points();
  return j;
}

Json to_json(const SearchResult& result) {
  Json j;
  j["best"] = to_json(result.best);
  Json table = Json::array();
  for (const auto& row : result.table) table.push_back(to_json(row));
  j["table"] = std::move(table);
  return j;
}

Json to_json(const StgcReport& report, std::optional<double> alpha) {
  Json j;
  j["aggregate"] = to_json(report.aggregate, std::nullopt);
  j["succeeded"] = report.succeeded;
  j["failed"] = report.failed;
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    Json row;
    row["voxel_a"] = p.voxel_a;
    row["voxel_b"] = p.voxel_b;
    if (p.estimate) {
      row["estimate"] = to_json(*p.estimate, alpha);
      row["changepoints"] = p.changepoints;
    } else {
      row["error"] = p.error;
    }
    pairs.push_back(std::move(row));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

std::vector<LabeledValue> labeled_values(const Json& report) {
  std::vector<LabeledValue> out;
  if (report.is_array()) {
    for (const auto& r : report) {
      auto part = labeled_values(r);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (!report.is_object() || !report.contains("results") || !report["results"].is_array()) {
    throw Error(ErrorCode::ParseError, "report has no results array");
  }
  for (const auto& r : report["results"]) {
    if (!r.contains("label") || !r.contains("value") || !r["value"].is_number()) {
      throw Error(ErrorCode::ParseError, "report result lacks a label or numeric value");
    }
    out.push_back({r["label"].get<std::string>(), r["value"].get<double>()});
  }
  return out;
}

}  // namespace stgc::cli
