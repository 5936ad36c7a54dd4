#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "stgc/core.hpp"
#include "stgc/spatial.hpp"

namespace stgc::cli {

/// 17 significant digits, enough to read back the identical double.
[[nodiscard]] std::string format_double(double v);

/// Header `t,<x>,<y>`; the two value column names become the pair labels.
/// dt is taken from the t column. Throws ParseError with the line number.
[[nodiscard]] TimeSeriesPair parse_pair_csv(std::istream& in, const std::string& name);
[[nodiscard]] TimeSeriesPair read_pair_csv(const std::filesystem::path& path);
void write_pair_csv(const std::filesystem::path& path, const TimeSeriesPair& pair);

/// Header `t,<ROI>:<voxel>,...`.
[[nodiscard]] RoiMatrix parse_roi_csv(std::istream& in, const std::string& name);
[[nodiscard]] RoiMatrix read_roi_csv(const std::filesystem::path& path);
void write_roi_csv(const std::filesystem::path& path, const RoiMatrix& data);

}  // namespace stgc::cli
