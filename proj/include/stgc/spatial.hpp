#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stgc/causality.hpp"
#include "stgc/changepoint.hpp"
#include "stgc/core.hpp"

namespace stgc {

/// Voxel time series grouped into ROIs. Column i is voxel `voxel_ids[i]`
/// of ROI `roi_of[i]`.
class RoiMatrix {
 public:
  RoiMatrix(std::vector<std::vector<double>> columns, std::vector<std::string> roi_of,
            std::vector<std::string> voxel_ids, double dt = 1.0);

  [[nodiscard]] std::size_t num_voxels() const noexcept { return columns_.size(); }
  [[nodiscard]] std::size_t num_samples() const noexcept { return columns_.front().size(); }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }
  [[nodiscard]] const std::string& roi_of(std::size_t i) const { return roi_of_.at(i); }
  [[nodiscard]] const std::string& voxel_id(std::size_t i) const { return voxel_ids_.at(i); }

  /// Column indices of an ROI in storage order; throws EmptyRoi.
  [[nodiscard]] std::vector<std::size_t> voxels(const std::string& roi) const;
  /// Distinct ROI labels in order of first appearance.
  [[nodiscard]] std::vector<std::string> rois() const;

  /// (x, y) = (voxel i, voxel j).
  [[nodiscard]] TimeSeriesPair pair(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> roi_of_;
  std::vector<std::string> voxel_ids_;
  double dt_;
};

enum class StgcFlavor { classic, average, cumulative };
enum class Partitioner { fixed_set, uniform, optimal_search };

[[nodiscard]] std::string_view to_string(StgcFlavor f) noexcept;
[[nodiscard]] std::string_view to_string(Partitioner p) noexcept;

struct StgcOptions {
  StgcFlavor flavor = StgcFlavor::average;
  Partitioner partitioner = Partitioner::uniform;
  std::vector<int> changepoints;  ///< for fixed_set
  int window_length = 100;        ///< for uniform
  int l0 = kDefaultMinWindow;
  SearchConfig search;            ///< for optimal_search
  AverageGcOptions average;
};

struct VoxelPairResult {
  std::string voxel_a;
  std::string voxel_b;
  std::optional<GcEstimate> estimate;
  std::vector<int> changepoints;
  std::string error;  ///< empty on success
};

struct StgcReport {
  GcEstimate aggregate;  ///< mean over successful pairs; direction A -> B
  std::vector<VoxelPairResult> pairs;
  int succeeded = 0;
  int failed = 0;
};

/// Mean classic GC over all (i in A, j in B) voxel pairs, A -> B.
[[nodiscard]] StgcReport voxel_level_gc(const RoiMatrix& data, const std::string& roi_a,
                                        const std::string& roi_b);

/// Mean time-varying GC over all voxel pairs, each pair partitioned on its own.
[[nodiscard]] StgcReport stgc(const RoiMatrix& data, const std::string& roi_a, const std::string& roi_b,
                              const StgcOptions& opts);

struct LabeledValue {
  std::string label;
  double value;
};

/// Pearson r of label-aligned values; throws LabelMismatch unless both lists
/// carry the same labels exactly once.
[[nodiscard]] double reliability(const std::vector<LabeledValue>& session1,
                                 const std::vector<LabeledValue>& session2);

}  // namespace stgc
