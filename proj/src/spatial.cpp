#include "stgc/spatial.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "stgc/estimator.hpp"
#include "stgc/stats.hpp"

namespace stgc {

RoiMatrix::RoiMatrix(std::vector<std::vector<double>> columns, std::vector<std::string> roi_of,
                     std::vector<std::string> voxel_ids, double dt)
    : columns_(std::move(columns)), roi_of_(std::move(roi_of)), voxel_ids_(std::move(voxel_ids)), dt_(dt) {
  if (columns_.empty()) throw Error(ErrorCode::EmptyRoi, "ROI matrix has no voxels");
  if (roi_of_.size() != columns_.size() || voxel_ids_.size() != columns_.size()) {
    throw Error(ErrorCode::LengthMismatch, "every voxel needs exactly one ROI label and id");
  }
  for (const auto& c : columns_) {
    if (c.size() != columns_.front().size()) throw Error(ErrorCode::LengthMismatch, "voxel series differ in length");
  }
  if (!(dt_ > 0.0)) throw Error(ErrorCode::InvalidSeries, "dt must be positive");
}

std::vector<std::size_t> RoiMatrix::voxels(const std::string& roi) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roi_of_.size(); ++i) {
    if (roi_of_[i] == roi) out.push_back(i);
  }
  if (out.empty()) throw Error(ErrorCode::EmptyRoi, "no voxels in ROI '" + roi + "'");
  return out;
}

std::vector<std::string> RoiMatrix::rois() const {
  std::vector<std::string> out;
  for (const auto& r : roi_of_) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

TimeSeriesPair RoiMatrix::pair(std::size_t i, std::size_t j) const {
  return TimeSeriesPair(column(i), column(j), dt_, roi_of(i) + ":" + voxel_id(i), roi_of(j) + ":" + voxel_id(j));
}

std::string_view to_string(StgcFlavor f) noexcept {
  switch (f) {
    case StgcFlavor::classic: return "classic";
    case StgcFlavor::average: return "average";
    case StgcFlavor::cumulative: return "cumulative";
  }
  return "?";
}

std::string_view to_string(Partitioner p) noexcept {
  switch (p) {
    case Partitioner::fixed_set: return "fixed_set";
    case Partitioner::uniform: return "uniform";
    case Partitioner::optimal_search: return "optimal_search";
  }
  return "?";
}

namespace {

template <typename PairFn>
StgcReport aggregate(const RoiMatrix& data, const std::string& roi_a, const std::string& roi_b, GcKind kind,
                     PairFn per_pair) {
  const std::vector<std::size_t> a = data.voxels(roi_a);
  const std::vector<std::size_t> b = data.voxels(roi_b);
  StgcReport report;
  report.aggregate.kind = kind;
  report.aggregate.direction = Direction::x_to_y;
  double sum = 0.0;
  for (const std::size_t i : a) {
    for (const std::size_t j : b) {
      VoxelPairResult r;
      r.voxel_a = roi_a + ":" + data.voxel_id(i);
      r.voxel_b = roi_b + ":" + data.voxel_id(j);
      try {
        per_pair(data.pair(i, j), r);
        sum += r.estimate->value;
        ++report.succeeded;
      } catch (const Error& e) {
        r.error = e.what();
        ++report.failed;
      }
      report.pairs.push_back(std::move(r));
    }
  }
  if (report.succeeded == 0) {
    throw Error(ErrorCode::DegenerateInput, "every voxel pair failed between '" + roi_a + "' and '" + roi_b + "'");
  }
  report.aggregate.value = sum / report.succeeded;
  return report;
}

}  // namespace

StgcReport voxel_level_gc(const RoiMatrix& data, const std::string& roi_a, const std::string& roi_b) {
  return aggregate(data, roi_a, roi_b, GcKind::classic, [](const TimeSeriesPair& p, VoxelPairResult& r) {
    r.estimate = classic_gc(p, Direction::x_to_y);
    r.changepoints = {1, p.T() + 1};
  });
}

StgcReport stgc(const RoiMatrix& data, const std::string& roi_a, const std::string& roi_b, const StgcOptions& opts) {
  const GcKind kind = opts.flavor == StgcFlavor::average      ? GcKind::average
                      : opts.flavor == StgcFlavor::cumulative ? GcKind::cumulative
                                                              : GcKind::classic;
  return aggregate(data, roi_a, roi_b, kind, [&](const TimeSeriesPair& p, VoxelPairResult& r) {
    ChangePointSet s;
    switch (opts.partitioner) {
      case Partitioner::fixed_set: s = ChangePointSet::validate(opts.changepoints, p.T(), opts.l0); break;
      case Partitioner::uniform: s = ChangePointSet::uniform(p.T(), opts.window_length, opts.l0); break;
      case Partitioner::optimal_search: s = search_optimal_partition(p, opts.search).best.changepoints; break;
    }
    if (opts.flavor == StgcFlavor::classic) s = ChangePointSet::trivial(p.T());
    const TvMvarFit fit = fit_tvmvar(p, s, Direction::x_to_y);
    GcEstimate est = opts.flavor == StgcFlavor::average ? average_gc(fit, opts.average) : cumulative_gc(fit);
    if (opts.flavor == StgcFlavor::classic) est.kind = GcKind::classic;
    r.estimate = std::move(est);
    r.changepoints = s.points();
  });
}

double reliability(const std::vector<LabeledValue>& session1, const std::vector<LabeledValue>& session2) {
  std::map<std::string, double> second;
  for (const auto& lv : session2) {
    if (!second.emplace(lv.label, lv.value).second) {
      throw Error(ErrorCode::LabelMismatch, "duplicate label '" + lv.label + "' in second session");
    }
  }
  if (second.size() != session1.size()) {
    throw Error(ErrorCode::LabelMismatch, "sessions carry different numbers of labels");
  }
  std::vector<double> u;
  std::vector<double> v;
  std::map<std::string, bool> seen;
  for (const auto& lv : session1) {
    if (!seen.emplace(lv.label, true).second) {
      throw Error(ErrorCode::LabelMismatch, "duplicate label '" + lv.label + "' in first session");
    }
    const auto it = second.find(lv.label);
    if (it == second.end()) throw Error(ErrorCode::LabelMismatch, "label '" + lv.label + "' missing from second session");
    u.push_back(lv.value);
    v.push_back(it->second);
  }
  return pearson_correlation(u, v);
}

}  // namespace stgc
