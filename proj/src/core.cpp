#include "stgc/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stgc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::InvalidDof: return "InvalidDof";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NearCollinear: return "NearCollinear";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::ZeroResidual: return "ZeroResidual";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InfeasibleConstraint: return "InfeasibleConstraint";
    case ErrorCode::DegenerateAgc: return "DegenerateAgc";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DelayTooLarge: return "DelayTooLarge";
    case ErrorCode::EmptyRoi: return "EmptyRoi";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NumericalDivergence: return "NumericalDivergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::IncompatibleFlags: return "IncompatibleFlags";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IncompatibleFlags:
    case ErrorCode::InvalidConfig:
      return 1;
    case ErrorCode::SingularDesign:
    case ErrorCode::ZeroResidual:
    case ErrorCode::InsufficientData:
    case ErrorCode::InfeasibleConstraint:
    case ErrorCode::DegenerateAgc:
    case ErrorCode::NumericalDivergence:
    case ErrorCode::NearCollinear:
      return 3;
    default:
      return 2;
  }
}

std::string_view to_string(Direction d) noexcept {
  return d == Direction::x_to_y ? "x_to_y" : "y_to_x";
}

Direction parse_direction(std::string_view text) {
  if (text == "x_to_y" || text == "X->Y" || text == "xy") return Direction::x_to_y;
  if (text == "y_to_x" || text == "Y->X" || text == "yx") return Direction::y_to_x;
  throw Error(ErrorCode::InvalidConfig, "unknown direction '" + std::string(text) + "'");
}

std::string_view to_string(GcKind k) noexcept {
  switch (k) {
    case GcKind::classic: return "classic";
    case GcKind::local: return "local";
    case GcKind::average: return "average";
    case GcKind::cumulative: return "cumulative";
    case GcKind::dkf: return "dkf";
  }
  return "unknown";
}

TimeSeriesPair::TimeSeriesPair(std::vector<double> x, std::vector<double> y, double dt,
                               std::string label_x, std::string label_y)
    : x_(std::move(x)), y_(std::move(y)), dt_(dt), label_x_(std::move(label_x)),
      label_y_(std::move(label_y)) {
  if (x_.size() != y_.size()) {
    throw Error(ErrorCode::LengthMismatch, "x has " + std::to_string(x_.size()) +
                                               " samples, y has " + std::to_string(y_.size()));
  }
  if (x_.size() < 5) throw Error(ErrorCode::InvalidSeries, "need at least 5 samples");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw Error(ErrorCode::InvalidSeries, "dt must be positive");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(x_.begin(), x_.end(), finite) || !std::all_of(y_.begin(), y_.end(), finite)) {
    throw Error(ErrorCode::InvalidSeries, "non-finite sample");
  }
}

ChangePointSet ChangePointSet::validate(std::vector<int> points, int T, int l0) {
  if (points.size() < 2) throw Error(ErrorCode::EndpointMismatch, "need at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] <= points[i - 1]) {
      throw Error(ErrorCode::NotIncreasing,
                  "point " + std::to_string(points[i]) + " follows " + std::to_string(points[i - 1]));
    }
  }
  if (points.front() != 1 || points.back() != T + 1) {
    throw Error(ErrorCode::EndpointMismatch,
                "set must start at 1 and end at T+1 = " + std::to_string(T + 1));
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] - points[i - 1] < l0) {
      throw Error(ErrorCode::WindowTooShort,
                  "window [" + std::to_string(points[i - 1]) + ", " + std::to_string(points[i]) +
                      ") is shorter than " + std::to_string(l0));
    }
  }
  return ChangePointSet(std::move(points));
}

ChangePointSet ChangePointSet::trivial(int T) { return validate({1, T + 1}, T, 1); }

ChangePointSet ChangePointSet::uniform(int T, int length, int l0) {
  if (length < l0) {
    throw Error(ErrorCode::WindowTooShort,
                "window length " + std::to_string(length) + " below minimum " + std::to_string(l0));
  }
  if (length > T) throw Error(ErrorCode::WindowTooShort, "window length exceeds T = " + std::to_string(T));
  std::vector<int> points;
  for (int t = 1; t <= T; t += length) points.push_back(t);
  // A remainder shorter than l0 joins the previous window.
  if (points.size() > 1 && T + 1 - points.back() < l0) points.pop_back();
  points.push_back(T + 1);
  return validate(std::move(points), T, l0);
}

ChangePointSet ChangePointSet::per_point(int T) {
  std::vector<int> points(static_cast<std::size_t>(T) + 1);
  for (int i = 0; i <= T; ++i) points[static_cast<std::size_t>(i)] = i + 1;
  return validate(std::move(points), T, 1);
}

std::vector<Window> ChangePointSet::windows() const {
  std::vector<Window> out;
  out.reserve(points_.size() - 1);
  for (std::size_t i = 1; i < points_.size(); ++i) out.push_back({points_[i - 1], points_[i]});
  return out;
}

int ChangePointSet::min_window_length() const noexcept {
  int best = points_.back();
  for (std::size_t i = 1; i < points_.size(); ++i) best = std::min(best, points_[i] - points_[i - 1]);
  return best;
}

bool ChangePointSet::contains(int t) const noexcept {
  return std::binary_search(points_.begin(), points_.end(), t);
}

bool refinement_of(const ChangePointSet& fine, const ChangePointSet& coarse) {
  if (fine.T() != coarse.T()) {
    throw Error(ErrorCode::LengthMismatch, "change-point sets cover different T");
  }
  return std::includes(fine.points().begin(), fine.points().end(), coarse.points().begin(),
                       coarse.points().end());
}

CoefficientSchedule::CoefficientSchedule(std::vector<double> a1, std::vector<double> b1,
                                         std::vector<double> sigma2)
    : a1_(std::move(a1)), b1_(std::move(b1)), sigma2_(std::move(sigma2)) {
  if (a1_.size() != b1_.size() || a1_.size() != sigma2_.size()) {
    throw Error(ErrorCode::LengthMismatch, "schedule sequences differ in length");
  }
  if (a1_.empty()) throw Error(ErrorCode::LengthMismatch, "empty schedule");
  for (double s : sigma2_) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidParams, "sigma2 must be strictly positive");
  }
}

}  // namespace stgc
