#pragma once

// Shared domain types.
//
// Time indexing follows the 1-based convention of the model: a record of T+1
// samples is indexed t = 1..T+1, a change-point set is 1 = t_0 < ... < t_m =
// T+1, and window k covers the half-open range [t_{k-1}, t_k). Each t in a
// window contributes one regression pair (t -> t+1). Storage is 0-based, so
// sample t lives at index t-1 of the underlying vectors. This is the only
// place that mapping is defined; everything else goes through
// ChangePointSet::window().

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stgc/error.hpp"

namespace stgc {

inline constexpr int kDefaultMinWindow = 10;

enum class Direction { x_to_y, y_to_x };

[[nodiscard]] std::string_view to_string(Direction d) noexcept;
[[nodiscard]] Direction parse_direction(std::string_view text);

/// Two aligned scalar series sampled every dt seconds.
class TimeSeriesPair {
 public:
  TimeSeriesPair(std::vector<double> x, std::vector<double> y, double dt = 1.0,
                 std::string label_x = "X", std::string label_y = "Y");

  [[nodiscard]] std::span<const double> x() const noexcept { return x_; }
  [[nodiscard]] std::span<const double> y() const noexcept { return y_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] const std::string& label_x() const noexcept { return label_x_; }
  [[nodiscard]] const std::string& label_y() const noexcept { return label_y_; }

  /// Number of samples, T+1.
  [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
  /// Number of regression pairs, T.
  [[nodiscard]] int T() const noexcept { return static_cast<int>(x_.size()) - 1; }

  /// Series ordered as (target, cause) for the given direction.
  [[nodiscard]] std::span<const double> target(Direction d) const noexcept {
    return d == Direction::x_to_y ? y() : x();
  }
  [[nodiscard]] std::span<const double> cause(Direction d) const noexcept {
    return d == Direction::x_to_y ? x() : y();
  }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  double dt_;
  std::string label_x_;
  std::string label_y_;
};

struct Window {
  int begin;  ///< first time index (1-based, inclusive)
  int end;    ///< one past the last time index
  [[nodiscard]] int length() const noexcept { return end - begin; }
};

/// Ordered partition 1 = t_0 < t_1 < ... < t_m = T+1.
class ChangePointSet {
 public:
  /// Placeholder single window over T = 1; real sets come from the factories.
  ChangePointSet() : points_{1, 2} {}

  /// Validates and builds a set; throws Error on NotIncreasing,
  /// EndpointMismatch or WindowTooShort.
  static ChangePointSet validate(std::vector<int> points, int T, int l0 = kDefaultMinWindow);

  /// The classic single-window set {1, T+1}.
  static ChangePointSet trivial(int T);

  /// Windows of `length` samples; a shorter final remainder is kept as its
  /// own window when it has at least l0 samples.
  static ChangePointSet uniform(int T, int length, int l0 = kDefaultMinWindow);

  /// Every time point is its own window, {1, 2, ..., T+1}.
  static ChangePointSet per_point(int T);

  [[nodiscard]] const std::vector<int>& points() const noexcept { return points_; }
  [[nodiscard]] int T() const noexcept { return points_.back() - 1; }
  [[nodiscard]] int num_windows() const noexcept { return static_cast<int>(points_.size()) - 1; }
  [[nodiscard]] Window window(int k) const { return {points_.at(k), points_.at(k + 1)}; }
  [[nodiscard]] std::vector<Window> windows() const;
  [[nodiscard]] int min_window_length() const noexcept;
  [[nodiscard]] bool contains(int t) const noexcept;

  friend bool operator==(const ChangePointSet&, const ChangePointSet&) = default;

 private:
  explicit ChangePointSet(std::vector<int> points) : points_(std::move(points)) {}
  std::vector<int> points_;
};

/// True iff every point of `coarse` also appears in `fine`.
[[nodiscard]] bool refinement_of(const ChangePointSet& fine, const ChangePointSet& coarse);

enum class GcKind { classic, local, average, cumulative, dkf };

[[nodiscard]] std::string_view to_string(GcKind k) noexcept;

struct GcEstimate {
  double value = 0.0;  ///< log-ratio, nats
  GcKind kind = GcKind::classic;
  std::vector<double> df;
  std::optional<double> p_value;
  Direction direction = Direction::x_to_y;
};

/// Known coefficient trajectories a1(t), b1(t), sigma2(t), t = 1..T.
class CoefficientSchedule {
 public:
  CoefficientSchedule(std::vector<double> a1, std::vector<double> b1, std::vector<double> sigma2);

  [[nodiscard]] std::span<const double> a1() const noexcept { return a1_; }
  [[nodiscard]] std::span<const double> b1() const noexcept { return b1_; }
  [[nodiscard]] std::span<const double> sigma2() const noexcept { return sigma2_; }
  [[nodiscard]] int T() const noexcept { return static_cast<int>(a1_.size()); }

 private:
  std::vector<double> a1_;
  std::vector<double> b1_;
  std::vector<double> sigma2_;
};

}  // namespace stgc
