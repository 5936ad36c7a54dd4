#pragma once

#include <array>
#include <vector>

#include "stgc/core.hpp"

namespace stgc {

/// Shift each series to zero mean and scale to unit (population) variance.
[[nodiscard]] TimeSeriesPair standardize(const TimeSeriesPair& pair);

/// Replace y by z = (y - c x) / sqrt(1 - c^2), c = corr(x, y), after
/// standardizing both series. The result has corr(x, z) = 0.
[[nodiscard]] TimeSeriesPair orthogonalize(const TimeSeriesPair& pair);

/// Per-window OLS fit of the full model
///   target(t+1) = a_bar(k) target(t) + b_bar(k) cause(t) + n(t)
/// and the restricted model without the cause term, for one direction.
/// The bivariate residual covariance and log-likelihood come from fitting
/// both equations of the VAR(1) on the same window.
struct TvMvarFit {
  ChangePointSet changepoints;
  Direction direction;
  std::vector<double> a_bar;
  std::vector<double> b_bar;
  std::vector<double> a_tilde;
  std::vector<double> rss_full;
  std::vector<double> rss_restricted;
  std::vector<double> llf;
  std::vector<int> n_obs;
  /// ML residual covariance of the bivariate fit per window: {s_xx, s_xy, s_yy}.
  std::vector<std::array<double, 3>> residual_cov;

  [[nodiscard]] int num_windows() const noexcept { return changepoints.num_windows(); }
  [[nodiscard]] int T() const noexcept { return changepoints.T(); }
  [[nodiscard]] double total_llf() const noexcept;
};

/// Fits every window of `s`. Rank-deficient designs are solved with a
/// pseudo-inverse (singular values below 1e-10 of the largest are dropped).
/// Throws WindowTooShort when a window has fewer than 3 regression pairs.
[[nodiscard]] TvMvarFit fit_tvmvar(const TimeSeriesPair& pair, const ChangePointSet& s,
                                   Direction direction);

/// Gaussian log-likelihood of a bivariate window fit with ML covariance.
[[nodiscard]] double bivariate_llf(int n_obs, double det_cov) noexcept;

/// Summary statistics of one window, from cumulative cross-products.
struct WindowStats {
  int n_obs = 0;
  double rss_full_x = 0.0;        ///< x equation, regressors (x, y)
  double rss_restricted_x = 0.0;  ///< x equation, regressor x only
  double rss_full_y = 0.0;
  double rss_restricted_y = 0.0;
  double cov_det = 0.0;  ///< det of the ML residual covariance
  double llf = 0.0;

  [[nodiscard]] double rss_full(Direction d) const noexcept {
    return d == Direction::x_to_y ? rss_full_y : rss_full_x;
  }
  [[nodiscard]] double rss_restricted(Direction d) const noexcept {
    return d == Direction::x_to_y ? rss_restricted_y : rss_restricted_x;
  }
};

/// Prefix sums of the VAR(1) cross-products, so any window can be fitted in
/// O(1). Used by the partition search where millions of windows are scored.
class MomentTable {
 public:
  explicit MomentTable(const TimeSeriesPair& pair);

  [[nodiscard]] int T() const noexcept { return T_; }
  [[nodiscard]] WindowStats stats(Window w) const;

 private:
  enum Product { XX, XY, YY, XNX, YNX, XNY, YNY, NXNX, NYNY, NXNY, kProducts };
  int T_;
  std::vector<std::array<double, kProducts>> prefix_;
};

}  // namespace stgc
