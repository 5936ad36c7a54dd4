#pragma once

#include <cstdint>
#include <vector>

#include "stgc/core.hpp"

namespace stgc {

struct DkfConfig {
  int order = 1;
  double process_noise_var = 1e-4;   ///< random-walk variance per coefficient
  double obs_noise_var_init = 1.0;   ///< observation noise variance, held fixed
  double initial_state_var = 1.0;    ///< prior variance of each coefficient
  int n_bootstrap = 200;
  int warmup = 50;                   ///< residuals dropped from the GC sums
  std::uint64_t seed = 0;

  void validate() const;  ///< throws InvalidConfig
};

struct DkfTrace {
  Direction direction = Direction::x_to_y;
  /// Filtered full-model coefficients per step: own lags 1..p, then cause lags 1..p.
  std::vector<std::vector<double>> a_hat;
  /// Filtered restricted-model coefficients per step: own lags 1..p.
  std::vector<std::vector<double>> a_hat_restricted;
  /// One-step-ahead innovations after the warm-up.
  std::vector<double> residuals_full;
  std::vector<double> residuals_restricted;
};

/// Kalman filter over random-walk regression coefficients for the target
/// equation of `direction`, with and without the cause lags.
[[nodiscard]] DkfTrace dkf_fit(const TimeSeriesPair& pair, const DkfConfig& cfg, Direction direction);

/// log(sum restricted^2 / sum full^2) of the filter innovations, clamped at 0,
/// with a residual-bootstrap p-value under the no-coupling null.
[[nodiscard]] GcEstimate dkf_gc(const TimeSeriesPair& pair, const DkfConfig& cfg, Direction direction);

}  // namespace stgc
