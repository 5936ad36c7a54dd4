#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stgc/core.hpp"

namespace stgc {

inline constexpr int kToyModelSteps = 1200;

/// A generated pair with the coefficient trajectories that produced it.
/// a12[t-1] and a21[t-1] are the coefficients used for the step t -> t+1.
struct SimulatedPair {
  TimeSeriesPair pair;
  std::vector<double> a12;
  std::vector<double> a21;
  std::optional<ChangePointSet> truth;
};

/// Linearly drifting coupling in both directions; A21 changes sign at t = 400.
///   A11 = 0.1, A22 = 0.1 sqrt 2, A12(t) = 0.5 (t/600 - 1) u1, A21(t) = 0.5 (1 - t/400) u2
[[nodiscard]] SimulatedPair simulate_continuous(std::uint64_t seed, double u1, double u2);

/// X -> Y coupling only, piecewise constant: 0.5 u1 on (0, 215], 0 on (215, 415],
/// -0.5 u1 on (415, 715], 0 afterwards. truth = {1, 216, 416, 716, 1201}.
[[nodiscard]] SimulatedPair simulate_stepwise(std::uint64_t seed, double u1);

[[nodiscard]] double continuous_a12(int t, double u1) noexcept;
[[nodiscard]] double continuous_a21(int t, double u2) noexcept;
[[nodiscard]] double stepwise_a21(int t, double u1) noexcept;

/// Replicate-level parameter draws: uniform on [lo, hi] from (seed, replicate).
[[nodiscard]] double draw_uniform_parameter(std::uint64_t seed, std::uint64_t replicate, std::uint64_t slot,
                                            double lo, double hi);

struct HrfParams {
  double delay_response = 6.0;       ///< seconds
  double delay_undershoot = 16.0;    ///< seconds
  double dispersion_response = 1.0;
  double dispersion_undershoot = 1.0;
  double ratio = 6.0;                ///< response to undershoot
  double onset = 0.0;                ///< seconds
  double kernel_length = 32.0;       ///< seconds

  void validate() const;  ///< throws InvalidParams
};

/// Double-gamma kernel sampled at dt on [0, kernel_length], peak-normalized.
[[nodiscard]] std::vector<double> canonical_hrf(const HrfParams& params, double dt);

/// Unnormalized double-gamma value at time t seconds.
[[nodiscard]] double double_gamma(const HrfParams& params, double t) noexcept;

struct BoldSimConfig {
  int lfp_steps = 40000;
  double lfp_dt = 0.01;
  int flip_step = 18000;
  double a11 = 0.9;
  double a22 = 0.9;
  double a21_magnitude = 0.5;
  bool sign_flip = true;  ///< A21 becomes -magnitude after flip_step
  int neuronal_shift_steps = 5;
  std::vector<double> sample_rates{2.0, 1.0};
  double noise_fraction_total = 0.20;
  double physiological_share = 0.5;  ///< part of the total injected before down-sampling
  int burn_in_steps = 1000;
  HrfParams hrf_x;
  HrfParams hrf_y;
  std::uint64_t seed = 0;

  void validate() const;  ///< throws InvalidConfig
};

struct BoldRate {
  double rate_hz;
  TimeSeriesPair pair;
};

struct BoldSimulation {
  std::vector<BoldRate> rates;
  Direction truth = Direction::x_to_y;
  bool coupled = true;
  /// Convolved neuronal signals at lfp_dt before any noise, standardized.
  std::vector<double> convolved_x;
  std::vector<double> convolved_y;
};

/// LFP VAR(1) at lfp_dt, Y delayed, HRF convolution, physiological noise,
/// decimation to each rate, acquisition noise; every stage standardized.
[[nodiscard]] BoldSimulation simulate_bold(const BoldSimConfig& cfg);

/// Every `factor`-th sample starting at index 0.
[[nodiscard]] std::vector<double> downsample(std::span<const double> signal, int factor);

/// Pairs x[t + d] with y[t] for d > 0 (and x[t] with y[t - d] for d < 0),
/// truncating both to the common support.
[[nodiscard]] TimeSeriesPair realign_bold(const TimeSeriesPair& pair, int delay_samples);

/// Zero mean, unit population variance; constant input is only centered.
void standardize_in_place(std::vector<double>& v);

}  // namespace stgc
