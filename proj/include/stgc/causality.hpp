#pragma once

#include <cstdint>
#include <span>

#include "stgc/core.hpp"
#include "stgc/estimator.hpp"

namespace stgc {

/// log(rss_restricted / rss_full), clamped at 0. A vanishing full-model RSS
/// is floored at 1e-12 of the restricted RSS; both zero gives 0.
[[nodiscard]] double gc_log_ratio(double rss_restricted, double rss_full) noexcept;

/// Per-window GC, log(rss_restricted / rss_full), with an F(1, n - 3) test.
/// A window whose full-model residual vanishes reports a finite value and
/// no p-value.
[[nodiscard]] GcEstimate local_gc(const TvMvarFit& fit, int k);

struct AverageGcOptions {
  int mc_draws = 100000;
  std::uint64_t seed = 0x5eed;
};

/// Window-length-weighted mean of local GCs. The p-value comes from a
/// Monte Carlo of the null statistic; once fewer than 10 null draws exceed
/// the observed value it switches to a saddlepoint tail estimate.
[[nodiscard]] GcEstimate average_gc(const TvMvarFit& fit, const AverageGcOptions& opts = {});

/// log(sum rss_restricted / sum rss_full) with an F(m, T - 2m - 1) test.
[[nodiscard]] GcEstimate cumulative_gc(const TvMvarFit& fit);

/// Cumulative GC on the single-window partition {1, T+1}.
[[nodiscard]] GcEstimate classic_gc(const TimeSeriesPair& pair, Direction direction);

/// Upper tail P(sum_k w_k G_k >= value) where exp(-G_k) ~ Beta((n_k-3)/2, 1/2)
/// and w_k = n_k / sum(n). Lugannani-Rice saddlepoint approximation.
[[nodiscard]] double average_gc_tail_saddlepoint(std::span<const int> n_obs, double value);

/// Monte Carlo version of the same tail: fraction of draws >= value, plus
/// the raw exceedance count.
struct MonteCarloTail {
  double p = 1.0;
  long exceedances = 0;
};
[[nodiscard]] MonteCarloTail average_gc_tail_monte_carlo(std::span<const int> n_obs, double value,
                                                         int draws, std::uint64_t seed);

}  // namespace stgc
