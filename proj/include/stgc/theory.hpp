#pragma once

#include <vector>

#include "stgc/core.hpp"

namespace stgc {

// Population GC of a known coefficient schedule, assuming unit-variance,
// mutually uncorrelated x and y.

struct WindowMeans {
  std::vector<double> a_bar;
  std::vector<double> b_bar;
};

/// Arithmetic means of a1 and b1 over each window of `s`.
[[nodiscard]] WindowMeans schedule_window_means(const CoefficientSchedule& sched,
                                                const ChangePointSet& s);

struct TheoreticalGcBreakdown {
  double u = 0.0;  ///< sum over windows of squared deviations of a1 from its window mean
  double v = 0.0;  ///< same for b1
  double sum_b2 = 0.0;
  double sum_sigma2 = 0.0;
  double value = 0.0;  ///< log((u + sum_b2 + sum_sigma2) / (u + v + sum_sigma2))
};

[[nodiscard]] TheoreticalGcBreakdown theoretical_cumulative_gc(const CoefficientSchedule& sched,
                                                               const ChangePointSet& s);

/// Per-window theoretical GC, same formula restricted to window k.
[[nodiscard]] std::vector<double> theoretical_local_gc(const CoefficientSchedule& sched,
                                                       const ChangePointSet& s);

/// Length-weighted mean of the per-window theoretical GC.
[[nodiscard]] GcEstimate theoretical_average_gc(const CoefficientSchedule& sched,
                                                const ChangePointSet& s);

/// theta_k = (within-window squared deviations of a1 and b1 + sum sigma2) / n_k.
[[nodiscard]] std::vector<double> c1_theta(const CoefficientSchedule& sched, const ChangePointSet& s);

/// True iff max_k theta_k - min_k theta_k < tol. Under this condition the
/// average GC never exceeds the cumulative GC.
[[nodiscard]] bool check_c1_condition(const CoefficientSchedule& sched, const ChangePointSet& s,
                                      double tol = 1e-12);

}  // namespace stgc
