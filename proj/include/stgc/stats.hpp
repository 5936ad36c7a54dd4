#pragma once

#include <span>
#include <vector>

#include "stgc/rng.hpp"

namespace stgc {

struct FDistParams {
  double d1;  ///< numerator degrees of freedom
  double d2;  ///< denominator degrees of freedom
};

/// Regularized incomplete beta I_x(a, b).
/// `y` must equal 1 - x; passing it separately keeps tails accurate.
[[nodiscard]] double incomplete_beta(double a, double b, double x, double y);
[[nodiscard]] double incomplete_beta(double a, double b, double x);

[[nodiscard]] double f_cdf(double x, FDistParams params);
/// Upper tail P(F > x), computed without cancellation.
[[nodiscard]] double f_sf(double x, FDistParams params);

[[nodiscard]] double student_t_cdf(double t, double nu);

[[nodiscard]] double normal_cdf(double z);
[[nodiscard]] double normal_sf(double z);

[[nodiscard]] double mean(std::span<const double> v);
/// Population variance (divides by n).
[[nodiscard]] double variance(std::span<const double> v);

/// Product-moment correlation; throws DegenerateInput on zero variance.
[[nodiscard]] double pearson_correlation(std::span<const double> u, std::span<const double> v);

/// One-sample Kolmogorov-Smirnov test of U(0,1); returns the asymptotic
/// p-value with Stephens' small-sample correction.
[[nodiscard]] double ks_uniform_pvalue(std::vector<double> samples);

/// Linear-interpolated quantile of an unsorted sample, q in [0,1].
[[nodiscard]] double quantile(std::vector<double> values, double q);

}  // namespace stgc
