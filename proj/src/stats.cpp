#include "stgc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "stgc/error.hpp"

namespace stgc {

double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidDof, "incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  // Evaluate from whichever end is smaller so tails keep full relative precision.
  if (x <= y) return boost::math::ibeta(a, b, x);
  return boost::math::ibetac(b, a, y);
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

namespace {

void check_dof(FDistParams p) {
  if (!(p.d1 > 0.0) || !(p.d2 > 0.0)) {
    throw Error(ErrorCode::InvalidDof,
                "F dof must be positive (got " + std::to_string(p.d1) + ", " + std::to_string(p.d2) + ")");
  }
}

}  // namespace

double f_cdf(double x, FDistParams p) {
  check_dof(p);
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double denom = p.d1 * x + p.d2;
  return incomplete_beta(p.d1 / 2.0, p.d2 / 2.0, p.d1 * x / denom, p.d2 / denom);
}

double f_sf(double x, FDistParams p) {
  check_dof(p);
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double denom = p.d1 * x + p.d2;
  return incomplete_beta(p.d2 / 2.0, p.d1 / 2.0, p.d2 / denom, p.d1 * x / denom);
}

double student_t_cdf(double t, double nu) {
  if (!(nu > 0.0)) throw Error(ErrorCode::InvalidDof, "t dof must be positive");
  const double denom = nu + t * t;
  const double tail = 0.5 * incomplete_beta(nu / 2.0, 0.5, nu / denom, t * t / denom);
  return t > 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double e : v) s += (e - m) * (e - m);
  return s / static_cast<double>(v.size());
}

double pearson_correlation(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::LengthMismatch, "correlation inputs differ in length");
  if (u.size() < 3) throw Error(ErrorCode::DegenerateInput, "correlation needs at least 3 values");
  const double mu = mean(u);
  const double mv = mean(v);
  double suu = 0.0;
  double svv = 0.0;
  double suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    suu += du * du;
    svv += dv * dv;
    suv += du * dv;
  }
  if (suu == 0.0 || svv == 0.0) throw Error(ErrorCode::DegenerateInput, "zero variance");
  return std::clamp(suv / std::sqrt(suu * svv), -1.0, 1.0);
}

double ks_uniform_pvalue(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorCode::DegenerateInput, "KS test on empty sample");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std::clamp(samples[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::fabs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::DegenerateInput, "quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace stgc
