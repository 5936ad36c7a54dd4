#pragma once

#include <array>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "stgc/core.hpp"

namespace testing {

inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& e : v) e = dist(gen);
  return v;
}

// x(t+1) = a11 x + a12 y + e1,  y(t+1) = a21 x + a22 y + e2, T+1 samples.
inline stgc::TimeSeriesPair var1(int T, double a11, double a12, double a21, double a22, std::uint64_t seed,
                                 double noise = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  std::vector<double> x(T + 1), y(T + 1);
  x[0] = dist(gen);
  y[0] = dist(gen);
  for (int t = 0; t < T; ++t) {
    x[t + 1] = a11 * x[t] + a12 * y[t] + noise * dist(gen);
    y[t + 1] = a21 * x[t] + a22 * y[t] + noise * dist(gen);
  }
  return {std::move(x), std::move(y)};
}

struct Ols2 {
  double a = 0.0;
  double b = 0.0;
  double rss_full = 0.0;
  double a_restricted = 0.0;
  double rss_restricted = 0.0;
};

// target(t+1) on (target(t), cause(t)) for 1-based t in [begin, end), solved
// by Cramer's rule on the 2x2 normal equations.
inline Ols2 ols2(std::span<const double> target, std::span<const double> cause, int begin, int end) {
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0, szz = 0;
  for (int t = begin; t < end; ++t) {
    const double u = target[t - 1], w = cause[t - 1], z = target[t];
    s11 += u * u;
    s12 += u * w;
    s22 += w * w;
    r1 += u * z;
    r2 += w * z;
    szz += z * z;
  }
  Ols2 o;
  const double det = s11 * s22 - s12 * s12;
  o.a = (r1 * s22 - r2 * s12) / det;
  o.b = (s11 * r2 - s12 * r1) / det;
  o.a_restricted = r1 / s11;
  for (int t = begin; t < end; ++t) {
    const double u = target[t - 1], w = cause[t - 1], z = target[t];
    o.rss_full += std::pow(z - o.a * u - o.b * w, 2);
    o.rss_restricted += std::pow(z - o.a_restricted * u, 2);
  }
  (void)szz;
  return o;
}

// Random valid change-point set over T with windows of at least l0.
template <typename Gen>
std::vector<int> random_partition(int T, int l0, int max_windows, Gen& gen) {
  std::vector<int> pts{1};
  std::uniform_int_distribution<int> count(1, max_windows);
  const int m = count(gen);
  for (int k = 1; k < m; ++k) {
    const int lo = pts.back() + l0;
    const int hi = T + 1 - l0 * (m - k);
    if (hi < lo) break;
    pts.push_back(std::uniform_int_distribution<int>(lo, hi)(gen));
  }
  pts.push_back(T + 1);
  return pts;
}

}  // namespace testing
