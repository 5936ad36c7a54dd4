#include "stgc/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stgc {

namespace {

void check_lengths(const CoefficientSchedule& sched, const ChangePointSet& s) {
  if (sched.T() != s.T()) {
    throw Error(ErrorCode::LengthMismatch, "schedule has T = " + std::to_string(sched.T()) +
                                               ", change-point set has T = " + std::to_string(s.T()));
  }
}

struct WindowSums {
  double u = 0.0;
  double v = 0.0;
  double sum_b2 = 0.0;
  double sum_sigma2 = 0.0;
  double a_bar = 0.0;
  double b_bar = 0.0;
};

WindowSums window_sums(const CoefficientSchedule& sched, Window w) {
  const auto a = sched.a1();
  const auto b = sched.b1();
  const auto sigma2 = sched.sigma2();
  const auto first = static_cast<std::size_t>(w.begin - 1);
  const auto last = static_cast<std::size_t>(w.end - 1);
  WindowSums out;
  for (std::size_t i = first; i < last; ++i) {
    out.a_bar += a[i];
    out.b_bar += b[i];
    out.sum_b2 += b[i] * b[i];
    out.sum_sigma2 += sigma2[i];
  }
  out.a_bar /= w.length();
  out.b_bar /= w.length();
  for (std::size_t i = first; i < last; ++i) {
    out.u += (a[i] - out.a_bar) * (a[i] - out.a_bar);
    out.v += (b[i] - out.b_bar) * (b[i] - out.b_bar);
  }
  return out;
}

double gc_of(double u, double v, double sum_b2, double sum_sigma2) {
  return std::log((u + sum_b2 + sum_sigma2) / (u + v + sum_sigma2));
}

}  // namespace

WindowMeans schedule_window_means(const CoefficientSchedule& sched, const ChangePointSet& s) {
  check_lengths(sched, s);
  WindowMeans out;
  for (const Window w : s.windows()) {
    const WindowSums ws = window_sums(sched, w);
    out.a_bar.push_back(ws.a_bar);
    out.b_bar.push_back(ws.b_bar);
  }
  return out;
}

TheoreticalGcBreakdown theoretical_cumulative_gc(const CoefficientSchedule& sched, const ChangePointSet& s) {
  check_lengths(sched, s);
  TheoreticalGcBreakdown out;
  for (const Window w : s.windows()) {
    const WindowSums ws = window_sums(sched, w);
    out.u += ws.u;
    out.v += ws.v;
    out.sum_b2 += ws.sum_b2;
    out.sum_sigma2 += ws.sum_sigma2;
  }
  out.value = gc_of(out.u, out.v, out.sum_b2, out.sum_sigma2);
  return out;
}

std::vector<double> theoretical_local_gc(const CoefficientSchedule& sched, const ChangePointSet& s) {
  check_lengths(sched, s);
  std::vector<double> out;
  for (const Window w : s.windows()) {
    const WindowSums ws = window_sums(sched, w);
    out.push_back(gc_of(ws.u, ws.v, ws.sum_b2, ws.sum_sigma2));
  }
  return out;
}

GcEstimate theoretical_average_gc(const CoefficientSchedule& sched, const ChangePointSet& s) {
  const std::vector<double> local = theoretical_local_gc(sched, s);
  double acc = 0.0;
  for (int k = 0; k < s.num_windows(); ++k) acc += s.window(k).length() * local[static_cast<std::size_t>(k)];
  GcEstimate est;
  est.value = acc / s.T();
  est.kind = GcKind::average;
  return est;
}

std::vector<double> c1_theta(const CoefficientSchedule& sched, const ChangePointSet& s) {
  check_lengths(sched, s);
  std::vector<double> theta;
  for (const Window w : s.windows()) {
    const WindowSums ws = window_sums(sched, w);
    theta.push_back((ws.u + ws.v + ws.sum_sigma2) / w.length());
  }
  return theta;
}

bool check_c1_condition(const CoefficientSchedule& sched, const ChangePointSet& s, double tol) {
  const std::vector<double> theta = c1_theta(sched, s);
  const auto [lo, hi] = std::minmax_element(theta.begin(), theta.end());
  return *hi - *lo < tol;
}

}  // namespace stgc
