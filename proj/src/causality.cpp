#include "stgc/causality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "stgc/stats.hpp"

namespace stgc {

namespace {

constexpr double kZeroResidualRatio = 1e-12;
constexpr long kMinExceedances = 10;
constexpr std::uint64_t kNullStream = 0xA76;

struct LogRatio {
  double value = 0.0;
  double ratio = 1.0;
  bool testable = false;
};

// Shared treatment of a restricted/full RSS pair, including the degenerate
// noiseless cases.
LogRatio log_ratio(double rss_restricted, double rss_full) {
  if (!(rss_restricted > 0.0)) return {0.0, 1.0, false};
  const double floor = kZeroResidualRatio * rss_restricted;
  if (rss_full <= floor) return {std::log(rss_restricted / floor), rss_restricted / floor, false};
  const double ratio = std::max(rss_restricted / rss_full, 1.0);
  return {std::log(ratio), ratio, true};
}

void check_window(const TvMvarFit& fit, int k) {
  if (k < 0 || k >= fit.num_windows()) {
    throw Error(ErrorCode::InvalidConfig, "window index " + std::to_string(k) + " out of range");
  }
}

struct NullTerm {
  double a;  // (n_k - 3) / 2
  double w;  // n_k / N
};

std::vector<NullTerm> null_terms(std::span<const int> n_obs) {
  const double total = std::accumulate(n_obs.begin(), n_obs.end(), 0.0);
  std::vector<NullTerm> terms;
  terms.reserve(n_obs.size());
  for (int n : n_obs) {
    if (n <= 3) throw Error(ErrorCode::InvalidDof, "window of " + std::to_string(n) + " pairs has no F dof");
    terms.push_back({(n - 3) / 2.0, n / total});
  }
  return terms;
}

}  // namespace

double gc_log_ratio(double rss_restricted, double rss_full) noexcept {
  return log_ratio(rss_restricted, rss_full).value;
}

GcEstimate local_gc(const TvMvarFit& fit, int k) {
  check_window(fit, k);
  const auto i = static_cast<std::size_t>(k);
  const int n = fit.n_obs[i];
  const LogRatio lr = log_ratio(fit.rss_restricted[i], fit.rss_full[i]);
  GcEstimate est;
  est.value = lr.value;
  est.kind = GcKind::local;
  est.direction = fit.direction;
  est.df = {1.0, static_cast<double>(n - 3)};
  if (lr.testable && n > 3) {
    est.p_value = f_sf((n - 3) * (lr.ratio - 1.0), {1.0, static_cast<double>(n - 3)});
  }
  return est;
}

GcEstimate average_gc(const TvMvarFit& fit, const AverageGcOptions& opts) {
  const int m = fit.num_windows();
  double weighted = 0.0;
  bool testable = true;
  GcEstimate est;
  est.kind = GcKind::average;
  est.direction = fit.direction;
  for (int k = 0; k < m; ++k) {
    const GcEstimate local = local_gc(fit, k);
    weighted += fit.n_obs[static_cast<std::size_t>(k)] * local.value;
    testable = testable && local.p_value.has_value();
    est.df.push_back(local.df[1]);
  }
  est.value = weighted / fit.T();
  if (!testable) return est;

  if (m == 1) {
    est.p_value = local_gc(fit, 0).p_value;
    return est;
  }
  const MonteCarloTail mc = average_gc_tail_monte_carlo(fit.n_obs, est.value, opts.mc_draws, opts.seed);
  est.p_value = mc.exceedances >= kMinExceedances ? mc.p
                                                  : average_gc_tail_saddlepoint(fit.n_obs, est.value);
  return est;
}

GcEstimate cumulative_gc(const TvMvarFit& fit) {
  const int m = fit.num_windows();
  const int d2 = fit.T() - 2 * m - 1;
  if (d2 <= 0) {
    throw Error(ErrorCode::InsufficientData,
                "cumulative GC needs T - 2m - 1 > 0 (T = " + std::to_string(fit.T()) +
                    ", m = " + std::to_string(m) + ")");
  }
  const double sum_r = std::accumulate(fit.rss_restricted.begin(), fit.rss_restricted.end(), 0.0);
  const double sum_f = std::accumulate(fit.rss_full.begin(), fit.rss_full.end(), 0.0);
  const LogRatio lr = log_ratio(sum_r, sum_f);
  GcEstimate est;
  est.value = lr.value;
  est.kind = GcKind::cumulative;
  est.direction = fit.direction;
  est.df = {static_cast<double>(m), static_cast<double>(d2)};
  if (lr.testable) {
    est.p_value = f_sf(d2 / static_cast<double>(m) * (lr.ratio - 1.0), {static_cast<double>(m), static_cast<double>(d2)});
  }
  return est;
}

GcEstimate classic_gc(const TimeSeriesPair& pair, Direction direction) {
  GcEstimate est = cumulative_gc(fit_tvmvar(pair, ChangePointSet::trivial(pair.T()), direction));
  est.kind = GcKind::classic;
  return est;
}

MonteCarloTail average_gc_tail_monte_carlo(std::span<const int> n_obs, double value, int draws,
                                           std::uint64_t seed) {
  if (draws <= 0) throw Error(ErrorCode::InvalidConfig, "Monte Carlo needs a positive draw count");
  const std::vector<NullTerm> terms = null_terms(n_obs);
  Rng rng = seeded_rng(seed, kNullStream);
  long hits = 0;
  for (int i = 0; i < draws; ++i) {
    double s = 0.0;
    for (const NullTerm& t : terms) {
      // -log B with B = X / (X + Y), X ~ Gamma(a), Y ~ Gamma(1/2).
      const double x = rng.gamma(t.a);
      const double y = rng.gamma(0.5);
      s += t.w * std::log1p(y / x);
    }
    if (s >= value) ++hits;
  }
  return {static_cast<double>(hits) / draws, hits};
}

double average_gc_tail_saddlepoint(std::span<const int> n_obs, double value) {
  if (!(value > 0.0)) return 1.0;
  const std::vector<NullTerm> terms = null_terms(n_obs);
  using boost::math::digamma;
  using boost::math::trigamma;

  auto cgf = [&](double s) {
    double k = 0.0;
    for (const NullTerm& t : terms) {
      const double z = t.a - t.w * s;
      k += std::lgamma(z) - std::lgamma(z + 0.5) - std::lgamma(t.a) + std::lgamma(t.a + 0.5);
    }
    return k;
  };
  auto cgf1 = [&](double s) {
    double k = 0.0;
    for (const NullTerm& t : terms) {
      const double z = t.a - t.w * s;
      k += t.w * (digamma(z + 0.5) - digamma(z));
    }
    return k;
  };
  auto cgf2 = [&](double s) {
    double k = 0.0;
    for (const NullTerm& t : terms) {
      const double z = t.a - t.w * s;
      k += t.w * t.w * (trigamma(z) - trigamma(z + 0.5));
    }
    return k;
  };

  double s_max = std::numeric_limits<double>::infinity();
  for (const NullTerm& t : terms) s_max = std::min(s_max, t.a / t.w);

  // K' is increasing; bracket the root of K'(s) = value.
  double lo = 0.0;
  double hi = 0.0;
  if (cgf1(0.0) < value) {
    hi = s_max;
  } else {
    lo = -1.0;
    while (cgf1(lo) > value) lo *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (cgf1(mid) < value ? lo : hi) = mid;
  }
  const double s_hat = 0.5 * (lo + hi);
  const double k2 = cgf2(s_hat);
  const double r2 = 2.0 * (s_hat * value - cgf(s_hat));
  const double r = std::copysign(std::sqrt(std::max(r2, 0.0)), s_hat);
  const double u = s_hat * std::sqrt(k2);
  if (std::fabs(r) < 1e-6 || std::fabs(u) < 1e-6) {
    return std::clamp(normal_sf((value - cgf1(0.0)) / std::sqrt(cgf2(0.0))), 0.0, 1.0);
  }
  const double phi = std::exp(-0.5 * r * r) / std::sqrt(2.0 * std::numbers::pi);
  return std::clamp(normal_sf(r) + phi * (1.0 / u - 1.0 / r), 0.0, 1.0);
}

}  // namespace stgc
