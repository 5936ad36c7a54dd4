#include "stgc/dkf.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "stgc/rng.hpp"

namespace stgc {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xDCF;

struct FilterRun {
  std::vector<std::vector<double>> coefficients;
  std::vector<double> innovations;  // all steps, warm-up included
};

// Random-walk coefficient filter for z(t) = w(t-1)' a(t) + eta(t).
FilterRun run_filter(std::span<const double> target, std::span<const double> cause, int order, bool with_cause,
                     const DkfConfig& cfg) {
  const int dim = with_cause ? 2 * order : order;
  const Eigen::Index n = dim;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) * cfg.initial_state_var;
  const Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n) * cfg.process_noise_var;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const double r = cfg.obs_noise_var_init;
  Eigen::VectorXd w(n);

  FilterRun run;
  const auto p = static_cast<std::size_t>(order);
  for (std::size_t t = p; t < target.size(); ++t) {
    for (std::size_t l = 0; l < p; ++l) {
      w(static_cast<Eigen::Index>(l)) = target[t - 1 - l];
      if (with_cause) w(static_cast<Eigen::Index>(p + l)) = cause[t - 1 - l];
    }
    P += Q;
    const double e = target[t] - w.dot(a);
    const Eigen::VectorXd Pw = P * w;
    const double s = w.dot(Pw) + r;
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::NumericalDivergence, "innovation variance is not positive at step " + std::to_string(t));
    }
    const Eigen::VectorXd K = Pw / s;
    a += K * e;
    // Joseph form keeps P symmetric positive semi-definite.
    const Eigen::MatrixXd A = I - K * w.transpose();
    P = A * P * A.transpose() + r * K * K.transpose();
    P = 0.5 * (P + P.transpose());
    if (P.diagonal().minCoeff() <= 0.0) {
      Eigen::LLT<Eigen::MatrixXd> llt(P);
      if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDivergence, "state covariance lost definiteness at step " + std::to_string(t));
      }
    }
    run.innovations.push_back(e);
    run.coefficients.emplace_back(a.data(), a.data() + n);
  }
  return run;
}

struct Statistic {
  double raw;  // log ratio, unclamped
  DkfTrace trace;
};

Statistic compute(std::span<const double> target, std::span<const double> cause, const DkfConfig& cfg,
                  Direction direction) {
  const FilterRun full = run_filter(target, cause, cfg.order, true, cfg);
  const FilterRun restricted = run_filter(target, cause, cfg.order, false, cfg);
  Statistic st;
  st.trace.direction = direction;
  st.trace.a_hat = full.coefficients;
  st.trace.a_hat_restricted = restricted.coefficients;
  const auto skip = static_cast<std::size_t>(cfg.warmup);
  st.trace.residuals_full.assign(full.innovations.begin() + static_cast<long>(skip), full.innovations.end());
  st.trace.residuals_restricted.assign(restricted.innovations.begin() + static_cast<long>(skip),
                                       restricted.innovations.end());
  double sf = 0.0;
  double sr = 0.0;
  for (const double e : st.trace.residuals_full) sf += e * e;
  for (const double e : st.trace.residuals_restricted) sr += e * e;
  if (!(sf > 0.0)) throw Error(ErrorCode::ZeroResidual, "full-model DKF innovations vanish");
  st.raw = std::log(sr / sf);
  return st;
}

void check_length(const TimeSeriesPair& pair, const DkfConfig& cfg) {
  const int dim = 2 * cfg.order;
  if (pair.T() <= 10 * dim || pair.T() - cfg.order <= cfg.warmup + 1) {
    throw Error(ErrorCode::InsufficientData, "DKF needs T > " + std::to_string(10 * dim) +
                                                 " and more samples than the warm-up");
  }
}

}  // namespace

void DkfConfig::validate() const {
  if (order < 1) throw Error(ErrorCode::InvalidConfig, "DKF order must be at least 1");
  if (!(process_noise_var > 0.0) || !(obs_noise_var_init > 0.0) || !(initial_state_var > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "DKF variances must be positive");
  }
  if (n_bootstrap < 50) throw Error(ErrorCode::InvalidConfig, "DKF needs at least 50 bootstrap replicates");
  if (warmup < 0) throw Error(ErrorCode::InvalidConfig, "DKF warm-up must be nonnegative");
}

DkfTrace dkf_fit(const TimeSeriesPair& pair, const DkfConfig& cfg, Direction direction) {
  cfg.validate();
  check_length(pair, cfg);
  return compute(pair.target(direction), pair.cause(direction), cfg, direction).trace;
}

GcEstimate dkf_gc(const TimeSeriesPair& pair, const DkfConfig& cfg, Direction direction) {
  cfg.validate();
  check_length(pair, cfg);
  const std::span<const double> target = pair.target(direction);
  const std::span<const double> cause = pair.cause(direction);
  const Statistic observed = compute(target, cause, cfg, direction);

  // Null series: restricted-model dynamics driven by resampled full-model
  // innovations; the cause series is kept as observed.
  std::vector<double> pool = observed.trace.residuals_full;
  double centre = 0.0;
  for (const double e : pool) centre += e;
  centre /= static_cast<double>(pool.size());
  for (double& e : pool) e -= centre;

  const auto p = static_cast<std::size_t>(cfg.order);
  int exceed = 0;
  std::vector<double> z(target.begin(), target.end());
  for (int b = 0; b < cfg.n_bootstrap; ++b) {
    Rng rng = seeded_rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(b)), kBootstrapStream);
    for (std::size_t t = p; t < z.size(); ++t) {
      const std::vector<double>& a = observed.trace.a_hat_restricted[t - p];
      double pred = 0.0;
      for (std::size_t l = 0; l < p; ++l) pred += a[l] * z[t - 1 - l];
      z[t] = pred + pool[rng.uniform_index(pool.size())];
    }
    const Statistic replicate = compute(z, cause, cfg, direction);
    if (replicate.raw >= observed.raw) ++exceed;
  }

  GcEstimate est;
  est.value = std::max(observed.raw, 0.0);
  est.kind = GcKind::dkf;
  est.direction = direction;
  est.df = {static_cast<double>(observed.trace.residuals_full.size())};
  est.p_value = static_cast<double>(exceed) / cfg.n_bootstrap;
  return est;
}

}  // namespace stgc
