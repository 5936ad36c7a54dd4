#include "stgc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stgc/rng.hpp"
#include "stgc/stats.hpp"

namespace stgc {

namespace {

constexpr std::uint64_t kInnovationStream = 0;
constexpr std::uint64_t kPhysiologicalStream = 1;
constexpr std::uint64_t kAcquisitionStream = 2;
constexpr std::uint64_t kParameterStream = 0x9a7a;

const double kA11 = 0.1;
const double kA22 = 0.1 * std::numbers::sqrt2;

struct Coupling {
  double a12;
  double a21;
};

template <typename CouplingFn>
SimulatedPair iterate_toy(std::uint64_t seed, CouplingFn coupling) {
  Rng rng = seeded_rng(seed, kInnovationStream);
  const int T = kToyModelSteps;
  std::vector<double> x(T + 1);
  std::vector<double> y(T + 1);
  std::vector<double> a12(T);
  std::vector<double> a21(T);
  x[0] = rng.normal();
  y[0] = rng.normal();
  for (int t = 1; t <= T; ++t) {
    const Coupling c = coupling(t);
    const auto i = static_cast<std::size_t>(t - 1);
    a12[i] = c.a12;
    a21[i] = c.a21;
    const double nx = rng.normal();
    const double ny = rng.normal();
    x[i + 1] = kA11 * x[i] + c.a12 * y[i] + nx;
    y[i + 1] = c.a21 * x[i] + kA22 * y[i] + ny;
  }
  return {TimeSeriesPair(std::move(x), std::move(y)), std::move(a12), std::move(a21), std::nullopt};
}

double gamma_density(double t, double shape, double scale) noexcept {
  if (t <= 0.0) return 0.0;
  return std::exp((shape - 1.0) * std::log(t) - t / scale - std::lgamma(shape) - shape * std::log(scale));
}

void add_noise(std::vector<double>& v, double fraction, Rng& rng) {
  if (fraction <= 0.0) return;
  const double sd = std::sqrt(fraction * variance(v));
  for (double& e : v) e += sd * rng.normal();
}

int decimation_factor(double rate, double dt) {
  const double exact = 1.0 / (rate * dt);
  const double rounded = std::round(exact);
  if (rounded < 1.0 || std::fabs(exact - rounded) > 1e-9 * exact) {
    throw Error(ErrorCode::InvalidConfig,
                "sample rate " + std::to_string(rate) + " Hz is not an integer decimation of the LFP step");
  }
  return static_cast<int>(rounded);
}

}  // namespace

double continuous_a12(int t, double u1) noexcept { return 0.5 * (t / 600.0 - 1.0) * u1; }
double continuous_a21(int t, double u2) noexcept { return 0.5 * (1.0 - t / 400.0) * u2; }

double stepwise_a21(int t, double u1) noexcept {
  if (t <= 215) return 0.5 * u1;
  if (t <= 415) return 0.0;
  if (t <= 715) return -0.5 * u1;
  return 0.0;
}

SimulatedPair simulate_continuous(std::uint64_t seed, double u1, double u2) {
  return iterate_toy(seed, [&](int t) { return Coupling{continuous_a12(t, u1), continuous_a21(t, u2)}; });
}

SimulatedPair simulate_stepwise(std::uint64_t seed, double u1) {
  SimulatedPair sim = iterate_toy(seed, [&](int t) { return Coupling{0.0, stepwise_a21(t, u1)}; });
  sim.truth = ChangePointSet::validate({1, 216, 416, 716, kToyModelSteps + 1}, kToyModelSteps);
  return sim;
}

double draw_uniform_parameter(std::uint64_t seed, std::uint64_t replicate, std::uint64_t slot, double lo,
                              double hi) {
  Rng rng = seeded_rng(mix_seed(seed, replicate), kParameterStream + slot);
  return lo + (hi - lo) * rng.uniform();
}

void HrfParams::validate() const {
  if (!(dispersion_response > 0.0) || !(dispersion_undershoot > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "HRF dispersions must be positive");
  }
  if (!(delay_response > 0.0) || !(delay_undershoot > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "HRF delays must be positive");
  }
  if (!(ratio > 0.0)) throw Error(ErrorCode::InvalidParams, "HRF ratio must be positive");
  if (!(kernel_length > delay_undershoot)) {
    throw Error(ErrorCode::InvalidParams, "HRF kernel must be longer than the undershoot delay");
  }
  if (!std::isfinite(onset) || onset < 0.0) throw Error(ErrorCode::InvalidParams, "HRF onset must be >= 0");
}

double double_gamma(const HrfParams& p, double t) noexcept {
  const double u = t - p.onset;
  const double response = gamma_density(u, p.delay_response / p.dispersion_response, p.dispersion_response);
  const double undershoot =
      gamma_density(u, p.delay_undershoot / p.dispersion_undershoot, p.dispersion_undershoot);
  return response - undershoot / p.ratio;
}

std::vector<double> canonical_hrf(const HrfParams& params, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParams, "HRF sampling step must be positive");
  const auto n = static_cast<std::size_t>(std::floor(params.kernel_length / dt)) + 1;
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = double_gamma(params, static_cast<double>(i) * dt);
  const double peak = *std::max_element(h.begin(), h.end());
  if (!(peak > 0.0)) throw Error(ErrorCode::InvalidParams, "HRF has no positive peak");
  for (double& e : h) e /= peak;
  return h;
}

void BoldSimConfig::validate() const {
  if (lfp_steps < 100) throw Error(ErrorCode::InvalidConfig, "lfp_steps must be at least 100");
  if (!(lfp_dt > 0.0)) throw Error(ErrorCode::InvalidConfig, "lfp_dt must be positive");
  if (flip_step < 0 || flip_step >= lfp_steps) throw Error(ErrorCode::InvalidConfig, "flip_step must lie inside the run");
  if (!(noise_fraction_total >= 0.0 && noise_fraction_total < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "noise_fraction_total must be in [0, 1)");
  }
  if (!(physiological_share >= 0.0 && physiological_share <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "physiological_share must be in [0, 1]");
  }
  if (neuronal_shift_steps < 0 || burn_in_steps < 0) {
    throw Error(ErrorCode::InvalidConfig, "shift and burn-in must be nonnegative");
  }
  if (sample_rates.empty()) throw Error(ErrorCode::InvalidConfig, "at least one sample rate is required");
  for (const double r : sample_rates) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidConfig, "sample rates must be positive");
    (void)decimation_factor(r, lfp_dt);
  }
  try {
    hrf_x.validate();
    hrf_y.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
}

void standardize_in_place(std::vector<double>& v) {
  const double m = mean(v);
  const double var = variance(v);
  const double inv_sd = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  for (double& e : v) e = (e - m) * inv_sd;
}

std::vector<double> downsample(std::span<const double> signal, int factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidConfig, "decimation factor must be at least 1");
  std::vector<double> out;
  out.reserve(signal.size() / static_cast<std::size_t>(factor) + 1);
  for (std::size_t i = 0; i < signal.size(); i += static_cast<std::size_t>(factor)) out.push_back(signal[i]);
  return out;
}

BoldSimulation simulate_bold(const BoldSimConfig& cfg) {
  cfg.validate();
  const std::vector<double> hx = canonical_hrf(cfg.hrf_x, cfg.lfp_dt);
  const std::vector<double> hy = canonical_hrf(cfg.hrf_y, cfg.lfp_dt);
  const std::size_t kernel = std::max(hx.size(), hy.size());
  const auto shift = static_cast<std::size_t>(cfg.neuronal_shift_steps);
  const std::size_t pre = static_cast<std::size_t>(cfg.burn_in_steps) + kernel + shift;
  const auto n = static_cast<std::size_t>(cfg.lfp_steps);
  const std::size_t total = pre + n;

  // (1) neuronal VAR(1); recorded step s = i - pre + 1.
  Rng noise = seeded_rng(cfg.seed, kInnovationStream);
  std::vector<double> x(total);
  std::vector<double> y(total);
  x[0] = noise.normal();
  y[0] = noise.normal();
  for (std::size_t i = 0; i + 1 < total; ++i) {
    const long step = static_cast<long>(i) - static_cast<long>(pre) + 1;
    const double a21 = cfg.sign_flip && step > cfg.flip_step ? -cfg.a21_magnitude : cfg.a21_magnitude;
    const double nx = noise.normal();
    const double ny = noise.normal();
    x[i + 1] = cfg.a11 * x[i] + nx;
    y[i + 1] = a21 * x[i] + cfg.a22 * y[i] + ny;
  }
  standardize_in_place(x);
  standardize_in_place(y);

  // (2) delay Y, (3) causal convolution over the recorded range.
  auto convolve = [&](const std::vector<double>& s, const std::vector<double>& h, std::size_t lag) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t at = pre + i - lag;
      double acc = 0.0;
      for (std::size_t j = 0; j < h.size(); ++j) acc += h[j] * s[at - j];
      out[i] = acc;
    }
    return out;
  };
  BoldSimulation sim;
  sim.coupled = cfg.a21_magnitude != 0.0;
  sim.convolved_x = convolve(x, hx, 0);
  sim.convolved_y = convolve(y, hy, shift);
  standardize_in_place(sim.convolved_x);
  standardize_in_place(sim.convolved_y);

  // (4) physiological noise.
  const double physio = cfg.noise_fraction_total * cfg.physiological_share;
  const double acquisition = cfg.noise_fraction_total - physio;
  Rng physio_rng = seeded_rng(cfg.seed, kPhysiologicalStream);
  std::vector<double> bx = sim.convolved_x;
  std::vector<double> by = sim.convolved_y;
  add_noise(bx, physio, physio_rng);
  add_noise(by, physio, physio_rng);
  standardize_in_place(bx);
  standardize_in_place(by);

  // (5) down-sample, (6) acquisition noise.
  for (std::size_t r = 0; r < cfg.sample_rates.size(); ++r) {
    const double rate = cfg.sample_rates[r];
    const int factor = decimation_factor(rate, cfg.lfp_dt);
    std::vector<double> dx = downsample(bx, factor);
    std::vector<double> dy = downsample(by, factor);
    standardize_in_place(dx);
    standardize_in_place(dy);
    Rng acq_rng = seeded_rng(cfg.seed, kAcquisitionStream + r);
    add_noise(dx, acquisition, acq_rng);
    add_noise(dy, acquisition, acq_rng);
    standardize_in_place(dx);
    standardize_in_place(dy);
    sim.rates.push_back({rate, TimeSeriesPair(std::move(dx), std::move(dy), 1.0 / rate)});
  }
  return sim;
}

TimeSeriesPair realign_bold(const TimeSeriesPair& pair, int delay_samples) {
  const auto n = static_cast<long>(pair.size());
  if (2L * std::labs(delay_samples) >= n - 1) {
    throw Error(ErrorCode::DelayTooLarge, "delay of " + std::to_string(delay_samples) + " samples exceeds T/2");
  }
  const auto d = static_cast<std::size_t>(std::labs(delay_samples));
  const auto x = pair.x();
  const auto y = pair.y();
  const std::size_t len = pair.size() - d;
  std::vector<double> nx;
  std::vector<double> ny;
  if (delay_samples >= 0) {
    nx.assign(x.begin() + static_cast<long>(d), x.end());
    ny.assign(y.begin(), y.begin() + static_cast<long>(len));
  } else {
    nx.assign(x.begin(), x.begin() + static_cast<long>(len));
    ny.assign(y.begin() + static_cast<long>(d), y.end());
  }
  return TimeSeriesPair(std::move(nx), std::move(ny), pair.dt(), pair.label_x(), pair.label_y());
}

}  // namespace stgc
