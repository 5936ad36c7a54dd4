#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/distributions/gamma.hpp>
#include <numeric>

#include "stgc/causality.hpp"
#include "stgc/error.hpp"
#include "stgc/estimator.hpp"
#include "stgc/simulate.hpp"
#include "support.hpp"

using namespace stgc;

namespace {

bool same_series(const TimeSeriesPair& a, const TimeSeriesPair& b) {
  return std::equal(a.x().begin(), a.x().end(), b.x().begin(), b.x().end()) &&
         std::equal(a.y().begin(), a.y().end(), b.y().begin(), b.y().end());
}

double gamma_pdf(double t, double shape, double scale) {
  if (t <= 0.0) return 0.0;
  return boost::math::pdf(boost::math::gamma_distribution<double>(shape, scale), t);
}

}  // namespace

TEST_CASE("continuous model schedule") {
  CHECK(continuous_a21(400, 0.7) == 0.0);
  CHECK(continuous_a21(1, 0.7) > 0.0);
  CHECK(continuous_a21(1200, 0.7) < 0.0);
  CHECK(continuous_a12(600, 0.3) == 0.0);
  CHECK(continuous_a12(1200, 0.3) == doctest::Approx(0.15));
  const auto sim = simulate_continuous(5, 0.4, 0.9);
  REQUIRE(sim.a21.size() == 1200);
  CHECK(sim.a21[399] == 0.0);
  CHECK(sim.a21.front() > 0.0);
  CHECK(sim.a21.back() < 0.0);
  CHECK(sim.pair.size() == 1201);
}

TEST_CASE("decoupled continuous model") {
  const auto sim = simulate_continuous(3, 0.0, 0.0);
  for (const Direction d : {Direction::x_to_y, Direction::y_to_x}) {
    const auto fit = fit_tvmvar(sim.pair, ChangePointSet::trivial(1200), d);
    CHECK(std::abs(fit.b_bar[0]) < 4.0 / std::sqrt(1200.0));
  }
  const auto fit = fit_tvmvar(sim.pair, ChangePointSet::trivial(1200), Direction::y_to_x);
  CHECK(std::abs(fit.a_bar[0] - 0.1) < 4.0 / std::sqrt(1200.0));
}

TEST_CASE("generators are deterministic") {
  CHECK(same_series(simulate_continuous(11, 0.5, 0.5).pair, simulate_continuous(11, 0.5, 0.5).pair));
  CHECK_FALSE(same_series(simulate_continuous(11, 0.5, 0.5).pair, simulate_continuous(12, 0.5, 0.5).pair));
  CHECK(same_series(simulate_stepwise(11, 1.0).pair, simulate_stepwise(11, 1.0).pair));
  BoldSimConfig cfg;
  cfg.lfp_steps = 4000;
  cfg.flip_step = 2000;
  cfg.seed = 4;
  const auto a = simulate_bold(cfg);
  const auto b = simulate_bold(cfg);
  for (std::size_t r = 0; r < a.rates.size(); ++r) CHECK(same_series(a.rates[r].pair, b.rates[r].pair));
  CHECK(draw_uniform_parameter(1, 2, 0, 0.5, 1.5) == draw_uniform_parameter(1, 2, 0, 0.5, 1.5));
  CHECK(draw_uniform_parameter(1, 2, 0, 0.5, 1.5) != draw_uniform_parameter(1, 3, 0, 0.5, 1.5));
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const double u = draw_uniform_parameter(9, rep, 1, 0.5, 1.5);
    CHECK((u >= 0.5 && u <= 1.5));
  }
}

TEST_CASE("stepwise schedule") {
  const double u1 = 1.2;
  CHECK(stepwise_a21(100, u1) == doctest::Approx(0.6));
  CHECK(stepwise_a21(215, u1) == doctest::Approx(0.6));
  CHECK(stepwise_a21(216, u1) == 0.0);
  CHECK(stepwise_a21(300, u1) == 0.0);
  CHECK(stepwise_a21(500, u1) == doctest::Approx(-0.6));
  CHECK(stepwise_a21(715, u1) == doctest::Approx(-0.6));
  CHECK(stepwise_a21(900, u1) == 0.0);
  const auto sim = simulate_stepwise(1, u1);
  REQUIRE(sim.truth);
  CHECK(sim.truth->points() == std::vector<int>{1, 216, 416, 716, 1201});
  const double avg = std::accumulate(sim.a21.begin(), sim.a21.end(), 0.0) / 1200;
  CHECK(avg == doctest::Approx(u1 * (0.5 * 215 - 0.5 * 300) / 1200).epsilon(1e-12));
  CHECK(avg / u1 == doctest::Approx(-0.0354).epsilon(1e-3));
  CHECK(std::all_of(sim.a12.begin(), sim.a12.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("true partition recovers the coupling pattern") {
  int within = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double u1 = draw_uniform_parameter(2024, seed, 0, 0.5, 1.5);
    const auto sim = simulate_stepwise(seed, u1);
    const auto& p = sim.pair;
    const auto fit = fit_tvmvar(p, *sim.truth, Direction::x_to_y);
    for (int k = 0; k < 4; ++k) {
      const auto w = sim.truth->window(k);
      Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
      for (int t = w.begin; t < w.end; ++t) {
        const Eigen::Vector2d r(p.y()[t - 1], p.x()[t - 1]);
        m += r * r.transpose();
      }
      const double s2 = fit.rss_full[k] / (w.length() - 2);
      const double se = std::sqrt(s2 * m.inverse()(1, 1));
      const double truth = stepwise_a21(w.begin, u1);
      ++total;
      if (std::abs(fit.b_bar[k] - truth) <= 3 * se) ++within;
    }
  }
  MESSAGE(within << "/" << total << " window coefficients within 3 SE");
  CHECK(within >= 0.97 * total);
}

TEST_CASE("canonical HRF matches the double-gamma formula") {
  const HrfParams p;
  const double dt = 0.01;
  const auto h = canonical_hrf(p, dt);
  REQUIRE(h.size() == 3201);
  std::vector<double> oracle(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double t = i * dt;
    oracle[i] = gamma_pdf(t, 6.0, 1.0) - gamma_pdf(t, 16.0, 1.0) / 6.0;
  }
  const double peak = *std::max_element(oracle.begin(), oracle.end());
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(std::abs(h[i] - oracle[i] / peak) < 1e-10);
  const auto argmax = std::max_element(h.begin(), h.end()) - h.begin();
  CHECK(argmax * dt >= 4.5);
  CHECK(argmax * dt <= 6.0);
  CHECK(*std::min_element(h.begin() + argmax, h.end()) < 0.0);
  CHECK(std::isfinite(std::accumulate(h.begin(), h.end(), 0.0)));
}

TEST_CASE("HRF limits and onset") {
  HrfParams p;
  p.ratio = 1e300;
  const auto h = canonical_hrf(p, 0.1);
  CHECK(std::all_of(h.begin(), h.end(), [](double v) { return v >= 0.0; }));
  HrfParams late;
  late.onset = 2.0;
  const auto g = canonical_hrf(late, 0.1);
  for (int i = 0; i <= 20; ++i) CHECK(g[i] == 0.0);
  HrfParams bad;
  bad.dispersion_response = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = {};
  bad.kernel_length = 10.0;
  CHECK_THROWS_AS((void)canonical_hrf(bad, 0.1), Error);
}

TEST_CASE("BOLD row counts and decimation") {
  BoldSimConfig cfg;
  cfg.seed = 1;
  const auto sim = simulate_bold(cfg);
  REQUIRE(sim.rates.size() == 2);
  CHECK(sim.rates[0].rate_hz == 2.0);
  CHECK(sim.rates[0].pair.size() == 800);
  CHECK(sim.rates[1].pair.size() == 400);
  CHECK(sim.rates[0].pair.dt() == 0.5);
  const auto at2 = downsample(sim.convolved_x, 50);
  const auto direct = downsample(sim.convolved_x, 100);
  CHECK(downsample(at2, 2) == direct);
  CHECK(downsample(std::vector<double>{0, 1, 2, 3, 4}, 2) == std::vector<double>{0, 2, 4});
}

TEST_CASE("noiseless BOLD with constant coupling is detected at 2 Hz") {
  BoldSimConfig cfg;
  cfg.seed = 3;
  cfg.noise_fraction_total = 0.0;
  cfg.sign_flip = false;
  const auto sim = simulate_bold(cfg);
  const auto g = classic_gc(sim.rates[0].pair, Direction::x_to_y);
  REQUIRE(g.p_value);
  CHECK(*g.p_value < 1e-6);
}

TEST_CASE("BOLD config validation") {
  BoldSimConfig cfg;
  cfg.flip_step = cfg.lfp_steps;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.noise_fraction_total = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.sample_rates = {3.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("realignment") {
  const auto p = testing::var1(40, 0.2, 0.0, 0.0, 0.2, 1);
  CHECK(same_series(realign_bold(p, 0), p));
  const auto fwd = realign_bold(p, 3);
  CHECK(fwd.size() == p.size() - 3);
  CHECK(fwd.x()[0] == p.x()[3]);
  CHECK(fwd.y()[0] == p.y()[0]);
  const auto back = realign_bold(fwd, -3);
  CHECK(back.size() == p.size() - 6);
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back.x()[i] == p.x()[i + 3]);
    CHECK(back.y()[i] == p.y()[i + 3]);
  }
  try {
    (void)realign_bold(p, 20);
    FAIL("expected DelayTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DelayTooLarge);
  }
}
