#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "stgc/error.hpp"
#include "stgc/theory.hpp"
#include "support.hpp"

using namespace stgc;

namespace {

CoefficientSchedule alternating_schedule() { return {{1, 1, 1, 1, 1, 1}, {1, 0, 1, 0, 1, 0}, {1, 1, 1, 1, 1, 1}}; }

CoefficientSchedule ramp_schedule() { return {{0, 0, 0}, {1, std::sqrt(2.0), std::sqrt(3.0)}, {3, 2, 1}}; }

// Term-by-term evaluation of U, V and the sums for a block of 1-based times.
struct Terms {
  double u = 0, v = 0, b2 = 0, s2 = 0;
};

Terms block_terms(const CoefficientSchedule& c, int begin, int end) {
  Terms t;
  double ma = 0, mb = 0;
  for (int i = begin; i < end; ++i) {
    ma += c.a1()[i - 1];
    mb += c.b1()[i - 1];
  }
  ma /= end - begin;
  mb /= end - begin;
  for (int i = begin; i < end; ++i) {
    t.u += std::pow(c.a1()[i - 1] - ma, 2);
    t.v += std::pow(c.b1()[i - 1] - mb, 2);
    t.b2 += std::pow(c.b1()[i - 1], 2);
    t.s2 += c.sigma2()[i - 1];
  }
  return t;
}

double value_of(const Terms& t) { return std::log((t.u + t.b2 + t.s2) / (t.u + t.v + t.s2)); }

double oracle_cumulative(const CoefficientSchedule& c, const ChangePointSet& s) {
  Terms all;
  for (const auto& w : s.windows()) {
    const Terms t = block_terms(c, w.begin, w.end);
    all.u += t.u;
    all.v += t.v;
    all.b2 += t.b2;
    all.s2 += t.s2;
  }
  return value_of(all);
}

double oracle_average(const CoefficientSchedule& c, const ChangePointSet& s) {
  double acc = 0;
  for (const auto& w : s.windows()) acc += w.length() * value_of(block_terms(c, w.begin, w.end));
  return acc / s.T();
}

CoefficientSchedule random_schedule(int T, std::mt19937_64& gen) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  std::vector<double> a(T), b(T), s(T);
  for (int i = 0; i < T; ++i) {
    a[i] = 0.5 * n01(gen);
    b[i] = 0.5 * n01(gen);
    s[i] = pos(gen);
  }
  return {a, b, s};
}

std::vector<int> refine(const std::vector<int>& coarse, int T, std::mt19937_64& gen) {
  auto pts = coarse;
  std::uniform_int_distribution<int> cut(2, T);
  const int extra = std::uniform_int_distribution<int>(0, 4)(gen);
  for (int i = 0; i < extra; ++i) pts.push_back(cut(gen));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

TEST_CASE("window means") {
  const auto s = ChangePointSet::validate({1, 3, 5, 7}, 6, 1);
  const auto m = schedule_window_means(alternating_schedule(), s);
  CHECK(m.b_bar == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(m.a_bar == std::vector<double>{1.0, 1.0, 1.0});

  std::mt19937_64 gen(1);
  const auto c = random_schedule(40, gen);
  const auto w = ChangePointSet::validate({1, 13, 29, 41}, 40, 1);
  const auto mm = schedule_window_means(c, w);
  for (int k = 0; k < 3; ++k) {
    double acc = 0;
    for (int t = w.window(k).begin; t < w.window(k).end; ++t) acc += c.b1()[t - 1];
    CHECK(mm.b_bar[k] == doctest::Approx(acc / w.window(k).length()).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)schedule_window_means(c, ChangePointSet::trivial(39)), Error);
}

TEST_CASE("three-window counter-example gives log 6/5") {
  const auto s = ChangePointSet::validate({1, 3, 5, 7}, 6, 1);
  const auto r = theoretical_cumulative_gc(alternating_schedule(), s);
  CHECK(std::abs(r.value - std::log(6.0 / 5.0)) < 1e-12);
  CHECK(r.u == 0.0);
  CHECK(r.v == doctest::Approx(1.5));
  CHECK(r.sum_b2 == 3.0);
  CHECK(r.sum_sigma2 == 6.0);
}

TEST_CASE("two-window counter-example follows the term-by-term formula") {
  const auto s = ChangePointSet::validate({1, 4, 7}, 6, 1);
  const auto r = theoretical_cumulative_gc(alternating_schedule(), s);
  CHECK(std::abs(r.v - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(r.value - oracle_cumulative(alternating_schedule(), s)) < 1e-12);
  CHECK(std::abs(r.value - std::log(27.0 / 22.0)) < 1e-12);
  // More windows, smaller GC: the two sets are not nested.
  CHECK(theoretical_cumulative_gc(alternating_schedule(), ChangePointSet::validate({1, 3, 5, 7}, 6, 1)).value < r.value);
}

TEST_CASE("no cross coefficient gives zero") {
  const CoefficientSchedule c({0.4, 0.4, 0.4, 0.4}, {0, 0, 0, 0}, {1, 2, 1, 2});
  const auto s = ChangePointSet::validate({1, 3, 5}, 4, 1);
  CHECK(theoretical_cumulative_gc(c, s).value == 0.0);
  CHECK(theoretical_average_gc(c, s).value == 0.0);
}

TEST_CASE("average GC counter-example values") {
  const auto per_point = theoretical_average_gc(ramp_schedule(), ChangePointSet::per_point(3));
  CHECK(std::abs(per_point.value - (std::log(4.0 / 3.0) + std::log(2.0) + std::log(4.0)) / 3.0) < 1e-12);
  const double mb = (1 + std::sqrt(2.0) + std::sqrt(3.0)) / 3;
  const double v = 6 - 3 * mb * mb;
  CHECK(std::abs(theoretical_average_gc(ramp_schedule(), ChangePointSet::trivial(3)).value - std::log(12 / (v + 6))) <
        1e-12);
  // The same log 2 is what pooling the per-point windows gives.
  CHECK(std::abs(theoretical_cumulative_gc(ramp_schedule(), ChangePointSet::per_point(3)).value - std::log(2.0)) < 1e-12);
  CHECK(per_point.value > theoretical_cumulative_gc(ramp_schedule(), ChangePointSet::per_point(3)).value);
}

TEST_CASE("equal-theta condition checks") {
  const CoefficientSchedule flat({0.3, 0.3, 0.3, 0.3}, {0.5, 0.5, -0.2, -0.2}, {1, 1, 1, 1});
  CHECK(check_c1_condition(flat, ChangePointSet::validate({1, 3, 5}, 4, 1)));
  CHECK_FALSE(check_c1_condition(ramp_schedule(), ChangePointSet::per_point(3)));
  const auto theta = c1_theta(ramp_schedule(), ChangePointSet::per_point(3));
  CHECK(theta == std::vector<double>{3, 2, 1});
}

TEST_CASE("theory matches the term-by-term oracle") {
  std::mt19937_64 gen(2);
  for (int rep = 0; rep < 200; ++rep) {
    const int T = std::uniform_int_distribution<int>(6, 60)(gen);
    const auto c = random_schedule(T, gen);
    const auto s = ChangePointSet::validate(testing::random_partition(T, 1, 6, gen), T, 1);
    CHECK(std::abs(theoretical_cumulative_gc(c, s).value - oracle_cumulative(c, s)) < 1e-12);
    CHECK(std::abs(theoretical_average_gc(c, s).value - oracle_average(c, s)) < 1e-12);
    const auto local = theoretical_local_gc(c, s);
    for (int k = 0; k < s.num_windows(); ++k) {
      const auto w = s.window(k);
      CHECK(std::abs(local[k] - value_of(block_terms(c, w.begin, w.end))) < 1e-12);
    }
  }
}

TEST_CASE("refinement never lowers either theoretical GC") {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 300; ++rep) {
    const int T = std::uniform_int_distribution<int>(6, 60)(gen);
    const auto c = random_schedule(T, gen);
    const auto coarse_pts = testing::random_partition(T, 1, 4, gen);
    const auto coarse = ChangePointSet::validate(coarse_pts, T, 1);
    const auto fine = ChangePointSet::validate(refine(coarse_pts, T, gen), T, 1);
    REQUIRE(refinement_of(fine, coarse));
    CHECK(theoretical_cumulative_gc(c, fine).value - theoretical_cumulative_gc(c, coarse).value >= -1e-12);
    CHECK(theoretical_average_gc(c, fine).value - theoretical_average_gc(c, coarse).value >= -1e-12);
  }
}

TEST_CASE("trivial set is the minimum and the true set of a piecewise schedule the maximum") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n01;
  for (int rep = 0; rep < 50; ++rep) {
    const int T = 48;
    const auto truth = ChangePointSet::validate({1, 13, 31, 49}, T, 1);
    std::vector<double> a(T), b(T), s(T, 1.0);
    for (int k = 0; k < 3; ++k) {
      const double ak = n01(gen), bk = n01(gen);
      for (int t = truth.window(k).begin; t < truth.window(k).end; ++t) {
        a[t - 1] = ak;
        b[t - 1] = bk;
      }
    }
    const CoefficientSchedule c(a, b, s);
    const double cmin = theoretical_cumulative_gc(c, ChangePointSet::trivial(T)).value;
    const double amin = theoretical_average_gc(c, ChangePointSet::trivial(T)).value;
    const double cmax = theoretical_cumulative_gc(c, truth).value;
    const double amax = theoretical_average_gc(c, truth).value;
    for (int i = 0; i < 50; ++i) {
      const auto p = ChangePointSet::validate(testing::random_partition(T, 1, 8, gen), T, 1);
      const double cv = theoretical_cumulative_gc(c, p).value;
      const double av = theoretical_average_gc(c, p).value;
      CHECK(cv - cmin >= -1e-12);
      CHECK(av - amin >= -1e-12);
      CHECK(cmax - cv >= -1e-12);
      CHECK(amax - av >= -1e-12);
    }
  }
}

TEST_CASE("equal theta bounds average by cumulative") {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> n01;
  for (int rep = 0; rep < 100; ++rep) {
    const int T = std::uniform_int_distribution<int>(8, 60)(gen);
    const auto s = ChangePointSet::validate(testing::random_partition(T, 2, 5, gen), T, 2);
    std::vector<double> a(T), b(T), sig(T, 1.0);
    for (int t = 0; t < T; ++t) {
      a[t] = 0.4 * n01(gen);
      b[t] = 0.4 * n01(gen);
    }
    // Choose sigma2 per window so every theta_k hits the same target.
    const CoefficientSchedule probe(a, b, sig);
    const auto th = c1_theta(probe, s);
    const double target = *std::max_element(th.begin(), th.end()) + 0.5;
    for (int k = 0; k < s.num_windows(); ++k) {
      for (int t = s.window(k).begin; t < s.window(k).end; ++t) sig[t - 1] = 1.0 + target - th[k];
    }
    const CoefficientSchedule c(a, b, sig);
    REQUIRE(check_c1_condition(c, s, 1e-9));
    CHECK(theoretical_average_gc(c, s).value <= theoretical_cumulative_gc(c, s).value + 1e-12);
  }
}
