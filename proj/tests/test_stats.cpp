#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "stgc/error.hpp"
#include "stgc/rng.hpp"
#include "stgc/stats.hpp"
#include "support.hpp"

using namespace stgc;

namespace {

double f_density(double x, double d1, double d2) {
  const double lognum = 0.5 * d1 * std::log(d1) + 0.5 * d2 * std::log(d2) + (0.5 * d1 - 1.0) * std::log(x);
  const double logden = 0.5 * (d1 + d2) * std::log(d2 + d1 * x) + std::lgamma(0.5 * d1) + std::lgamma(0.5 * d2) -
                        std::lgamma(0.5 * (d1 + d2));
  return std::exp(lognum - logden);
}

double f_cdf_quadrature(double x, double d1, double d2) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([&](double u) { return f_density(u, d1, d2); }, 0.0, x);
}

}  // namespace

TEST_CASE("f_cdf at zero") {
  CHECK(f_cdf(0.0, {1, 10}) == 0.0);
  CHECK(f_cdf(0.0, {5, 3}) == 0.0);
  CHECK(f_sf(0.0, {5, 3}) == 1.0);
}

TEST_CASE("f_cdf matches quadrature of the density") {
  CHECK(f_cdf(4.96, {1, 10}) == doctest::Approx(0.95).epsilon(5e-3));
  CHECK(f_cdf(4.96, {1, 10}) == doctest::Approx(f_cdf_quadrature(4.96, 1, 10)).epsilon(5e-3));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ux(0.05, 8.0);
  std::uniform_int_distribution<int> ud1(1, 40), ud2(3, 2000);
  for (int i = 0; i < 60; ++i) {
    const double x = ux(gen);
    const double d1 = ud1(gen), d2 = ud2(gen);
    CHECK(f_cdf(x, {d1, d2}) == doctest::Approx(f_cdf_quadrature(x, d1, d2)).epsilon(5e-3));
  }
}

TEST_CASE("F(1, d2) equals the squared t") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> ux(0.0, 10.0);
  for (const double d2 : {1.0, 3.0, 10.0, 97.0, 1197.0, 2000.0}) {
    const boost::math::students_t t(d2);
    for (int i = 0; i < 20; ++i) {
      const double x = ux(gen);
      const double oracle = 1.0 - 2.0 * boost::math::cdf(t, -std::sqrt(x));
      CHECK(std::abs(f_cdf(x, {1, d2}) - oracle) < 1e-10);
      CHECK(std::abs(f_cdf(x, {1, d2}) - (2.0 * student_t_cdf(std::sqrt(x), d2) - 1.0)) < 1e-10);
    }
  }
}

TEST_CASE("f_cdf is monotone and reaches one") {
  for (const FDistParams p : {FDistParams{1, 10}, FDistParams{5, 1190}, FDistParams{40, 2000}}) {
    double prev = 0.0;
    for (double x = 0.0; x < 20.0; x += 0.05) {
      const double c = f_cdf(x, p);
      CHECK(c >= prev);
      prev = c;
    }
    CHECK(f_cdf(1e6, p) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f_cdf(2.0, p) + f_sf(2.0, p) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("invalid dof") {
  CHECK_THROWS_AS((void)f_cdf(1.0, {0.0, 3.0}), Error);
  CHECK_THROWS_AS((void)f_sf(1.0, {1.0, -1.0}), Error);
}

TEST_CASE("pearson_correlation") {
  const std::vector<double> u{1, 3, 2, 5, 4, 7};
  std::vector<double> neg(u.size());
  std::transform(u.begin(), u.end(), neg.begin(), [](double v) { return -v; });
  CHECK(pearson_correlation(u, u) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson_correlation(u, neg) == doctest::Approx(-1.0).epsilon(1e-15));

  const auto a = testing::white_noise(50, 1);
  const auto b = testing::white_noise(50, 2);
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / 50;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / 50;
  double sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < 50; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  CHECK(std::abs(pearson_correlation(a, b) - sab / std::sqrt(saa * sbb)) < 1e-12);

  const std::vector<double> flat(6, 2.0);
  try {
    (void)pearson_correlation(u, flat);
    FAIL("expected DegenerateInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateInput);
  }
}

TEST_CASE("rng determinism and stream separation") {
  Rng a = seeded_rng(1, 0), b = seeded_rng(1, 0), c = seeded_rng(1, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.normal(), vb = b.normal(), vc = c.normal();
    CHECK(va == vb);
    differs = differs || va != vc;
  }
  CHECK(differs);
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}

TEST_CASE("rng integer sequence is pinned") {
  Rng r(42, 54);
  const std::uint64_t first = r.next_u64();
  Rng again(42, 54);
  CHECK(again.next_u64() == first);
}

TEST_CASE("normal draws obey the CLT bounds") {
  Rng r = seeded_rng(1, 0);
  const int n = 100000;
  std::vector<double> v(n);
  for (auto& e : v) e = r.normal();
  CHECK(std::abs(mean(v)) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(variance(v) - 1.0) < 0.02);
}

TEST_CASE("uniform draws pass KS") {
  Rng r = seeded_rng(9, 2);
  std::vector<double> v(5000);
  for (auto& e : v) e = r.uniform();
  CHECK(ks_uniform_pvalue(v) > 0.01);
  std::vector<double> skewed(5000);
  for (auto& e : skewed) e = std::pow(r.uniform(), 2);
  CHECK(ks_uniform_pvalue(skewed) < 1e-6);
}

TEST_CASE("gamma and beta moments") {
  Rng r = seeded_rng(3, 7);
  const int n = 100000;
  double sg = 0, sb = 0;
  for (int i = 0; i < n; ++i) {
    sg += r.gamma(0.5);
    sb += r.beta(48.5, 0.5);
  }
  CHECK(sg / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sb / n == doctest::Approx(48.5 / 49.0).epsilon(1e-3));
}

TEST_CASE("quantile interpolates") {
  CHECK(quantile({3, 1, 2, 4}, 0.0) == 1.0);
  CHECK(quantile({3, 1, 2, 4}, 1.0) == 4.0);
  CHECK(quantile({3, 1, 2, 4}, 0.5) == doctest::Approx(2.5));
}
