#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stgc/changepoint.hpp"
#include "stgc/estimator.hpp"
#include "support.hpp"

namespace testing {

using namespace stgc;

struct OracleCell {
  std::vector<int> points;
  double cost = std::numeric_limits<double>::infinity();
};

inline double oracle_err(const TimeSeriesPair& p, const ChangePointSet& s) {
  double acc = 0;
  for (const auto& w : s.windows()) {
    const auto ox = ols2(p.x(), p.y(), w.begin, w.end);
    const auto oy = ols2(p.y(), p.x(), w.begin, w.end);
    double sxy = 0;
    for (int t = w.begin; t < w.end; ++t) {
      sxy += (p.x()[t] - ox.a * p.x()[t - 1] - ox.b * p.y()[t - 1]) *
             (p.y()[t] - oy.a * p.y()[t - 1] - oy.b * p.x()[t - 1]);
    }
    const double n = w.length();
    acc += n * ((ox.rss_full / n) * (oy.rss_full / n) - (sxy / n) * (sxy / n));
  }
  return acc / s.num_windows();
}

inline double oracle_agc(const TimeSeriesPair& p, const ChangePointSet& s) {
  double acc = 0;
  for (const auto& w : s.windows()) {
    const auto ox = ols2(p.x(), p.y(), w.begin, w.end);
    const auto oy = ols2(p.y(), p.x(), w.begin, w.end);
    acc += std::log(ox.rss_restricted / ox.rss_full) + std::log(oy.rss_restricted / oy.rss_full);
  }
  return acc / (2.0 * s.num_windows());
}

// Every feasible partition with m windows whose interior points lie on the
// candidate grid, by nested loops.
inline std::vector<std::vector<int>> enumerate(int T, int m, int l0, int stride) {
  std::vector<std::vector<int>> out;
  const auto ok = [&](int t) { return (t - 1) % stride == 0; };
  if (m == 1) return {{1, T + 1}};
  for (int a = 1 + l0; a <= T + 1 - l0; ++a) {
    if (!ok(a)) continue;
    if (m == 2) {
      out.push_back({1, a, T + 1});
      continue;
    }
    for (int b = a + l0; b <= T + 1 - l0; ++b) {
      if (ok(b)) out.push_back({1, a, b, T + 1});
    }
  }
  return out;
}

struct OracleSearch {
  std::vector<std::vector<OracleCell>> cells;  // [lambda][m-1]
  std::vector<int> best;
  double best_bic = std::numeric_limits<double>::infinity();
};

inline OracleSearch brute_force(const TimeSeriesPair& p, const SearchConfig& cfg) {
  const auto lambdas = cfg.lambdas();
  OracleSearch o;
  o.cells.assign(lambdas.size(), std::vector<OracleCell>(cfg.m0));
  for (int m = 1; m <= cfg.m0; ++m) {
    for (const auto& pts : enumerate(p.T(), m, cfg.l0, cfg.stride)) {
      const auto s = ChangePointSet::validate(pts, p.T(), cfg.l0);
      const double e = oracle_err(p, s), g = oracle_agc(p, s);
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double c = g < 1e-12 ? std::numeric_limits<double>::infinity() : e + lambdas[i] / g;
        if (c < o.cells[i][m - 1].cost) o.cells[i][m - 1] = {pts, c};
      }
    }
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (int m = 1; m <= cfg.m0; ++m) {
      const auto& cell = o.cells[i][m - 1];
      if (cell.points.empty() || !std::isfinite(cell.cost)) continue;
      const auto s = ChangePointSet::validate(cell.points, p.T(), cfg.l0);
      const double bic = -2.0 * fit_tvmvar(p, s, Direction::x_to_y).total_llf() + 4.0 * m * std::log(p.T() + 1.0);
      if (bic < o.best_bic) {
        o.best_bic = bic;
        o.best = cell.points;
      }
    }
  }
  return o;
}

}  // namespace testing
