#include "stgc/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace stgc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinAgc = 1e-12;

struct Score {
  double weighted_det = 0.0;  // sum n_k det(Sigma_k)
  double gc_sum = 0.0;        // sum of both-direction local GC
  double llf = 0.0;

  Score& operator+=(const Score& o) {
    weighted_det += o.weighted_det;
    gc_sum += o.gc_sum;
    llf += o.llf;
    return *this;
  }
};

class Evaluator {
 public:
  Evaluator(const TimeSeriesPair& pair, const SearchConfig& cfg)
      : table_(pair), T_(pair.T()), l0_(cfg.l0), stride_(cfg.stride), lambdas_(cfg.lambdas()) {}

  [[nodiscard]] int T() const { return T_; }
  [[nodiscard]] int l0() const { return l0_; }
  [[nodiscard]] int stride() const { return stride_; }
  [[nodiscard]] const std::vector<double>& lambdas() const { return lambdas_; }

  [[nodiscard]] Score window(int begin, int end) const {
    const WindowStats st = table_.stats({begin, end});
    Score s;
    s.weighted_det = st.n_obs * st.cov_det;
    s.gc_sum = gc_log_ratio(st.rss_restricted_x, st.rss_full_x) +
               gc_log_ratio(st.rss_restricted_y, st.rss_full_y);
    s.llf = st.llf;
    return s;
  }

  [[nodiscard]] Score partition(const std::vector<int>& points) const {
    Score s;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) s += window(points[k], points[k + 1]);
    return s;
  }

  [[nodiscard]] static double err(const Score& s, int m) { return s.weighted_det / m; }
  [[nodiscard]] static double agc(const Score& s, int m) { return s.gc_sum / (2.0 * m); }

  [[nodiscard]] double cost(const std::vector<int>& points, double lambda) const {
    const int m = static_cast<int>(points.size()) - 1;
    const Score s = partition(points);
    return search_cost(err(s, m), agc(s, m), lambda);
  }

  [[nodiscard]] bool feasible(const std::vector<int>& points) const {
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      if (points[k + 1] - points[k] < l0_) return false;
    }
    return true;
  }

 private:
  MomentTable table_;
  int T_;
  int l0_;
  int stride_;
  std::vector<double> lambdas_;
};

struct Cell {
  std::vector<int> points;
  double cost = kInf;
};

// Best partition with m windows for every lambda, by full enumeration.
std::vector<Cell> exhaustive_cells(const Evaluator& ev, const std::vector<int>& candidates, int m) {
  const std::vector<double>& lambdas = ev.lambdas();
  std::vector<Cell> best(lambdas.size());
  std::vector<int> points{1};
  const int end = ev.T() + 1;

  auto visit = [&](auto&& self, std::size_t from, int remaining, const Score& acc) -> void {
    const int last = points.back();
    if (remaining == 0) {
      if (end - last < ev.l0()) return;
      Score total = acc;
      total += ev.window(last, end);
      const double e = Evaluator::err(total, m);
      const double g = Evaluator::agc(total, m);
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double c = search_cost(e, g, lambdas[i]);
        if (c < best[i].cost) {
          best[i].cost = c;
          best[i].points = points;
          best[i].points.push_back(end);
        }
      }
      return;
    }
    for (std::size_t j = from; j < candidates.size(); ++j) {
      const int t = candidates[j];
      if (t - last < ev.l0()) continue;
      // Leave room for the remaining windows.
      if (end - t < remaining * ev.l0()) break;
      Score next = acc;
      next += ev.window(last, t);
      points.push_back(t);
      self(self, j + 1, remaining - 1, next);
      points.pop_back();
    }
  };
  visit(visit, 0, m - 1, Score{});
  return best;
}

// Coordinate descent: shift single interior points by +/-stride while the
// cost strictly decreases.
void refine(const Evaluator& ev, Cell& cell, double lambda) {
  for (int pass = 0; pass < 10000; ++pass) {
    bool improved = false;
    for (std::size_t i = 1; i + 1 < cell.points.size(); ++i) {
      for (const int delta : {-ev.stride(), ev.stride()}) {
        std::vector<int> trial = cell.points;
        trial[i] += delta;
        if (!ev.feasible(trial)) continue;
        const double c = ev.cost(trial, lambda);
        if (c < cell.cost) {
          cell.points = std::move(trial);
          cell.cost = c;
          improved = true;
        }
      }
    }
    if (!improved) return;
  }
}

// Adds the single candidate that most reduces the cost, then refines.
std::optional<Cell> greedy_step(const Evaluator& ev, const std::vector<int>& candidates,
                                const std::vector<int>& base, double lambda) {
  std::optional<Cell> best;
  double best_err = kInf;
  const int m = static_cast<int>(base.size());
  for (const int t : candidates) {
    if (std::binary_search(base.begin(), base.end(), t)) continue;
    std::vector<int> trial = base;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), t), t);
    if (!ev.feasible(trial)) continue;
    const Score s = ev.partition(trial);
    const double e = Evaluator::err(s, m);
    const double c = search_cost(e, Evaluator::agc(s, m), lambda);
    // With an infinite cost everywhere, keep the lowest-error partition so
    // larger m can still be explored.
    if (!best || c < best->cost || (std::isinf(c) && std::isinf(best->cost) && e < best_err)) {
      best = Cell{std::move(trial), c};
      best_err = e;
    }
  }
  if (best && std::isfinite(best->cost)) refine(ev, *best, lambda);
  return best;
}

}  // namespace

std::vector<double> SearchConfig::default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(0.02 * i);
  return grid;
}

std::vector<double> SearchConfig::lambdas() const {
  return lambda_grid.empty() ? default_lambda_grid() : lambda_grid;
}

void SearchConfig::validate() const {
  if (m0 < 1) throw Error(ErrorCode::InvalidConfig, "m0 must be at least 1");
  if (l0 < 4) throw Error(ErrorCode::InvalidConfig, "l0 must be at least 4");
  if (stride < 1) throw Error(ErrorCode::InvalidConfig, "stride must be at least 1");
  if (exhaustive_limit < 0) throw Error(ErrorCode::InvalidConfig, "exhaustive_limit must be nonnegative");
  for (const double l : lambda_grid) {
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidConfig, "lambda values must be positive");
  }
}

double search_cost(double err, double agc, double lambda) noexcept {
  if (!(agc >= kMinAgc)) return kInf;
  return err + lambda / agc;
}

double bic_from_llf(std::span<const double> llf, int T) {
  const double total = std::accumulate(llf.begin(), llf.end(), 0.0);
  return -2.0 * total + 4.0 * static_cast<double>(llf.size()) * std::log(T + 1.0);
}

double partition_error(const TimeSeriesPair& pair, const ChangePointSet& s) {
  const TvMvarFit fit = fit_tvmvar(pair, s, Direction::x_to_y);
  double acc = 0.0;
  for (int k = 0; k < fit.num_windows(); ++k) {
    const auto& c = fit.residual_cov[static_cast<std::size_t>(k)];
    acc += fit.n_obs[static_cast<std::size_t>(k)] * std::max(c[0] * c[2] - c[1] * c[1], 0.0);
  }
  return acc / fit.num_windows();
}

double partition_agc(const TimeSeriesPair& pair, const ChangePointSet& s) {
  const TvMvarFit xy = fit_tvmvar(pair, s, Direction::x_to_y);
  const TvMvarFit yx = fit_tvmvar(pair, s, Direction::y_to_x);
  double acc = 0.0;
  for (int k = 0; k < s.num_windows(); ++k) acc += local_gc(xy, k).value + local_gc(yx, k).value;
  return acc / (2.0 * s.num_windows());
}

double partition_bic(const TimeSeriesPair& pair, const ChangePointSet& s) {
  const TvMvarFit fit = fit_tvmvar(pair, s, Direction::x_to_y);
  return bic_from_llf(fit.llf, fit.T());
}

std::vector<int> candidate_points(int T, int stride, int l0) {
  std::vector<int> out;
  for (int t = 1 + stride; t <= T + 1 - l0; t += stride) {
    if (t - 1 >= l0) out.push_back(t);
  }
  return out;
}

long count_partitions(int T, std::span<const int> candidates, int m, int l0, long cap) {
  if (m == 1) return T >= l0 ? 1 : 0;
  const std::size_t n = candidates.size();
  std::vector<long> ways(n, 0);
  for (std::size_t i = 0; i < n; ++i) ways[i] = candidates[i] - 1 >= l0 ? 1 : 0;
  for (int j = 2; j < m; ++j) {
    std::vector<long> next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      long acc = 0;
      for (std::size_t p = 0; p < i; ++p) {
        if (candidates[i] - candidates[p] >= l0) acc = std::min(cap, acc + ways[p]);
      }
      next[i] = acc;
    }
    ways = std::move(next);
  }
  long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (T + 1 - candidates[i] >= l0) total = std::min(cap, total + ways[i]);
  }
  return total;
}

SearchResult search_optimal_partition(const TimeSeriesPair& pair, const SearchConfig& cfg) {
  cfg.validate();
  const int T = pair.T();
  if (T < cfg.l0) {
    throw Error(ErrorCode::InfeasibleConstraint,
                "T = " + std::to_string(T) + " is shorter than l0 = " + std::to_string(cfg.l0));
  }
  const Evaluator ev(pair, cfg);
  const std::vector<double>& lambdas = ev.lambdas();
  const std::vector<int> candidates = candidate_points(T, cfg.stride, cfg.l0);

  // cells[m-1][i]: best partition with m windows for lambda i.
  std::vector<std::vector<std::optional<Cell>>> cells;
  for (int m = 1; m <= cfg.m0; ++m) {
    std::vector<std::optional<Cell>> row(lambdas.size());
    if (m == 1) {
      const std::vector<int> trivial{1, T + 1};
      for (std::size_t i = 0; i < lambdas.size(); ++i) row[i] = Cell{trivial, ev.cost(trivial, lambdas[i])};
    } else if (T >= m * cfg.l0) {
      const long count = count_partitions(T, candidates, m, cfg.l0, cfg.exhaustive_limit + 1);
      if (count > 0 && count <= cfg.exhaustive_limit) {
        std::vector<Cell> best = exhaustive_cells(ev, candidates, m);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
          if (!best[i].points.empty()) row[i] = std::move(best[i]);
        }
      } else if (count > 0) {
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
          const auto& base = cells.back()[i];
          if (base) row[i] = greedy_step(ev, candidates, base->points, lambdas[i]);
        }
      }
    }
    cells.push_back(std::move(row));
  }

  SearchResult result;
  std::optional<std::size_t> best_index;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (int m = 1; m <= cfg.m0; ++m) {
      const auto& cell = cells[static_cast<std::size_t>(m - 1)][i];
      if (!cell || !std::isfinite(cell->cost)) continue;
      const Score s = ev.partition(cell->points);
      SearchObjective obj{Evaluator::err(s, m),
                          Evaluator::agc(s, m),
                          cell->cost,
                          -2.0 * s.llf + 4.0 * m * std::log(T + 1.0),
                          lambdas[i],
                          m,
                          ChangePointSet::validate(cell->points, T, cfg.l0)};
      result.table.push_back(std::move(obj));
      if (!best_index || result.table.back().bic < result.table[*best_index].bic) {
        best_index = result.table.size() - 1;
      }
    }
  }
  if (!best_index) {
    throw Error(ErrorCode::DegenerateAgc, "every candidate partition has zero average causality");
  }
  result.best = result.table[*best_index];
  return result;
}

std::vector<EqualWindowRow> equal_window_bic_scan(const TimeSeriesPair& pair, std::span<const int> lengths,
                                                  int l0, const AverageGcOptions& opts) {
  std::vector<EqualWindowRow> rows;
  for (const int length : lengths) {
    const ChangePointSet s = ChangePointSet::uniform(pair.T(), length, l0);
    const TvMvarFit xy = fit_tvmvar(pair, s, Direction::x_to_y);
    const TvMvarFit yx = fit_tvmvar(pair, s, Direction::y_to_x);
    rows.push_back(EqualWindowRow{length,
                                  s,
                                  xy.llf,
                                  bic_from_llf(xy.llf, pair.T()),
                                  {average_gc(xy, opts), average_gc(yx, opts)},
                                  {cumulative_gc(xy), cumulative_gc(yx)}});
  }
  return rows;
}

OptimalGc optimal_gc(const TimeSeriesPair& pair, const SearchConfig& cfg, const AverageGcOptions& opts) {
  OptimalGc out{search_optimal_partition(pair, cfg), {}, {}};
  for (const Direction d : {Direction::x_to_y, Direction::y_to_x}) {
    const TvMvarFit fit = fit_tvmvar(pair, out.search.best.changepoints, d);
    out.average[index_of(d)] = average_gc(fit, opts);
    out.cumulative[index_of(d)] = cumulative_gc(fit);
  }
  return out;
}

}  // namespace stgc
