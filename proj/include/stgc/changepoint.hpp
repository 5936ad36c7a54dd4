#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "stgc/causality.hpp"
#include "stgc/core.hpp"
#include "stgc/estimator.hpp"

namespace stgc {

struct SearchConfig {
  int m0 = 5;                        ///< largest number of windows tried
  std::vector<double> lambda_grid;   ///< trade-off values; empty means the default grid
  int l0 = kDefaultMinWindow;        ///< minimum window length
  int stride = 5;                    ///< spacing of candidate change-points
  long exhaustive_limit = 50000;     ///< enumerate every partition when at most this many exist

  /// {0.02, 0.04, ..., 1.0}
  [[nodiscard]] static std::vector<double> default_lambda_grid();
  [[nodiscard]] std::vector<double> lambdas() const;
  /// Throws InvalidConfig.
  void validate() const;
};

struct SearchObjective {
  double err = 0.0;
  double agc = 0.0;
  double cost = 0.0;
  double bic = 0.0;
  double lambda = 0.0;
  int m = 1;
  ChangePointSet changepoints;
};

struct SearchResult {
  SearchObjective best;                ///< global BIC minimizer
  std::vector<SearchObjective> table;  ///< one row per feasible (lambda, m) cell
};

/// (1/m) sum_k n_k det(Sigma_k), Sigma_k the ML residual covariance of window k.
[[nodiscard]] double partition_error(const TimeSeriesPair& pair, const ChangePointSet& s);

/// (1/2m) sum_k (F_k(x->y) + F_k(y->x)).
[[nodiscard]] double partition_agc(const TimeSeriesPair& pair, const ChangePointSet& s);

/// -2 sum_k LLF_k + 4 m log(T+1).
[[nodiscard]] double bic_from_llf(std::span<const double> llf, int T);
[[nodiscard]] double partition_bic(const TimeSeriesPair& pair, const ChangePointSet& s);

/// err + lambda / agc; infinite when agc < 1e-12.
[[nodiscard]] double search_cost(double err, double agc, double lambda) noexcept;

/// Minimizes the cost for every (lambda, m) cell under the minimum-length
/// constraint, then returns the cell whose partition has the lowest BIC.
/// Cells with few feasible partitions are enumerated exhaustively; larger
/// ones use greedy insertion followed by +/-stride coordinate descent.
[[nodiscard]] SearchResult search_optimal_partition(const TimeSeriesPair& pair, const SearchConfig& cfg);

/// Candidate change-points 1 + j*stride that leave room for l0 at both ends.
[[nodiscard]] std::vector<int> candidate_points(int T, int stride, int l0);

/// Number of feasible m-window partitions over the candidate grid, saturating
/// at `cap`.
[[nodiscard]] long count_partitions(int T, std::span<const int> candidates, int m, int l0, long cap);

struct EqualWindowRow {
  int length = 0;
  ChangePointSet changepoints;
  std::vector<double> llf;
  double bic = 0.0;
  std::array<GcEstimate, 2> average;     ///< indexed by Direction
  std::array<GcEstimate, 2> cumulative;  ///< indexed by Direction
};

/// Uniform partitions of each length, with BIC and both GC flavors.
[[nodiscard]] std::vector<EqualWindowRow> equal_window_bic_scan(const TimeSeriesPair& pair,
                                                                std::span<const int> lengths,
                                                                int l0 = kDefaultMinWindow,
                                                                const AverageGcOptions& opts = {});

struct OptimalGc {
  SearchResult search;
  std::array<GcEstimate, 2> average;     ///< indexed by Direction
  std::array<GcEstimate, 2> cumulative;  ///< indexed by Direction
};

/// Search, then both GC flavors in both directions on the selected partition.
[[nodiscard]] OptimalGc optimal_gc(const TimeSeriesPair& pair, const SearchConfig& cfg,
                                   const AverageGcOptions& opts = {});

[[nodiscard]] constexpr std::size_t index_of(Direction d) noexcept {
  return d == Direction::x_to_y ? 0 : 1;
}

}  // namespace stgc
