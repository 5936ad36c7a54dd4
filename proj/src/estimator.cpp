#include "stgc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "stgc/stats.hpp"

namespace stgc {

namespace {

constexpr double kPinvCutoff = 1e-10;
constexpr double kMinDet = 1e-300;

std::vector<double> standardized(std::span<const double> v) {
  const double m = mean(v);
  const double var = variance(v);
  if (!(var > 0.0)) throw Error(ErrorCode::DegenerateInput, "constant series cannot be standardized");
  const double inv_sd = 1.0 / std::sqrt(var);
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [&](double e) { return (e - m) * inv_sd; });
  return out;
}

// Solves G beta = r with G symmetric PSD 2x2, dropping directions whose
// singular value (sqrt of eigenvalue) falls below the cutoff.
Eigen::Vector2d pinv_solve(const Eigen::Matrix2d& gram, const Eigen::Vector2d& rhs) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(gram);
  const Eigen::Vector2d lambda = eig.eigenvalues().cwiseMax(0.0);
  const double smax = std::sqrt(lambda.maxCoeff());
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (int i = 0; i < 2; ++i) {
    const double s = std::sqrt(lambda(i));
    if (smax > 0.0 && s > kPinvCutoff * smax) {
      const Eigen::Vector2d v = eig.eigenvectors().col(i);
      out += v * (v.dot(rhs) / lambda(i));
    }
  }
  return out;
}

double scalar_solve(double gram, double rhs) {
  return gram > 0.0 ? rhs / gram : 0.0;
}

}  // namespace

TimeSeriesPair standardize(const TimeSeriesPair& pair) {
  return TimeSeriesPair(standardized(pair.x()), standardized(pair.y()), pair.dt(), pair.label_x(),
                        pair.label_y());
}

TimeSeriesPair orthogonalize(const TimeSeriesPair& pair) {
  const TimeSeriesPair s = standardize(pair);
  const auto x = s.x();
  const auto y = s.y();
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) c += x[i] * y[i];
  c /= static_cast<double>(x.size());
  if (std::fabs(c) >= 1.0 - 1e-9) {
    throw Error(ErrorCode::NearCollinear, "|corr(x, y)| = " + std::to_string(std::fabs(c)));
  }
  const double scale = 1.0 / std::sqrt(1.0 - c * c);
  std::vector<double> z(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = (y[i] - c * x[i]) * scale;
  return TimeSeriesPair(std::vector<double>(x.begin(), x.end()), std::move(z), pair.dt(),
                        pair.label_x(), pair.label_y());
}

double bivariate_llf(int n_obs, double det_cov) noexcept {
  const double n = n_obs;
  return -0.5 * n * (2.0 * std::log(2.0 * std::numbers::pi) + std::log(std::max(det_cov, kMinDet)) + 2.0);
}

double TvMvarFit::total_llf() const noexcept {
  return std::accumulate(llf.begin(), llf.end(), 0.0);
}

TvMvarFit fit_tvmvar(const TimeSeriesPair& pair, const ChangePointSet& s, Direction direction) {
  if (s.T() != pair.T()) {
    throw Error(ErrorCode::LengthMismatch, "change-point set covers T = " + std::to_string(s.T()) +
                                               ", series has T = " + std::to_string(pair.T()));
  }
  const auto x = pair.x();
  const auto y = pair.y();
  const bool to_y = direction == Direction::x_to_y;

  TvMvarFit fit{s, direction, {}, {}, {}, {}, {}, {}, {}, {}};
  const int m = s.num_windows();
  fit.a_bar.reserve(m);
  fit.b_bar.reserve(m);
  fit.a_tilde.reserve(m);
  fit.rss_full.reserve(m);
  fit.rss_restricted.reserve(m);
  fit.llf.reserve(m);
  fit.n_obs.reserve(m);
  fit.residual_cov.reserve(m);

  for (const Window w : s.windows()) {
    const int n = w.length();
    if (n < 3) {
      throw Error(ErrorCode::WindowTooShort, "window [" + std::to_string(w.begin) + ", " +
                                                 std::to_string(w.end) + ") has fewer than 3 pairs");
    }
    // Regression pair t -> t+1 reads samples at 0-based indices t-1 and t.
    const auto first = static_cast<std::size_t>(w.begin - 1);
    Eigen::MatrixX2d design(n, 2);
    Eigen::MatrixX2d next(n, 2);
    for (int i = 0; i < n; ++i) {
      const std::size_t t = first + static_cast<std::size_t>(i);
      design(i, 0) = x[t];
      design(i, 1) = y[t];
      next(i, 0) = x[t + 1];
      next(i, 1) = y[t + 1];
    }
    const Eigen::Matrix2d gram = design.transpose() * design;
    const Eigen::Vector2d beta_x = pinv_solve(gram, design.transpose() * next.col(0));
    const Eigen::Vector2d beta_y = pinv_solve(gram, design.transpose() * next.col(1));
    const Eigen::VectorXd ex = next.col(0) - design * beta_x;
    const Eigen::VectorXd ey = next.col(1) - design * beta_y;

    const double sxx = ex.squaredNorm() / n;
    const double syy = ey.squaredNorm() / n;
    const double sxy = ex.dot(ey) / n;
    fit.residual_cov.push_back({sxx, sxy, syy});
    fit.llf.push_back(bivariate_llf(n, sxx * syy - sxy * sxy));
    fit.n_obs.push_back(n);

    const int own_col = to_y ? 1 : 0;
    const Eigen::VectorXd own = design.col(own_col);
    const Eigen::VectorXd target = next.col(own_col);
    const Eigen::Vector2d& beta = to_y ? beta_y : beta_x;
    fit.a_bar.push_back(beta(own_col));
    fit.b_bar.push_back(beta(1 - own_col));
    fit.rss_full.push_back(to_y ? ey.squaredNorm() : ex.squaredNorm());

    const double a_tilde = scalar_solve(own.squaredNorm(), own.dot(target));
    fit.a_tilde.push_back(a_tilde);
    fit.rss_restricted.push_back((target - a_tilde * own).squaredNorm());
  }
  return fit;
}

MomentTable::MomentTable(const TimeSeriesPair& pair)
    : T_(pair.T()), prefix_(static_cast<std::size_t>(pair.T()) + 1) {
  const auto x = pair.x();
  const auto y = pair.y();
  prefix_[0].fill(0.0);
  for (std::size_t t = 0; t < static_cast<std::size_t>(T_); ++t) {
    const double xt = x[t];
    const double yt = y[t];
    const double nx = x[t + 1];
    const double ny = y[t + 1];
    auto& row = prefix_[t + 1];
    const auto& prev = prefix_[t];
    row[XX] = prev[XX] + xt * xt;
    row[XY] = prev[XY] + xt * yt;
    row[YY] = prev[YY] + yt * yt;
    row[XNX] = prev[XNX] + xt * nx;
    row[YNX] = prev[YNX] + yt * nx;
    row[XNY] = prev[XNY] + xt * ny;
    row[YNY] = prev[YNY] + yt * ny;
    row[NXNX] = prev[NXNX] + nx * nx;
    row[NYNY] = prev[NYNY] + ny * ny;
    row[NXNY] = prev[NXNY] + nx * ny;
  }
}

WindowStats MomentTable::stats(Window w) const {
  const auto& hi = prefix_.at(static_cast<std::size_t>(w.end - 1));
  const auto& lo = prefix_.at(static_cast<std::size_t>(w.begin - 1));
  auto sum = [&](Product p) { return hi[p] - lo[p]; };

  Eigen::Matrix2d gram;
  gram << sum(XX), sum(XY), sum(XY), sum(YY);
  const Eigen::Vector2d rx(sum(XNX), sum(YNX));
  const Eigen::Vector2d ry(sum(XNY), sum(YNY));
  const Eigen::Vector2d bx = pinv_solve(gram, rx);
  const Eigen::Vector2d by = pinv_solve(gram, ry);

  WindowStats out;
  out.n_obs = w.length();
  out.rss_full_x = std::max(0.0, sum(NXNX) - bx.dot(rx));
  out.rss_full_y = std::max(0.0, sum(NYNY) - by.dot(ry));
  out.rss_restricted_x =
      std::max(0.0, sum(NXNX) - (sum(XX) > 0.0 ? sum(XNX) * sum(XNX) / sum(XX) : 0.0));
  out.rss_restricted_y =
      std::max(0.0, sum(NYNY) - (sum(YY) > 0.0 ? sum(YNY) * sum(YNY) / sum(YY) : 0.0));
  // Restricted never fits better than full; clamp rounding noise.
  out.rss_restricted_x = std::max(out.rss_restricted_x, out.rss_full_x);
  out.rss_restricted_y = std::max(out.rss_restricted_y, out.rss_full_y);

  const double n = out.n_obs;
  const double cxy = (sum(NXNY) - by.dot(rx)) / n;
  const double det = (out.rss_full_x / n) * (out.rss_full_y / n) - cxy * cxy;
  out.cov_det = std::max(det, 0.0);
  out.llf = bivariate_llf(out.n_obs, out.cov_det);
  return out;
}

}  // namespace stgc
