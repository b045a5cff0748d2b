#include "stochord/fixtures.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stochord::fixtures {

namespace {

UnivariateDist from_density(const std::vector<double>& pts, double (*pdf)(double)) {
  std::vector<double> p;
  for (double y : pts) p.push_back(pdf(y));
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return UnivariateDist::from_probs(pts, std::move(p));
}

double normal_1_1(double y) { return std::exp(-0.5 * (y - 1.0) * (y - 1.0)); }
double normal_15_6(double y) { return std::exp(-(y - 1.5) * (y - 1.5) / 12.0); }
double gamma_1_1(double y) { return std::exp(-y); }
double gamma_15_2(double y) { return std::sqrt(y) * std::exp(-y / 2.0); }

}  // namespace

std::vector<double> grid_points(const Grid& grid) {
  if (!(grid.step > 0.0) || !(grid.lo <= grid.hi)) throw std::invalid_argument("invalid grid");
  const auto count = static_cast<long>(std::floor((grid.hi - grid.lo) / grid.step + 0.5)) + 1;
  std::vector<double> out;
  for (long i = 0; i < count; ++i) out.push_back(grid.lo + static_cast<double>(i) * grid.step);
  return out;
}

UnivariatePair gauss_pair(const Grid& grid) {
  const auto pts = grid_points(grid);
  return {from_density(pts, normal_1_1), from_density(pts, normal_15_6)};
}

UnivariatePair gamma_pair(const Grid& grid) {
  const auto pts = grid_points(grid);
  if (pts.front() <= 0.0) throw std::invalid_argument("gamma grid must be positive");
  return {from_density(pts, gamma_1_1), from_density(pts, gamma_15_2)};
}

UnivariatePair odc_counterexample(int n) {
  if (n < 1) throw std::invalid_argument("odc-counterexample needs n >= 1");
  std::vector<double> pts;
  for (int i = 0; i < n; ++i) pts.push_back((i + 0.5) / n);
  return {UnivariateDist::from_weights({0.0, 1.0}, {1, 1}),
          UnivariateDist::from_weights(std::move(pts), std::vector<std::int64_t>(n, 1))};
}

BivariateDist unif_delta_kernel(int n) {
  if (n < 3) throw std::invalid_argument("unif-delta-kernel needs n >= 3");
  std::vector<double> pts;
  for (int i = 0; i < n; ++i) pts.push_back((i + 0.5) / n);
  auto lower = [&](int i) { return 3.0 * pts[i] <= 1.0; };
  auto upper = [&](int i) { return 3.0 * pts[i] >= 2.0; };
  int n_lower = 0;
  int n_upper = 0;
  for (int i = 0; i < n; ++i) {
    n_lower += lower(i);
    n_upper += upper(i);
  }
  // Each row carries weight n_lower * n_upper so that all rows weigh the same.
  const std::int64_t row_weight = static_cast<std::int64_t>(n_lower) * n_upper;
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (lower(i) && lower(j)) rows[i][j] = row_weight / n_lower;
      if (upper(i) && upper(j)) rows[i][j] = row_weight / n_upper;
    }
    if (!lower(i) && !upper(i)) rows[i][i] = row_weight;
  }
  return BivariateDist::from_weights(pts, pts, rows);
}

BivariateDist diag_uniform(int k) {
  if (k < 1) throw std::invalid_argument("diag-uniform needs k >= 1");
  std::vector<double> pts;
  std::vector<std::vector<std::int64_t>> rows(k, std::vector<std::int64_t>(k, 0));
  for (int i = 0; i < k; ++i) {
    pts.push_back(i + 1.0);
    rows[i][i] = 1;
  }
  return BivariateDist::from_weights(pts, pts, rows);
}

BivariateDist antidiag() { return BivariateDist::from_weights({1, 2}, {1, 2}, {{0, 1}, {1, 0}}); }

BivariateDist tp2_5x5() {
  std::vector<double> pts{1, 2, 3, 4, 5};
  std::vector<std::vector<std::int64_t>> rows(5, std::vector<std::int64_t>(5));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      rows[i][j] = std::llround(1000.0 * std::exp(-0.5 * (i - j) * (i - j)));
    }
  }
  return BivariateDist::from_weights(pts, pts, rows);
}

std::vector<std::string> names() {
  return {"gauss-pair", "gamma-pair", "odc-counterexample", "unif-delta-kernel",
          "diag-uniform", "antidiag", "tp2-5x5"};
}

}  // namespace stochord::fixtures
