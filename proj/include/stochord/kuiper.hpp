#pragma once

// Bivariate Kuiper norm of signed grid measures and a Kuiper-nearest TP2
// approximation of a bivariate distribution.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stochord/distribution.hpp"

namespace stochord {

/// Signed measure on a rectangular grid, row-major. When built from integer
/// data, `exact` holds integer masses; the measure is exact[k] / denominator.
struct GridSignedMeasure {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> delta;
  std::optional<std::vector<std::int64_t>> exact;
  std::int64_t denominator = 1;

  std::size_t rows() const noexcept { return xs.size(); }
  std::size_t cols() const noexcept { return ys.size(); }
  double at(std::size_t i, std::size_t j) const { return delta[i * ys.size() + j]; }

  static GridSignedMeasure from_values(std::vector<double> xs, std::vector<double> ys,
                                       const std::vector<std::vector<double>>& rows);
  static GridSignedMeasure from_integers(std::vector<double> xs, std::vector<double> ys,
                                         const std::vector<std::vector<std::int64_t>>& rows);
  /// a - b on the merged grid. Exact when both carry integer weights.
  static GridSignedMeasure difference(const BivariateDist& a, const BivariateDist& b);
};

enum class KuiperMethod {
  brute,   ///< all rectangles through 2-D prefix sums, O(l^2 m^2)
  kadane,  ///< row-pair collapse plus maximum subarray, O(l^2 m)
};

std::string_view to_string(KuiperMethod method);
KuiperMethod parse_kuiper_method(std::string_view name);

/// max over index-aligned rectangles of |sigma(rectangle)|; 0 for the zero measure.
double kuiper_norm(const GridSignedMeasure& sigma, KuiperMethod method = KuiperMethod::kadane);

/// Integer numerator of the norm; requires `sigma.exact`.
std::int64_t kuiper_norm_exact(const GridSignedMeasure& sigma,
                               KuiperMethod method = KuiperMethod::kadane);

/// Embeds R on the interleaved grid of size (2l+1) x (2m+1): original atoms on
/// odd (1-based even) positions, zero-mass midpoints and outer sentinels between.
BivariateDist refine_grid(const BivariateDist& r);

struct ProjectionConfig {
  std::uint64_t seed = 42;
  int restarts = 8;
  int sweeps = 20;            ///< coordinate sweeps per restart
  double initial_step = 0.5;  ///< on the log scale; doubled on success, halved on failure
};

struct ProjectionTrace {
  int restarts = 0;
  long long iterations = 0;
  std::vector<double> best_per_restart;
  /// Objective after each sweep, per restart.
  std::vector<std::vector<double>> history;
};

struct ProjectionResult {
  BivariateDist distribution;
  double distance = 0.0;
  bool tp2_certified = false;
  /// "identity", "product-baseline" or "search".
  std::string source;
  ProjectionTrace trace;
  std::uint64_t seed = 0;
};

/// Certified-TP2 distribution on the refined grid with Kuiper distance no
/// larger than the product-of-marginals baseline. TP2 inputs come back
/// unchanged with distance 0. Deterministic for a given config.
ProjectionResult tp2_project(const BivariateDist& r_hat, const ProjectionConfig& config = {});

struct ConsistencyBound {
  double value = 0.0;            ///< proj_dist + true_dist
  bool within_guarantee = true;  ///< value <= 2 * true_dist
};

/// Throws std::invalid_argument on negative input and std::logic_error when
/// proj_dist <= true_dist yet the sum exceeds 2 * true_dist.
ConsistencyBound consistency_bound(double true_dist_to_emp, double proj_dist);

}  // namespace stochord
