#pragma once

// Discretized example distributions. Continuous laws are evaluated on a grid
// and renormalized; the library never integrates densities.

#include <string>
#include <vector>

#include "stochord/distribution.hpp"

namespace stochord::fixtures {

struct UnivariatePair {
  UnivariateDist q1;
  UnivariateDist q2;
};

struct Grid {
  double lo;
  double hi;
  double step;
};

/// Points lo, lo + step, ..., up to hi (inclusive within half a step).
std::vector<double> grid_points(const Grid& grid);

/// N(1, 1) vs N(1.5, 6), the second parameter being the variance.
UnivariatePair gauss_pair(const Grid& grid = {-15.0, 15.0, 0.1});

/// Gamma(shape 1, scale 1) vs Gamma(shape 1.5, scale 2).
UnivariatePair gamma_pair(const Grid& grid = {0.05, 9.95, 0.1});

/// (delta_0 + delta_1)/2 vs the uniform law on the midpoints (i + 1/2)/n,
/// both with integer weights.
UnivariatePair odc_counterexample(int n = 200);

/// X uniform on (i + 1/2)/n; Y | X uniform on the lower third, a point mass
/// at x in the middle third, uniform on the upper third. Integer weights.
BivariateDist unif_delta_kernel(int n = 30);

/// Uniform on the diagonal {(i, i) : i = 1..k}, integer weights.
BivariateDist diag_uniform(int k = 3);

/// [[0, 1/2], [1/2, 0]] on {1, 2}^2.
BivariateDist antidiag();

/// TP2 weights round(1000 exp(-(i-j)^2 / 2)) on {1..5}^2.
BivariateDist tp2_5x5();

std::vector<std::string> names();

}  // namespace stochord::fixtures
