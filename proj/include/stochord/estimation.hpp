#pragma once

// Sampling, empirical bivariate distributions, conditional quantile curves
// and the convergence diagnostics for empirical conditional quantiles.

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "stochord/distribution.hpp"

namespace stochord {

using Sample = std::vector<std::pair<double, double>>;

/// n i.i.d. draws by inverse CDF over the row-major cumulative pmf, driven by
/// SplitMix64 seeded with `seed`.
Sample sample(const BivariateDist& r, std::size_t n, std::uint64_t seed);

/// Empirical distribution with integer weights equal to the counts.
BivariateDist empirical(const Sample& draws);

enum class QuantileFlavor {
  west_min,   ///< min{y : K^w(x,(-inf,y]) >= beta}
  east_max,   ///< max{y : K^e(x,(-inf,y)) <= beta}
  empirical,  ///< west-min applied to an empirical distribution
};

std::string_view to_string(QuantileFlavor flavor);
/// Accepts "w", "e", "emp" and the long names.
QuantileFlavor parse_quantile_flavor(std::string_view name);

struct QuantileCurve {
  double beta = 0.5;
  QuantileFlavor flavor = QuantileFlavor::west_min;
  std::vector<std::pair<double, double>> points;  ///< (x, q), x ascending
};

/// Throws std::domain_error if beta is not in (0,1) or some x lies outside
/// the range of X.
QuantileCurve quantile_curve(const BivariateDist& r, double beta, QuantileFlavor flavor,
                             std::vector<double> xs);

/// Largest y with K(x,(-inf,y)) <= beta <= K(x,(-inf,y]) for the west kernel
/// at x; the smallest such y is the west-min quantile.
double max_quantile_choice(const BivariateDist& r, double beta, double x);

struct BracketRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double qn_x1_min = 0.0;
  double qn_x1_max = 0.0;
  double qn_x2_min = 0.0;
  double qn_x2_max = 0.0;
  bool lower_ok = false;  ///< q_n(beta|x2) >= q^w(beta|x1) for both choices
  bool upper_ok = false;  ///< q_n(beta|x1) <= q^e(beta|x2) for both choices
};

struct BracketReport {
  double beta = 0.5;
  double x1 = 0.0;
  double x2 = 0.0;
  double qw_x1 = 0.0;
  double qe_x2 = 0.0;
  std::vector<BracketRow> rows;                         ///< ordered by (n, seed)
  std::vector<std::pair<std::size_t, double>> pass_rate;  ///< per n
};

/// Throws PreconditionError if R fails the stochastic-kernel condition and
/// std::domain_error unless x1 < x2 lie strictly between the extreme x atoms.
BracketReport bracket_check(const BivariateDist& r_true, const std::vector<std::size_t>& ns,
                            const std::vector<std::uint64_t>& seeds, double beta, double x1,
                            double x2);

struct UniformRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double sup_distance = 0.0;
};

struct UniformReport {
  double beta = 0.5;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> grid;
  std::vector<UniformRow> rows;                        ///< ordered by (n, seed)
  std::vector<std::pair<std::size_t, double>> max_per_n;
  bool nonincreasing = true;  ///< max_per_n nonincreasing along the n list
};

/// Sup over the grid of |q_n - q^w|. The default grid is the positive x atoms
/// in [lo, hi]. Throws PreconditionError naming the first grid point where
/// q^w and q^e differ.
UniformReport uniform_convergence_check(const BivariateDist& r_true, double beta, double lo,
                                        double hi, const std::vector<std::size_t>& ns,
                                        const std::vector<std::uint64_t>& seeds,
                                        std::vector<double> grid = {});

}  // namespace stochord
