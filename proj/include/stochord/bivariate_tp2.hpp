#pragma once

// Total positivity of order two for bivariate finite-support distributions,
// the stochastic-kernel condition, northwest/southeast support boundaries and
// the west, east and modified conditional kernels.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "stochord/comparison.hpp"
#include "stochord/distribution.hpp"
#include "stochord/verdict.hpp"

namespace stochord {

/// R(A1 x (y,inf)) P(A2) <= P(A1) R(A2 x (y,inf)) for all A1 = (x0,x1],
/// A2 = (x1,x2] from the x boundary grid and y from the y boundary grid.
/// Witness: x0, x1, x2, y.
OrderVerdict check_st_condition(const BivariateDist& r, const Comparison& cmp = {});

enum class Tp2Method {
  pmf_allpairs,  ///< h(x2,y1) h(x1,y2) <= h(x1,y1) h(x2,y2), all x1<x2, y1<y2
  pmf_adjacent,  ///< adjacent minors; only used when every cell is positive
  intervals,     ///< rectangle probabilities over boundary sextuples
};

std::string_view to_string(Tp2Method method);
/// Parses "pmf-allpairs", "pmf-adjacent" or "intervals".
Tp2Method parse_tp2_method(std::string_view name);

/// Witness: x1, x2, y1, y2 (atoms for the pmf methods, boundary points for
/// `intervals`, which adds x0 < x1 < x2 and y0 < y1 < y2). When
/// `pmf_adjacent` is requested on a matrix with a zero cell the all-pairs
/// check runs instead and the verdict's method says so.
OrderVerdict check_tp2(const BivariateDist& r, Tp2Method method = Tp2Method::pmf_allpairs,
                       const Comparison& cmp = {});

struct BoundaryPoint {
  double x = 0.0;
  double s_nw = -kInf;  ///< largest y atom carrying mass jointly with some x atom <= x
  double s_se = kInf;   ///< smallest y atom carrying mass jointly with some x atom >= x
  bool in_range = false;
  bool in_x_o = false;  ///< in range and s_nw <= s_se
};

struct Boundaries {
  std::vector<BoundaryPoint> points;
};

/// Positive-mass x atoms plus the midpoints between consecutive ones.
std::vector<double> default_eval_grid(const BivariateDist& r);

Boundaries boundaries(const BivariateDist& r);
Boundaries boundaries(const BivariateDist& r, const std::vector<double>& xs);

enum class KernelFlavor { west, east, modified };

std::string_view to_string(KernelFlavor flavor);

/// How a kernel row was obtained.
enum class RowRegion {
  outside_range,  ///< marginal of Y
  atom,           ///< conditional distribution at an x atom
  between_atoms,  ///< conditional distribution at the neighbouring atom
  point_mass,     ///< delta at the selected S(x), x in the crossing set
  truncated,      ///< west row restricted to [s_se(x), s_nw(x)]
};

std::string_view to_string(RowRegion region);

struct Kernel {
  KernelFlavor flavor = KernelFlavor::west;
  std::vector<double> eval_points;
  std::vector<UnivariateDist> rows;
  std::vector<RowRegion> regions;
};

/// Rows at the given points (sorted internally); between atoms the west kernel
/// uses the nearest positive atom below and the east kernel the nearest above.
/// Throws std::domain_error on an empty evaluation set.
Kernel kernel_west(const BivariateDist& r, std::vector<double> xs);
Kernel kernel_east(const BivariateDist& r, std::vector<double> xs);

enum class SelectionRule { nw, se, midpoint };

SelectionRule parse_selection_rule(std::string_view name);

/// Modified kernel for a TP2 distribution: a point mass at S(x) on the
/// crossing set and the truncated west row elsewhere in the range.
/// Throws PreconditionError if R is not TP2.
Kernel kernel_new(const BivariateDist& r, std::vector<double> xs,
                  SelectionRule rule = SelectionRule::midpoint, const Comparison& cmp = {});

/// As above with a caller-supplied selection, given as (x, S(x)) pairs that
/// must cover every evaluation point in the crossing set. S has to be
/// nondecreasing with s_nw <= S <= s_se; violations raise PreconditionError.
Kernel kernel_new(const BivariateDist& r, std::vector<double> xs,
                  const std::vector<std::pair<double, double>>& selection,
                  const Comparison& cmp = {});

struct ConditionalDensity {
  double x = 0.0;
  std::vector<double> ys;
  std::vector<double> h;  ///< K(x,{y}) / Q({y}), 0 where Q({y}) = 0
  double bound = 0.0;     ///< max of h
};

/// Density of a modified-kernel row with respect to the Y marginal. x must be
/// an evaluation point of `knew` inside the range but outside the crossing
/// set; otherwise std::domain_error.
ConditionalDensity conditional_density(const Kernel& knew, double x, const BivariateDist& r);

}  // namespace stochord
