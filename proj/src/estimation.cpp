#include "stochord/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "stochord/bivariate_tp2.hpp"
#include "stochord/rng.hpp"

namespace stochord {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("beta must lie in (0, 1)");
}

UnivariateDist row_at(const BivariateDist& r, double x, KernelFlavor flavor) {
  Kernel k = flavor == KernelFlavor::east ? kernel_east(r, {x}) : kernel_west(r, {x});
  return std::move(k.rows.front());
}

double west_min(const BivariateDist& r, double beta, double x) {
  return quantile(row_at(r, x, KernelFlavor::west), beta);
}

// Smallest atom with G(y) > beta, i.e. the largest y with G(y-) <= beta.
double east_max(const BivariateDist& r, double beta, double x) {
  const UnivariateDist row = row_at(r, x, KernelFlavor::east).canonical();
  for (double y : row.support()) {
    if (cdf(row, y) > beta) return y;
  }
  return row.support().back();
}

}  // namespace

Sample sample(const BivariateDist& r, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample: n must be at least 1");
  const std::vector<double>& pmf = r.pmf();
  std::vector<double> cum(pmf.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) cum[k] = acc += pmf[k];
  SplitMix64 rng(seed);
  Sample out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    const std::size_t k = static_cast<std::size_t>(it - cum.begin());
    out.emplace_back(r.x_support()[k / r.cols()], r.y_support()[k % r.cols()]);
  }
  return out;
}

BivariateDist empirical(const Sample& draws) {
  if (draws.empty()) throw std::invalid_argument("empirical: no draws");
  std::map<std::pair<double, double>, std::int64_t> counts;
  for (const auto& d : draws) ++counts[d];
  std::vector<BivariateDist::WeightedCell> cells;
  for (const auto& [xy, c] : counts) cells.push_back({xy.first, xy.second, c});
  return BivariateDist::from_weighted_cells(cells);
}

std::string_view to_string(QuantileFlavor flavor) {
  switch (flavor) {
    case QuantileFlavor::west_min: return "west-min";
    case QuantileFlavor::east_max: return "east-max";
    case QuantileFlavor::empirical: return "empirical";
  }
  return "west-min";
}

QuantileFlavor parse_quantile_flavor(std::string_view name) {
  if (name == "w" || name == "west-min") return QuantileFlavor::west_min;
  if (name == "e" || name == "east-max") return QuantileFlavor::east_max;
  if (name == "emp" || name == "empirical") return QuantileFlavor::empirical;
  throw std::invalid_argument("unknown quantile flavor '" + std::string(name) + "'");
}

QuantileCurve quantile_curve(const BivariateDist& r, double beta, QuantileFlavor flavor,
                             std::vector<double> xs) {
  require_beta(beta);
  const Interval range = range_x(r);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  QuantileCurve curve;
  curve.beta = beta;
  curve.flavor = flavor;
  for (double x : xs) {
    if (!range.contains(x)) throw std::domain_error("quantile_curve: x outside the range of X");
    const double q = flavor == QuantileFlavor::east_max ? east_max(r, beta, x) : west_min(r, beta, x);
    curve.points.emplace_back(x, q);
  }
  return curve;
}

double max_quantile_choice(const BivariateDist& r, double beta, double x) {
  require_beta(beta);
  const UnivariateDist row = row_at(r, x, KernelFlavor::west).canonical();
  double best = quantile(row, beta);
  for (double y : row.support()) {
    if (cdf_left(row, y) <= beta && cdf(row, y) >= beta) best = std::max(best, y);
  }
  return best;
}

BracketReport bracket_check(const BivariateDist& r_true, const std::vector<std::size_t>& ns,
                            const std::vector<std::uint64_t>& seeds, double beta, double x1,
                            double x2) {
  require_beta(beta);
  const OrderVerdict st = check_st_condition(r_true);
  if (!st.holds) {
    throw PreconditionError("bracket_check requires the stochastic-kernel condition", *st.witness);
  }
  const Interval range = range_x(r_true);
  if (!(x1 < x2 && range.lo() < x1 && x2 < range.hi())) {
    throw std::domain_error("bracket_check needs x1 < x2 strictly inside the range of X");
  }
  BracketReport rep;
  rep.beta = beta;
  rep.x1 = x1;
  rep.x2 = x2;
  rep.qw_x1 = west_min(r_true, beta, x1);
  rep.qe_x2 = east_max(r_true, beta, x2);
  std::vector<std::size_t> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  std::vector<std::uint64_t> sorted_seeds = seeds;
  std::sort(sorted_seeds.begin(), sorted_seeds.end());
  for (std::size_t n : sorted_ns) {
    std::size_t passed = 0;
    for (std::uint64_t seed : sorted_seeds) {
      const BivariateDist rn = empirical(sample(r_true, n, seed));
      BracketRow row;
      row.n = n;
      row.seed = seed;
      row.qn_x1_min = west_min(rn, beta, x1);
      row.qn_x1_max = max_quantile_choice(rn, beta, x1);
      row.qn_x2_min = west_min(rn, beta, x2);
      row.qn_x2_max = max_quantile_choice(rn, beta, x2);
      row.lower_ok = row.qn_x2_min >= rep.qw_x1 && row.qn_x2_max >= rep.qw_x1;
      row.upper_ok = row.qn_x1_min <= rep.qe_x2 && row.qn_x1_max <= rep.qe_x2;
      if (row.lower_ok && row.upper_ok) ++passed;
      rep.rows.push_back(row);
    }
    const double rate = sorted_seeds.empty() ? 1.0
                                             : static_cast<double>(passed) /
                                                   static_cast<double>(sorted_seeds.size());
    rep.pass_rate.emplace_back(n, rate);
  }
  return rep;
}

UniformReport uniform_convergence_check(const BivariateDist& r_true, double beta, double lo,
                                        double hi, const std::vector<std::size_t>& ns,
                                        const std::vector<std::uint64_t>& seeds,
                                        std::vector<double> grid) {
  require_beta(beta);
  if (!(lo <= hi)) throw std::domain_error("uniform_convergence_check: empty interval");
  if (grid.empty()) {
    const auto [p, q] = marginals(r_true);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = p.support()[i];
      if (p.probs()[i] > 0.0 && lo <= x && x <= hi) grid.push_back(x);
    }
  }
  if (grid.empty()) throw std::domain_error("uniform_convergence_check: empty evaluation grid");
  std::sort(grid.begin(), grid.end());
  const Interval range = range_x(r_true);
  std::vector<double> truth;
  for (double x : grid) {
    if (!range.contains(x)) throw std::domain_error("uniform_convergence_check: x outside range");
    const double qw = west_min(r_true, beta, x);
    const double qe = east_max(r_true, beta, x);
    if (qw != qe) {
      throw PreconditionError("west and east conditional quantiles differ", Witness{{{"x", x}}, qw, qe});
    }
    truth.push_back(qw);
  }
  UniformReport rep;
  rep.beta = beta;
  rep.lo = lo;
  rep.hi = hi;
  rep.grid = grid;
  std::vector<std::size_t> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  std::vector<std::uint64_t> sorted_seeds = seeds;
  std::sort(sorted_seeds.begin(), sorted_seeds.end());
  for (std::size_t n : sorted_ns) {
    double worst = 0.0;
    for (std::uint64_t seed : sorted_seeds) {
      const BivariateDist rn = empirical(sample(r_true, n, seed));
      double sup = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        sup = std::max(sup, std::abs(west_min(rn, beta, grid[k]) - truth[k]));
      }
      rep.rows.push_back({n, seed, sup});
      worst = std::max(worst, sup);
    }
    if (!rep.max_per_n.empty() && worst > rep.max_per_n.back().second) rep.nonincreasing = false;
    rep.max_per_n.emplace_back(n, worst);
  }
  return rep;
}

}  // namespace stochord
