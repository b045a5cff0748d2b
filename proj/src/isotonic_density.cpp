#include "stochord/isotonic_density.hpp"

#include <algorithm>
#include <string>

#include "detail.hpp"

namespace stochord {

namespace {

template <class T>
RatioOrdering compare_ratios(T r1, T r2, T s1, T s2, double rel_tol) {
  RatioOrdering out;
  out.degenerate = (r1 == T{0} && r2 == T{0}) || (s1 == T{0} && s2 == T{0});
  out.holds = arith::products_leq(r2, s1, s2, r1, rel_tol);
  out.equal = out.holds && arith::products_leq(s2, r1, r2, s1, rel_tol);
  return out;
}

// mu and nu aligned on the union of their (raw) supports.
template <class T>
struct MeasurePair {
  std::vector<double> points;
  std::vector<T> mu;
  std::vector<T> nu;
};

template <class T>
MeasurePair<T> pair_up(const UnivariateDist& mu, const UnivariateDist& nu) {
  const auto& sm = mu.support();
  const auto& sn = nu.support();
  const auto& mm = detail::masses<T>(mu);
  const auto& mn = detail::masses<T>(nu);
  MeasurePair<T> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sm.size() || j < sn.size()) {
    if (j == sn.size() || (i < sm.size() && sm[i] < sn[j])) {
      out.points.push_back(sm[i]);
      out.mu.push_back(mm[i++]);
      out.nu.push_back(T{0});
    } else if (i == sm.size() || sn[j] < sm[i]) {
      out.points.push_back(sn[j]);
      out.mu.push_back(T{0});
      out.nu.push_back(mn[j++]);
    } else {
      out.points.push_back(sm[i]);
      out.mu.push_back(mm[i++]);
      out.nu.push_back(mn[j++]);
    }
  }
  return out;
}

bool both_weighted(const UnivariateDist& mu, const UnivariateDist& nu) {
  return mu.has_weights() && nu.has_weights();
}

template <class T>
void check_dominated(const MeasurePair<T>& pair, double rel_tol) {
  for (std::size_t i = 0; i < pair.points.size(); ++i) {
    if (!arith::leq(pair.nu[i], pair.mu[i], rel_tol)) {
      throw PreconditionError(
          "isotonic density: nu exceeds mu at an atom",
          Witness{{{"x", pair.points[i]}}, arith::to_double(pair.nu[i]),
                  arith::to_double(pair.mu[i])});
    }
  }
}

template <class T>
IsotonicDensity build(const UnivariateDist& mu, const UnivariateDist& nu,
                      const DensityOptions& options, DensityVersion version) {
  const MeasurePair<T> pair = pair_up<T>(mu, nu);
  const double rel_tol = options.cmp.rel_tol;
  check_dominated(pair, rel_tol);
  if (options.verify_precondition) {
    if (auto w = detail::interval_triple_violation(pair.points, pair.mu, pair.nu, rel_tol)) {
      throw PreconditionError("isotonic density: ratio monotonicity precondition fails",
                              std::move(*w));
    }
  }
  IsotonicDensity out;
  out.version = version;
  out.points = pair.points;
  out.values.resize(pair.points.size());
  auto ratio = [&](std::size_t i) {
    return std::min(1.0, arith::to_double(pair.nu[i]) / arith::to_double(pair.mu[i]));
  };
  if (version == DensityVersion::minimal) {
    double current = 0.0;
    for (std::size_t i = 0; i < pair.points.size(); ++i) {
      if (pair.mu[i] > T{0}) current = ratio(i);
      out.values[i] = current;
    }
  } else {
    double current = 1.0;
    for (std::size_t i = pair.points.size(); i-- > 0;) {
      if (pair.mu[i] > T{0}) current = ratio(i);
      out.values[i] = current;
    }
  }
  return out;
}

}  // namespace

RatioOrdering cross_compare(double r1, double r2, double s1, double s2, const Comparison& cmp) {
  return compare_ratios(r1, r2, s1, s2, cmp.mode == CompareMode::exact ? 0.0 : cmp.rel_tol);
}

RatioOrdering cross_compare(std::int64_t r1, std::int64_t r2, std::int64_t s1, std::int64_t s2) {
  return compare_ratios(r1, r2, s1, s2, 0.0);
}

double IsotonicDensity::at(double x) const {
  if (points.empty()) return version == DensityVersion::minimal ? 0.0 : 1.0;
  if (version == DensityVersion::minimal) {
    auto it = std::upper_bound(points.begin(), points.end(), x);
    if (it == points.begin()) return 0.0;
    return values[static_cast<std::size_t>(it - points.begin()) - 1];
  }
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end()) return 1.0;
  return values[static_cast<std::size_t>(it - points.begin())];
}

IsotonicDensity minimal_isotonic_density(const UnivariateDist& mu, const UnivariateDist& nu,
                                         const DensityOptions& options) {
  return detail::dispatch(options.cmp, both_weighted(mu, nu), [&](auto tag) {
    using T = typename decltype(tag)::type;
    return build<T>(mu, nu, options, DensityVersion::minimal);
  });
}

IsotonicDensity maximal_isotonic_density(const UnivariateDist& mu, const UnivariateDist& nu,
                                         const DensityOptions& options) {
  return detail::dispatch(options.cmp, both_weighted(mu, nu), [&](auto tag) {
    using T = typename decltype(tag)::type;
    return build<T>(mu, nu, options, DensityVersion::maximal);
  });
}

std::optional<Witness> isotonic_precondition_violation(const UnivariateDist& mu,
                                                       const UnivariateDist& nu,
                                                       const Comparison& cmp) {
  return detail::dispatch(cmp, both_weighted(mu, nu), [&](auto tag) {
    using T = typename decltype(tag)::type;
    const MeasurePair<T> pair = pair_up<T>(mu, nu);
    return detail::interval_triple_violation(pair.points, pair.mu, pair.nu, cmp.rel_tol);
  });
}

}  // namespace stochord
