#pragma once

// Internal helpers shared by the order, ROC and bivariate checkers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "stochord/comparison.hpp"
#include "stochord/distribution.hpp"
#include "stochord/verdict.hpp"

namespace stochord::detail {

template <class T>
struct Tag {
  using type = T;
};

/// Calls `f(Tag<std::int64_t>{})` in exact mode and `f(Tag<double>{})` otherwise.
template <class F>
decltype(auto) dispatch(const Comparison& cmp, bool have_weights, F&& f) {
  if (cmp.mode == CompareMode::exact) {
    if (!have_weights) {
      throw std::invalid_argument("exact comparison requires integer-weight inputs");
    }
    return f(Tag<std::int64_t>{});
  }
  return f(Tag<double>{});
}

template <class T>
const std::vector<T>& masses(const UnivariateDist& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.probs();
  } else {
    return q.weights();
  }
}

template <class T>
T cell(const BivariateDist& r, std::size_t i, std::size_t j) {
  if constexpr (std::is_same_v<T, double>) {
    return r.at(i, j);
  } else {
    return r.weight_at(i, j);
  }
}

template <class T>
T total(const UnivariateDist& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.total_mass();
  } else {
    return q.total_weight();
  }
}

/// Two distributions aligned on the union of their canonical supports.
template <class T>
struct Aligned {
  std::vector<double> points;
  std::vector<T> first;
  std::vector<T> second;
  T total_first{};
  T total_second{};
};

template <class T>
Aligned<T> align(const UnivariateDist& q1, const UnivariateDist& q2) {
  const UnivariateDist a = q1.canonical();
  const UnivariateDist b = q2.canonical();
  const auto& sa = a.support();
  const auto& sb = b.support();
  const auto& ma = masses<T>(a);
  const auto& mb = masses<T>(b);
  Aligned<T> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() || j < sb.size()) {
    if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
      out.points.push_back(sa[i]);
      out.first.push_back(ma[i++]);
      out.second.push_back(T{0});
    } else if (i == sa.size() || sb[j] < sa[i]) {
      out.points.push_back(sb[j]);
      out.first.push_back(T{0});
      out.second.push_back(mb[j++]);
    } else {
      out.points.push_back(sa[i]);
      out.first.push_back(ma[i++]);
      out.second.push_back(mb[j++]);
    }
  }
  out.total_first = total<T>(a);
  out.total_second = total<T>(b);
  return out;
}

/// Boundary points between consecutive atoms plus one sentinel on either side:
/// boundary k separates atoms k-1 and k, so (b[a], b[c]] holds atoms a..c-1.
std::vector<double> boundaries_of(const std::vector<double>& points);

/// Searches boundary triples x < y < z for a violation of
/// m1((y,z]) m2((x,y]) <= m1((x,y]) m2((y,z]). Interval masses are
/// accumulated directly from atoms, never as differences of cumulative sums.
template <class T>
std::optional<Witness> interval_triple_violation(const std::vector<double>& points,
                                                 const std::vector<T>& m1,
                                                 const std::vector<T>& m2, double rel_tol) {
  const std::vector<double> bd = boundaries_of(points);
  const std::size_t k = points.size();
  for (std::size_t a = 0; a < k; ++a) {
    T m1a{0};
    T m2a{0};
    for (std::size_t b = a + 1; b <= k; ++b) {
      m1a += m1[b - 1];
      m2a += m2[b - 1];
      T m1b{0};
      T m2b{0};
      for (std::size_t c = b + 1; c <= k; ++c) {
        m1b += m1[c - 1];
        m2b += m2[c - 1];
        if (!arith::products_leq(m1b, m2a, m1a, m2b, rel_tol)) {
          return Witness{{{"x", bd[a]}, {"y", bd[b]}, {"z", bd[c]}},
                         arith::to_double(arith::product(m1b, m2a)),
                         arith::to_double(arith::product(m1a, m2b))};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace stochord::detail
