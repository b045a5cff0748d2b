#include "stochord/univariate_orders.hpp"

#include <stdexcept>
#include <string>

#include "detail.hpp"

namespace stochord {

namespace {

bool both_weighted(const UnivariateDist& a, const UnivariateDist& b) {
  return a.has_weights() && b.has_weights();
}

template <class T>
OrderVerdict st_impl(const UnivariateDist& q1, const UnivariateDist& q2, double rel_tol) {
  const detail::Aligned<T> al = detail::align<T>(q1, q2);
  // Survival masses accumulated from the right: Q((y_i, inf)).
  T s1{0};
  T s2{0};
  for (std::size_t i = al.points.size(); i-- > 0;) {
    // s1/T1 <= s2/T2
    if (!arith::products_leq(s1, al.total_second, s2, al.total_first, rel_tol)) {
      return OrderVerdict::fail(
          "st", Witness{{{"y", al.points[i]}},
                        arith::to_double(s1) / arith::to_double(al.total_first),
                        arith::to_double(s2) / arith::to_double(al.total_second)});
    }
    s1 += al.first[i];
    s2 += al.second[i];
  }
  return OrderVerdict::pass("st");
}

template <class T>
Witness pair_witness(const detail::Aligned<T>& al, std::size_t x, std::size_t y) {
  return Witness{{{"x", al.points[x]}, {"y", al.points[y]}},
                 arith::to_double(arith::product(al.first[y], al.second[x])),
                 arith::to_double(arith::product(al.first[x], al.second[y]))};
}

template <class T>
OrderVerdict lr_ratio(const detail::Aligned<T>& al, double rel_tol) {
  // Every merged atom has g1 + g2 > 0, so no ratio is 0/0 and comparing
  // neighbours is enough.
  for (std::size_t i = 0; i + 1 < al.points.size(); ++i) {
    if (!arith::products_leq(al.first[i + 1], al.second[i], al.first[i], al.second[i + 1],
                             rel_tol)) {
      return OrderVerdict::fail("ratio", pair_witness(al, i, i + 1));
    }
  }
  return OrderVerdict::pass("ratio");
}

template <class T>
OrderVerdict lr_pairwise(const detail::Aligned<T>& al, double rel_tol) {
  for (std::size_t i = 0; i < al.points.size(); ++i) {
    for (std::size_t j = i + 1; j < al.points.size(); ++j) {
      if (!arith::products_leq(al.first[j], al.second[i], al.first[i], al.second[j], rel_tol)) {
        return OrderVerdict::fail("pairwise", pair_witness(al, i, j));
      }
    }
  }
  return OrderVerdict::pass("pairwise");
}

template <class T>
OrderVerdict lr_intervals(const detail::Aligned<T>& al, double rel_tol) {
  if (auto w = detail::interval_triple_violation(al.points, al.first, al.second, rel_tol)) {
    return OrderVerdict::fail("intervals", std::move(*w));
  }
  return OrderVerdict::pass("intervals");
}

template <class T>
OrderVerdict lr_conditional_st(const detail::Aligned<T>& al, double rel_tol) {
  const std::vector<double> bd = detail::boundaries_of(al.points);
  const std::size_t k = al.points.size();
  for (std::size_t a = 0; a < k; ++a) {
    T c1{0};
    T c2{0};
    for (std::size_t c = a + 1; c <= k; ++c) {
      c1 += al.first[c - 1];
      c2 += al.second[c - 1];
      if (c1 == T{0} || c2 == T{0}) continue;
      // Survival within C = (bd[a], bd[c]] above threshold bd[t].
      T u1{0};
      T u2{0};
      for (std::size_t t = c - 1; t > a; --t) {
        u1 += al.first[t];
        u2 += al.second[t];
        if (!arith::products_leq(u1, c2, u2, c1, rel_tol)) {
          return OrderVerdict::fail(
              "conditional-st",
              Witness{{{"x", bd[a]}, {"t", bd[t]}, {"z", bd[c]}},
                      arith::to_double(u1) / arith::to_double(c1),
                      arith::to_double(u2) / arith::to_double(c2)});
        }
      }
    }
  }
  return OrderVerdict::pass("conditional-st");
}

}  // namespace

OrderVerdict check_st(const UnivariateDist& q1, const UnivariateDist& q2, const Comparison& cmp) {
  return detail::dispatch(cmp, both_weighted(q1, q2), [&](auto tag) {
    using T = typename decltype(tag)::type;
    return st_impl<T>(q1, q2, cmp.rel_tol);
  });
}

std::string_view to_string(LrMethod method) {
  switch (method) {
    case LrMethod::ratio: return "ratio";
    case LrMethod::pairwise: return "pairwise";
    case LrMethod::intervals: return "intervals";
    case LrMethod::conditional_st: return "conditional-st";
  }
  return "ratio";
}

LrMethod parse_lr_method(std::string_view name) {
  for (LrMethod m : {LrMethod::ratio, LrMethod::pairwise, LrMethod::intervals,
                     LrMethod::conditional_st}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown likelihood-ratio method '" + std::string(name) + "'");
}

OrderVerdict check_lr(const UnivariateDist& q1, const UnivariateDist& q2, LrMethod method,
                      const Comparison& cmp) {
  return detail::dispatch(cmp, both_weighted(q1, q2), [&](auto tag) {
    using T = typename decltype(tag)::type;
    const detail::Aligned<T> al = detail::align<T>(q1, q2);
    switch (method) {
      case LrMethod::pairwise: return lr_pairwise(al, cmp.rel_tol);
      case LrMethod::intervals: return lr_intervals(al, cmp.rel_tol);
      case LrMethod::conditional_st: return lr_conditional_st(al, cmp.rel_tol);
      case LrMethod::ratio: break;
    }
    return lr_ratio(al, cmp.rel_tol);
  });
}

UnivariateDist truncate(const UnivariateDist& q, const Interval& interval) {
  std::vector<double> support;
  std::vector<double> probs;
  std::vector<std::int64_t> weights;
  double mass = 0.0;
  std::int64_t weight = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!interval.contains(q.support()[i])) continue;
    support.push_back(q.support()[i]);
    probs.push_back(q.probs()[i]);
    mass += q.probs()[i];
    if (q.has_weights()) {
      weights.push_back(q.weights()[i]);
      weight += q.weights()[i];
    }
  }
  if (q.has_weights() ? weight == 0 : mass <= 0.0) {
    throw std::domain_error("truncate: interval has zero mass");
  }
  if (q.has_weights()) return UnivariateDist::from_weights(std::move(support), std::move(weights));
  for (double& p : probs) p /= mass;
  return UnivariateDist::from_probs(std::move(support), std::move(probs));
}

}  // namespace stochord
