#include "stochord/roc_odc.hpp"

#include <algorithm>

#include "detail.hpp"

namespace stochord {

namespace {

using ExactPoints = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Concavity of a sorted point sequence over consecutive triples.
template <class T>
OrderVerdict concave_impl(const std::vector<std::pair<T, T>>& pts, double rel_tol,
                          const std::vector<std::pair<double, double>>& shown) {
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    const auto& [a1, a2] = pts[i];
    const auto& [b1, b2] = pts[i + 1];
    const auto& [c1, c2] = pts[i + 2];
    // (c2 - b2)(b1 - a1) <= (b2 - a2)(c1 - b1)
    if (!arith::products_leq(c2 - b2, b1 - a1, b2 - a2, c1 - b1, rel_tol)) {
      const auto& a = shown[i];
      const auto& b = shown[i + 1];
      const auto& c = shown[i + 2];
      return OrderVerdict::fail(
          "roc-concave",
          Witness{{{"a1", a.first}, {"a2", a.second}, {"b1", b.first}, {"b2", b.second},
                   {"c1", c.first}, {"c2", c.second}},
                  arith::to_double(arith::product(c2 - b2, b1 - a1)),
                  arith::to_double(arith::product(b2 - a2, c1 - b1))});
    }
  }
  return OrderVerdict::pass("roc-concave");
}

template <class T>
OrderVerdict convex_impl(const std::vector<T>& alphas, const std::vector<T>& values,
                         double rel_tol, const std::vector<double>& shown) {
  for (std::size_t i = 0; i + 2 < alphas.size(); ++i) {
    const T dh1 = values[i + 1] - values[i];
    const T dh2 = values[i + 2] - values[i + 1];
    const T da1 = alphas[i + 1] - alphas[i];
    const T da2 = alphas[i + 2] - alphas[i + 1];
    if (!arith::products_leq(dh1, da2, dh2, da1, rel_tol)) {
      return OrderVerdict::fail(
          "odc-convex",
          Witness{{{"r", shown[i]}, {"s", shown[i + 1]}, {"t", shown[i + 2]}},
                  arith::to_double(arith::product(dh1, da2)),
                  arith::to_double(arith::product(dh2, da1))});
    }
  }
  return OrderVerdict::pass("odc-convex");
}

}  // namespace

RocCurve roc_curve(const UnivariateDist& q1, const UnivariateDist& q2) {
  RocCurve out;
  const detail::Aligned<double> al = detail::align<double>(q1, q2);
  const std::size_t k = al.points.size();
  // Survival masses from the right; index k corresponds to y = +inf.
  std::vector<std::pair<double, double>> surv(k + 1, {0.0, 0.0});
  for (std::size_t i = k; i-- > 0;) {
    surv[i] = {surv[i + 1].first + al.first[i], surv[i + 1].second + al.second[i]};
  }
  for (std::size_t i = k + 1; i-- > 0;) {
    out.points.emplace_back(surv[i].first / al.total_first, surv[i].second / al.total_second);
  }
  // The whole line has mass one; clamping keeps rounding from breaking monotonicity.
  out.points.back() = {1.0, 1.0};
  for (std::size_t i = out.points.size() - 1; i-- > 0;) {
    out.points[i].first = std::min(out.points[i].first, out.points[i + 1].first);
    out.points[i].second = std::min(out.points[i].second, out.points[i + 1].second);
  }
  if (q1.has_weights() && q2.has_weights()) {
    const detail::Aligned<std::int64_t> ex = detail::align<std::int64_t>(q1, q2);
    ExactPoints num(k + 1, {0, 0});
    for (std::size_t i = k; i-- > 0;) {
      num[i] = {num[i + 1].first + ex.first[i], num[i + 1].second + ex.second[i]};
    }
    std::reverse(num.begin(), num.end());
    out.exact = std::move(num);
    out.denom = {ex.total_first, ex.total_second};
  }
  // Every merged atom carries mass under one of the two distributions, so
  // consecutive pairs already differ; the pass below is a guard only.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (keep.empty() || out.points[keep.back()] != out.points[i]) keep.push_back(i);
  }
  if (keep.size() != out.points.size()) {
    std::vector<std::pair<double, double>> pts;
    ExactPoints num;
    for (std::size_t i : keep) {
      pts.push_back(out.points[i]);
      if (out.exact) num.push_back((*out.exact)[i]);
    }
    out.points = std::move(pts);
    if (out.exact) out.exact = std::move(num);
  }
  return out;
}

OrderVerdict roc_is_concave(const RocCurve& curve, const Comparison& cmp) {
  if (cmp.mode == CompareMode::exact) {
    if (!curve.exact) throw std::invalid_argument("exact comparison requires integer-weight inputs");
    return concave_impl(*curve.exact, 0.0, curve.points);
  }
  return concave_impl(curve.points, cmp.rel_tol, curve.points);
}

OdcCurve odc_curve(const UnivariateDist& q1, const UnivariateDist& q2) {
  OdcCurve out;
  const UnivariateDist c1 = q1.canonical();
  const UnivariateDist c2 = q2.canonical();
  out.alphas.push_back(0.0);
  out.values.push_back(0.0);
  for (double atom : c1.support()) {
    out.alphas.push_back(cdf(c1, atom));
    out.values.push_back(cdf(c2, atom));
  }
  out.absolutely_continuous = std::includes(c1.support().begin(), c1.support().end(),
                                            c2.support().begin(), c2.support().end());
  if (c1.has_weights() && c2.has_weights()) {
    ExactPoints num{{0, 0}};
    std::int64_t cum1 = 0;
    std::int64_t cum2 = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
      cum1 += c1.weights()[i];
      while (j < c2.size() && c2.support()[j] <= c1.support()[i]) cum2 += c2.weights()[j++];
      num.emplace_back(cum1, cum2);
    }
    out.exact = std::move(num);
    out.denom = {c1.total_weight(), c2.total_weight()};
  }
  return out;
}

OrderVerdict odc_is_convex(const OdcCurve& curve, const Comparison& cmp) {
  if (cmp.mode == CompareMode::exact) {
    if (!curve.exact) throw std::invalid_argument("exact comparison requires integer-weight inputs");
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> h;
    for (const auto& [x, y] : *curve.exact) {
      a.push_back(x);
      h.push_back(y);
    }
    return convex_impl(a, h, 0.0, curve.alphas);
  }
  return convex_impl(curve.alphas, curve.values, cmp.rel_tol, curve.alphas);
}

}  // namespace stochord
