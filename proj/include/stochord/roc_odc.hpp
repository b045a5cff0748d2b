#pragma once

// ROC point sets with the concavity check and ordinal dominance curves with
// the convexity check.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stochord/comparison.hpp"
#include "stochord/distribution.hpp"
#include "stochord/verdict.hpp"

namespace stochord {

/// Distinct survival pairs (1 - G1(y), 1 - G2(y)) over y in the merged support
/// and +-inf, sorted ascending. Always contains (0,0) and (1,1).
struct RocCurve {
  std::vector<std::pair<double, double>> points;
  /// Integer survival weights per point, present when both inputs carry
  /// weights. Coordinates are num.first / denom.first and num.second / denom.second.
  std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> exact;
  std::pair<std::int64_t, std::int64_t> denom{1, 1};
};

RocCurve roc_curve(const UnivariateDist& q1, const UnivariateDist& q2);

/// Concavity over consecutive triples a, b, c:
/// (b2 - a2)(c1 - b1) >= (c2 - b2)(b1 - a1). Witness: a1,a2,b1,b2,c1,c2.
OrderVerdict roc_is_concave(const RocCurve& curve, const Comparison& cmp = {});

/// H(alpha) = G2(G1^{-1}(alpha)) on the image {0} u {cumulative sums of Q1}.
struct OdcCurve {
  std::vector<double> alphas;
  std::vector<double> values;
  /// Q2 << Q1, decided by support inclusion.
  bool absolutely_continuous = false;
  /// Integer numerators of alphas (over denom.first) and values (over denom.second).
  std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> exact;
  std::pair<std::int64_t, std::int64_t> denom{1, 1};
};

OdcCurve odc_curve(const UnivariateDist& q1, const UnivariateDist& q2);

/// Convexity over consecutive alphas r < s < t:
/// (H(s) - H(r))(t - s) <= (H(t) - H(s))(s - r). Witness: r, s, t.
OrderVerdict odc_is_convex(const OdcCurve& curve, const Comparison& cmp = {});

}  // namespace stochord
