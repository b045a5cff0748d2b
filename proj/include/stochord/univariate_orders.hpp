#pragma once

// Usual stochastic order and likelihood-ratio order on finite-support
// distributions, plus truncation to an interval.

#include <string_view>

#include "stochord/comparison.hpp"
#include "stochord/distribution.hpp"
#include "stochord/verdict.hpp"

namespace stochord {

/// Q1 <=st Q2 iff Q1((y,inf)) <= Q2((y,inf)) at every atom y of the merged
/// support. Witness: {"y"}, lhs = Q1((y,inf)), rhs = Q2((y,inf)).
OrderVerdict check_st(const UnivariateDist& q1, const UnivariateDist& q2,
                      const Comparison& cmp = {});

enum class LrMethod {
  ratio,           ///< g2/g1 isotonic over consecutive merged atoms (witness x, y)
  pairwise,        ///< g1(y) g2(x) <= g1(x) g2(y) for all x < y (witness x, y)
  intervals,       ///< Q1(B) Q2(A) <= Q1(A) Q2(B), A=(x,y], B=(y,z] (witness x, y, z)
  conditional_st,  ///< Q1(.|C) <=st Q2(.|C) for all C=(x,z] (witness x, t, z)
};

std::string_view to_string(LrMethod method);
/// Parses "ratio", "pairwise", "intervals" or "conditional-st".
LrMethod parse_lr_method(std::string_view name);

/// Q1 <=lr Q2 with the counting measure on the merged support as dominating
/// measure. All methods agree on `holds`; they differ in cost and witness shape.
OrderVerdict check_lr(const UnivariateDist& q1, const UnivariateDist& q2,
                      LrMethod method = LrMethod::ratio, const Comparison& cmp = {});

/// Q(. | I). Integer weights are kept. Throws std::domain_error if Q(I) = 0.
UnivariateDist truncate(const UnivariateDist& q, const Interval& interval);

}  // namespace stochord
