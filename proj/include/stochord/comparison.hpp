#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <type_traits>

namespace stochord {

/// How product inequalities `a*b <= c*d` are decided.
///
/// `tolerant` works on the floating-point probabilities and accepts
/// `lhs <= rhs + rel_tol * max(|lhs|, |rhs|)`. `exact` works on the integer
/// weights carried by distributions built from counts; products are formed in
/// 128-bit integers and compared without slack.
enum class CompareMode { tolerant, exact };

struct Comparison {
  CompareMode mode = CompareMode::tolerant;
  double rel_tol = 1e-12;

  static Comparison exact() { return {CompareMode::exact, 0.0}; }
  static Comparison tolerant(double rel = 1e-12) { return {CompareMode::tolerant, rel}; }
};

/// Tolerance for "sums to one" validation of probability vectors.
inline constexpr double kMassTolerance = 1e-9;

namespace arith {

__extension__ using Wide = __int128;

inline bool leq(double lhs, double rhs, double rel_tol) {
  return lhs <= rhs + rel_tol * std::max(std::abs(lhs), std::abs(rhs));
}
inline bool leq(Wide lhs, Wide rhs, double /*rel_tol*/) { return lhs <= rhs; }
inline bool leq(std::int64_t lhs, std::int64_t rhs, double /*rel_tol*/) { return lhs <= rhs; }

inline double product(double a, double b) { return a * b; }
inline Wide product(std::int64_t a, std::int64_t b) { return static_cast<Wide>(a) * b; }

/// a*b <= c*d under the comparison rule of the scalar type.
template <class T>
bool products_leq(T a, T b, T c, T d, double rel_tol) {
  return leq(product(a, b), product(c, d), rel_tol);
}

inline double to_double(double v) { return v; }
inline double to_double(Wide v) { return static_cast<double>(v); }
inline double to_double(std::int64_t v) { return static_cast<double>(v); }

template <class T>
inline constexpr bool is_exact_v = std::is_integral_v<T>;

}  // namespace arith

}  // namespace stochord
