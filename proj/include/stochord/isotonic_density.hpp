#pragma once

// Isotonic Radon-Nikodym densities of a finite measure nu with respect to a
// dominating finite measure mu (nu <= mu), and the division-free comparison
// of ratios in [0, inf].

#include <cstdint>
#include <optional>
#include <vector>

#include "stochord/comparison.hpp"
#include "stochord/distribution.hpp"
#include "stochord/verdict.hpp"

namespace stochord {

/// Result of comparing r2/r1 with s2/s1 through r2*s1 <= s2*r1.
struct RatioOrdering {
  bool holds = false;       ///< r2/r1 <= s2/s1 (ratios in [0, inf])
  bool equal = false;       ///< both directions hold
  bool degenerate = false;  ///< (r1,r2) or (s1,s2) is (0,0); the ratio reading is void
};

RatioOrdering cross_compare(double r1, double r2, double s1, double s2,
                            const Comparison& cmp = {});
RatioOrdering cross_compare(std::int64_t r1, std::int64_t r2, std::int64_t s1, std::int64_t s2);

enum class DensityVersion { minimal, maximal };

/// Isotonic density values at the union of the supports of mu and nu.
struct IsotonicDensity {
  DensityVersion version = DensityVersion::minimal;
  std::vector<double> points;
  std::vector<double> values;

  /// Density at an arbitrary real x. Between atoms the minimal version takes
  /// the value of the atom to the left (0 below all atoms); the maximal
  /// version takes the value of the atom to the right (1 above all atoms).
  double at(double x) const;
};

struct DensityOptions {
  /// Enumerate boundary triples and reject inputs violating
  /// mu((y,z]) nu((x,y]) <= mu((x,y]) nu((y,z]).
  bool verify_precondition = false;
  Comparison cmp{};
};

/// f(x) = sup_{a<x} nu((a,x]) / mu((a,x]) with 0/0 := 0, computed in one
/// left-to-right pass. Throws PreconditionError if nu exceeds mu at an atom,
/// or (when requested) if the ratio-monotonicity precondition fails.
IsotonicDensity minimal_isotonic_density(const UnivariateDist& mu, const UnivariateDist& nu,
                                         const DensityOptions& options = {});

/// inf_{b>x} nu([x,b)) / mu([x,b)) with 0/0 := 1, computed right to left.
IsotonicDensity maximal_isotonic_density(const UnivariateDist& mu, const UnivariateDist& nu,
                                         const DensityOptions& options = {});

/// First boundary triple violating the ratio-monotonicity precondition, if any.
std::optional<Witness> isotonic_precondition_violation(const UnivariateDist& mu,
                                                       const UnivariateDist& nu,
                                                       const Comparison& cmp = {});

}  // namespace stochord
