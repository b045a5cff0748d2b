#pragma once

// Finite-support univariate and bivariate distributions, their distribution
// and quantile functions, marginals, conditionals and the range of X.

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "stochord/verdict.hpp"

namespace stochord {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class IntervalKind { open_closed, closed, open, closed_open };

/// Real interval with one of the four endpoint conventions. Infinite
/// endpoints are only allowed on an open side.
class Interval {
 public:
  Interval(IntervalKind kind, double lo, double hi);

  static Interval open_closed(double lo, double hi) { return {IntervalKind::open_closed, lo, hi}; }
  static Interval closed(double lo, double hi) { return {IntervalKind::closed, lo, hi}; }
  static Interval open(double lo, double hi) { return {IntervalKind::open, lo, hi}; }
  static Interval closed_open(double lo, double hi) { return {IntervalKind::closed_open, lo, hi}; }
  static Interval whole_line() { return open(-kInf, kInf); }

  IntervalKind kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool left_closed() const noexcept;
  bool right_closed() const noexcept;
  bool contains(double y) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  IntervalKind kind_;
  double lo_;
  double hi_;
};

/// Whether a univariate object is a probability distribution or a finite
/// measure without the unit-mass constraint.
enum class MassKind { probability, measure };

/// Finite-support distribution (or finite measure) on the real line.
///
/// Support points are strictly increasing. Zero-mass atoms may be present;
/// `canonical()` removes them. Distributions built from integer weights keep
/// the weights so that comparisons can be decided exactly.
class UnivariateDist {
 public:
  static UnivariateDist from_probs(std::vector<double> support, std::vector<double> probs);
  static UnivariateDist from_weights(std::vector<double> support,
                                     std::vector<std::int64_t> weights);
  /// Unsorted atoms; duplicate support points are merged by summing.
  static UnivariateDist from_atoms(std::vector<std::pair<double, double>> atoms);
  static UnivariateDist from_weighted_atoms(std::vector<std::pair<double, std::int64_t>> atoms);
  static UnivariateDist measure(std::vector<double> support, std::vector<double> masses);
  static UnivariateDist measure_from_weights(std::vector<double> support,
                                             std::vector<std::int64_t> weights);
  static UnivariateDist point_mass(double y);

  const std::vector<double>& support() const noexcept { return support_; }
  /// Probabilities (or masses, for a measure).
  const std::vector<double>& probs() const noexcept { return probs_; }
  bool has_weights() const noexcept { return weights_.has_value(); }
  /// Integer weights; throws std::logic_error if the object was built from reals.
  const std::vector<std::int64_t>& weights() const;
  std::int64_t total_weight() const;

  MassKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return support_.size(); }
  double total_mass() const noexcept { return total_; }

  /// Drops zero-mass atoms. Kind and weights are preserved.
  UnivariateDist canonical() const;

  /// Same support and (canonically) identical masses; exact on weights when
  /// both sides carry them, bitwise on doubles otherwise.
  bool same_as(const UnivariateDist& other) const;

 private:
  UnivariateDist(std::vector<double> support, std::vector<double> probs,
                 std::optional<std::vector<std::int64_t>> weights, MassKind kind);

  std::vector<double> support_;
  std::vector<double> probs_;
  std::optional<std::vector<std::int64_t>> weights_;
  MassKind kind_ = MassKind::probability;
  double total_ = 0.0;
};

/// G(y) = sum of masses at atoms <= y. G(-inf) = 0 and, for a probability
/// distribution, G(y) = 1 exactly for y at or beyond the last positive atom.
double cdf(const UnivariateDist& q, double y);

/// Left limit G(y-) = mass strictly below y.
double cdf_left(const UnivariateDist& q, double y);

/// min{ y in [-inf, inf] : G(y) >= alpha }. Returns -inf for alpha = 0.
/// Throws std::domain_error for alpha outside [0, 1].
double quantile(const UnivariateDist& q, double alpha);

double interval_mass(const UnivariateDist& q, const Interval& interval);
/// Integer weight of the interval; requires weights.
std::int64_t interval_weight(const UnivariateDist& q, const Interval& interval);

/// Atoms carrying positive mass; for finite support this is the left support.
std::vector<double> left_support(const UnivariateDist& q);

/// Finite-support distribution on the plane stored as an l x m pmf matrix
/// (row index = x atom, column index = y atom), row-major.
class BivariateDist {
 public:
  struct Cell {
    double x;
    double y;
    double prob;
  };
  struct WeightedCell {
    double x;
    double y;
    std::int64_t weight;
  };

  static BivariateDist from_pmf(std::vector<double> xs, std::vector<double> ys,
                                const std::vector<std::vector<double>>& rows);
  static BivariateDist from_weights(std::vector<double> xs, std::vector<double> ys,
                                    const std::vector<std::vector<std::int64_t>>& rows);
  static BivariateDist from_cells(const std::vector<Cell>& cells);
  static BivariateDist from_weighted_cells(const std::vector<WeightedCell>& cells);

  const std::vector<double>& x_support() const noexcept { return xs_; }
  const std::vector<double>& y_support() const noexcept { return ys_; }
  std::size_t rows() const noexcept { return xs_.size(); }
  std::size_t cols() const noexcept { return ys_.size(); }
  double at(std::size_t i, std::size_t j) const { return pmf_[i * ys_.size() + j]; }
  const std::vector<double>& pmf() const noexcept { return pmf_; }

  bool has_weights() const noexcept { return weights_.has_value(); }
  const std::vector<std::int64_t>& weights() const;
  std::int64_t weight_at(std::size_t i, std::size_t j) const {
    return weights()[i * ys_.size() + j];
  }
  std::int64_t total_weight() const;
  double total_mass() const noexcept { return total_; }

 private:
  BivariateDist(std::vector<double> xs, std::vector<double> ys, std::vector<double> pmf,
                std::optional<std::vector<std::int64_t>> weights);

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> pmf_;
  std::optional<std::vector<std::int64_t>> weights_;
  double total_ = 0.0;
};

/// Smallest closed interval carrying all X-marginal mass. Throws
/// InvalidDistribution if the x-marginal has no positive atom.
Interval range_x(const BivariateDist& r);

/// (P, Q) aligned with the x and y supports of `r` (zero atoms kept).
std::pair<UnivariateDist, UnivariateDist> marginals(const BivariateDist& r);

/// L(Y | X = x) for an x atom with positive marginal mass; std::domain_error otherwise.
UnivariateDist conditional_row(const BivariateDist& r, double x);

/// Row index of an x atom with positive mass, if any.
std::optional<std::size_t> x_atom_index(const BivariateDist& r, double x);

}  // namespace stochord
