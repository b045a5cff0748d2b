#include "stochord/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stochord/comparison.hpp"

namespace stochord {

namespace {

void require_increasing(const std::vector<double>& support, const char* what) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) {
      throw InvalidDistribution(std::string(what) + ": support points must be finite");
    }
    if (i > 0 && !(support[i - 1] < support[i])) {
      throw InvalidDistribution(std::string(what) + ": support must be strictly increasing");
    }
  }
}

void require_masses(const std::vector<double>& masses, bool unit_bounded) {
  for (double p : masses) {
    if (!std::isfinite(p) || p < 0.0 || (unit_bounded && p > 1.0 + kMassTolerance)) {
      throw InvalidDistribution("masses must be finite, nonnegative"
                                + std::string(unit_bounded ? " and at most 1" : ""));
    }
  }
}

void require_unit_total(double total) {
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidDistribution("probabilities must sum to 1 (got " + std::to_string(total) + ")");
  }
}

std::int64_t checked_total(const std::vector<std::int64_t>& weights) {
  std::int64_t total = 0;
  for (auto w : weights) {
    if (w < 0) throw InvalidDistribution("weights must be nonnegative");
    if (__builtin_add_overflow(total, w, &total)) {
      throw InvalidDistribution("total weight overflows 64 bits");
    }
  }
  return total;
}

// Half-open index range [first, last) of atoms inside the interval.
std::pair<std::size_t, std::size_t> atom_range(const std::vector<double>& support,
                                               const Interval& iv) {
  auto first = iv.left_closed()
                   ? std::lower_bound(support.begin(), support.end(), iv.lo())
                   : std::upper_bound(support.begin(), support.end(), iv.lo());
  auto last = iv.right_closed()
                  ? std::upper_bound(support.begin(), support.end(), iv.hi())
                  : std::lower_bound(support.begin(), support.end(), iv.hi());
  auto f = static_cast<std::size_t>(first - support.begin());
  auto l = static_cast<std::size_t>(last - support.begin());
  return {f, std::max(f, l)};
}

}  // namespace

// ---------------------------------------------------------------- Interval

Interval::Interval(IntervalKind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("interval endpoints must satisfy lo <= hi");
  }
  if ((std::isinf(lo) && left_closed()) || (std::isinf(hi) && right_closed())) {
    throw std::invalid_argument("infinite interval endpoint must be on an open side");
  }
}

bool Interval::left_closed() const noexcept {
  return kind_ == IntervalKind::closed || kind_ == IntervalKind::closed_open;
}

bool Interval::right_closed() const noexcept {
  return kind_ == IntervalKind::closed || kind_ == IntervalKind::open_closed;
}

bool Interval::contains(double y) const noexcept {
  bool above = left_closed() ? y >= lo_ : y > lo_;
  bool below = right_closed() ? y <= hi_ : y < hi_;
  return above && below;
}

// ---------------------------------------------------------- UnivariateDist

UnivariateDist::UnivariateDist(std::vector<double> support, std::vector<double> probs,
                               std::optional<std::vector<std::int64_t>> weights, MassKind kind)
    : support_(std::move(support)),
      probs_(std::move(probs)),
      weights_(std::move(weights)),
      kind_(kind) {
  if (support_.empty()) throw InvalidDistribution("support must contain at least one point");
  if (support_.size() != probs_.size()) {
    throw InvalidDistribution("support and probabilities differ in length");
  }
  require_increasing(support_, "univariate");
  require_masses(probs_, kind_ == MassKind::probability);
  total_ = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (kind_ == MassKind::probability) require_unit_total(total_);
}

UnivariateDist UnivariateDist::from_probs(std::vector<double> support, std::vector<double> probs) {
  return {std::move(support), std::move(probs), std::nullopt, MassKind::probability};
}

UnivariateDist UnivariateDist::from_weights(std::vector<double> support,
                                            std::vector<std::int64_t> weights) {
  const std::int64_t total = checked_total(weights);
  if (total <= 0) throw InvalidDistribution("total weight must be positive");
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probs[i] = static_cast<double>(weights[i]) / static_cast<double>(total);
  }
  return {std::move(support), std::move(probs), std::move(weights), MassKind::probability};
}

UnivariateDist UnivariateDist::from_atoms(std::vector<std::pair<double, double>> atoms) {
  std::map<double, double> merged;
  for (const auto& [y, p] : atoms) merged[y] += p;
  std::vector<double> support;
  std::vector<double> probs;
  for (const auto& [y, p] : merged) {
    support.push_back(y);
    probs.push_back(p);
  }
  return from_probs(std::move(support), std::move(probs));
}

UnivariateDist UnivariateDist::from_weighted_atoms(
    std::vector<std::pair<double, std::int64_t>> atoms) {
  std::map<double, std::int64_t> merged;
  for (const auto& [y, w] : atoms) merged[y] += w;
  std::vector<double> support;
  std::vector<std::int64_t> weights;
  for (const auto& [y, w] : merged) {
    support.push_back(y);
    weights.push_back(w);
  }
  return from_weights(std::move(support), std::move(weights));
}

UnivariateDist UnivariateDist::measure(std::vector<double> support, std::vector<double> masses) {
  return {std::move(support), std::move(masses), std::nullopt, MassKind::measure};
}

UnivariateDist UnivariateDist::measure_from_weights(std::vector<double> support,
                                                    std::vector<std::int64_t> weights) {
  checked_total(weights);
  std::vector<double> masses(weights.begin(), weights.end());
  return {std::move(support), std::move(masses), std::move(weights), MassKind::measure};
}

UnivariateDist UnivariateDist::point_mass(double y) {
  return from_weights({y}, {1});
}

const std::vector<std::int64_t>& UnivariateDist::weights() const {
  if (!weights_) throw std::logic_error("distribution carries no integer weights");
  return *weights_;
}

std::int64_t UnivariateDist::total_weight() const {
  const auto& w = weights();
  return std::accumulate(w.begin(), w.end(), std::int64_t{0});
}

UnivariateDist UnivariateDist::canonical() const {
  std::vector<double> support;
  std::vector<double> probs;
  std::optional<std::vector<std::int64_t>> weights;
  if (weights_) weights.emplace();
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const bool positive = weights_ ? (*weights_)[i] > 0 : probs_[i] > 0.0;
    if (!positive) continue;
    support.push_back(support_[i]);
    probs.push_back(probs_[i]);
    if (weights_) weights->push_back((*weights_)[i]);
  }
  if (support.empty()) throw InvalidDistribution("distribution has no positive atom");
  UnivariateDist out = *this;
  out.support_ = std::move(support);
  out.probs_ = std::move(probs);
  out.weights_ = std::move(weights);
  return out;
}

bool UnivariateDist::same_as(const UnivariateDist& other) const {
  const UnivariateDist a = canonical();
  const UnivariateDist b = other.canonical();
  if (a.support_ != b.support_) return false;
  if (a.weights_ && b.weights_) {
    const arith::Wide wa = a.total_weight();
    const arith::Wide wb = b.total_weight();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<arith::Wide>((*a.weights_)[i]) * wb
          != static_cast<arith::Wide>((*b.weights_)[i]) * wa) {
        return false;
      }
    }
    return true;
  }
  return a.probs_ == b.probs_;
}

double cdf(const UnivariateDist& q, double y) {
  const auto& s = q.support();
  if (y < s.front()) return 0.0;
  const auto last = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), y) - s.begin());
  if (q.kind() == MassKind::probability) {
    bool tail_empty = true;
    for (std::size_t i = last; i < s.size(); ++i) {
      if (q.probs()[i] > 0.0) {
        tail_empty = false;
        break;
      }
    }
    if (tail_empty) return 1.0;
    if (q.has_weights()) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < last; ++i) acc += q.weights()[i];
      return static_cast<double>(acc) / static_cast<double>(q.total_weight());
    }
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < last; ++i) acc += q.probs()[i];
  return acc;
}

double cdf_left(const UnivariateDist& q, double y) {
  const auto& s = q.support();
  const auto idx = std::lower_bound(s.begin(), s.end(), y) - s.begin();
  if (idx == 0) return 0.0;
  return cdf(q, s[static_cast<std::size_t>(idx - 1)]);
}

double quantile(const UnivariateDist& q, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("quantile level must lie in [0, 1]");
  }
  if (alpha == 0.0) return -kInf;
  const auto& s = q.support();
  std::size_t last_positive = s.size();
  for (std::size_t i = s.size(); i-- > 0;) {
    if (q.probs()[i] > 0.0) {
      last_positive = i;
      break;
    }
  }
  if (last_positive == s.size()) return kInf;
  const bool exact = q.has_weights() && q.kind() == MassKind::probability;
  const double total_weight = exact ? static_cast<double>(q.total_weight()) : 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i <= last_positive; ++i) {
    if (!(q.probs()[i] > 0.0)) continue;
    acc += exact ? static_cast<double>(q.weights()[i]) : q.probs()[i];
    double g = exact ? acc / total_weight : acc;
    if (i == last_positive && q.kind() == MassKind::probability) g = 1.0;
    if (g >= alpha) return s[i];
  }
  return kInf;
}

double interval_mass(const UnivariateDist& q, const Interval& interval) {
  const auto [first, last] = atom_range(q.support(), interval);
  double acc = 0.0;
  for (std::size_t i = first; i < last; ++i) acc += q.probs()[i];
  return acc;
}

std::int64_t interval_weight(const UnivariateDist& q, const Interval& interval) {
  const auto [first, last] = atom_range(q.support(), interval);
  std::int64_t acc = 0;
  for (std::size_t i = first; i < last; ++i) acc += q.weights()[i];
  return acc;
}

std::vector<double> left_support(const UnivariateDist& q) {
  std::vector<double> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q.probs()[i] > 0.0) out.push_back(q.support()[i]);
  }
  return out;
}

// ----------------------------------------------------------- BivariateDist

BivariateDist::BivariateDist(std::vector<double> xs, std::vector<double> ys,
                             std::vector<double> pmf,
                             std::optional<std::vector<std::int64_t>> weights)
    : xs_(std::move(xs)), ys_(std::move(ys)), pmf_(std::move(pmf)), weights_(std::move(weights)) {
  if (xs_.empty() || ys_.empty()) throw InvalidDistribution("supports must be nonempty");
  if (pmf_.size() != xs_.size() * ys_.size()) {
    throw InvalidDistribution("pmf shape does not match supports");
  }
  require_increasing(xs_, "x");
  require_increasing(ys_, "y");
  require_masses(pmf_, true);
  total_ = std::accumulate(pmf_.begin(), pmf_.end(), 0.0);
  require_unit_total(total_);
}

BivariateDist BivariateDist::from_pmf(std::vector<double> xs, std::vector<double> ys,
                                      const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  if (rows.size() != xs.size()) throw InvalidDistribution("pmf row count does not match x support");
  for (const auto& row : rows) {
    if (row.size() != ys.size()) {
      throw InvalidDistribution("pmf column count does not match y support");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return {std::move(xs), std::move(ys), std::move(flat), std::nullopt};
}

BivariateDist BivariateDist::from_weights(std::vector<double> xs, std::vector<double> ys,
                                          const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::int64_t> flat;
  if (rows.size() != xs.size()) throw InvalidDistribution("pmf row count does not match x support");
  for (const auto& row : rows) {
    if (row.size() != ys.size()) {
      throw InvalidDistribution("pmf column count does not match y support");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  const std::int64_t total = checked_total(flat);
  if (total <= 0) throw InvalidDistribution("total weight must be positive");
  std::vector<double> pmf(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    pmf[i] = static_cast<double>(flat[i]) / static_cast<double>(total);
  }
  return {std::move(xs), std::move(ys), std::move(pmf), std::move(flat)};
}

namespace {

template <class Cells, class Value>
auto collect_grid(const Cells& cells, Value value) {
  std::map<double, std::size_t> xi;
  std::map<double, std::size_t> yi;
  for (const auto& c : cells) {
    xi.emplace(c.x, 0);
    yi.emplace(c.y, 0);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (auto& [x, idx] : xi) {
    idx = xs.size();
    xs.push_back(x);
  }
  for (auto& [y, idx] : yi) {
    idx = ys.size();
    ys.push_back(y);
  }
  using V = decltype(value(cells.front()));
  std::vector<std::vector<V>> rows(xs.size(), std::vector<V>(ys.size(), V{0}));
  for (const auto& c : cells) rows[xi[c.x]][yi[c.y]] += value(c);
  return std::make_tuple(std::move(xs), std::move(ys), std::move(rows));
}

}  // namespace

BivariateDist BivariateDist::from_cells(const std::vector<Cell>& cells) {
  if (cells.empty()) throw InvalidDistribution("no cells given");
  auto [xs, ys, rows] = collect_grid(cells, [](const Cell& c) { return c.prob; });
  return from_pmf(std::move(xs), std::move(ys), rows);
}

BivariateDist BivariateDist::from_weighted_cells(const std::vector<WeightedCell>& cells) {
  if (cells.empty()) throw InvalidDistribution("no cells given");
  auto [xs, ys, rows] = collect_grid(cells, [](const WeightedCell& c) { return c.weight; });
  return from_weights(std::move(xs), std::move(ys), rows);
}

const std::vector<std::int64_t>& BivariateDist::weights() const {
  if (!weights_) throw std::logic_error("distribution carries no integer weights");
  return *weights_;
}

std::int64_t BivariateDist::total_weight() const {
  const auto& w = weights();
  return std::accumulate(w.begin(), w.end(), std::int64_t{0});
}

std::pair<UnivariateDist, UnivariateDist> marginals(const BivariateDist& r) {
  const std::size_t l = r.rows();
  const std::size_t m = r.cols();
  if (r.has_weights()) {
    std::vector<std::int64_t> pw(l, 0);
    std::vector<std::int64_t> qw(m, 0);
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        pw[i] += r.weight_at(i, j);
        qw[j] += r.weight_at(i, j);
      }
    }
    return {UnivariateDist::from_weights(r.x_support(), std::move(pw)),
            UnivariateDist::from_weights(r.y_support(), std::move(qw))};
  }
  std::vector<double> p(l, 0.0);
  std::vector<double> q(m, 0.0);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      p[i] += r.at(i, j);
      q[j] += r.at(i, j);
    }
  }
  return {UnivariateDist::from_probs(r.x_support(), std::move(p)),
          UnivariateDist::from_probs(r.y_support(), std::move(q))};
}

namespace {

bool row_positive(const BivariateDist& r, std::size_t i) {
  for (std::size_t j = 0; j < r.cols(); ++j) {
    if (r.has_weights() ? r.weight_at(i, j) > 0 : r.at(i, j) > 0.0) return true;
  }
  return false;
}

}  // namespace

Interval range_x(const BivariateDist& r) {
  std::optional<double> lo;
  std::optional<double> hi;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (!row_positive(r, i)) continue;
    if (!lo) lo = r.x_support()[i];
    hi = r.x_support()[i];
  }
  if (!lo) throw InvalidDistribution("x-marginal has no positive atom");
  return Interval::closed(*lo, *hi);
}

std::optional<std::size_t> x_atom_index(const BivariateDist& r, double x) {
  const auto& xs = r.x_support();
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) return std::nullopt;
  const auto i = static_cast<std::size_t>(it - xs.begin());
  if (!row_positive(r, i)) return std::nullopt;
  return i;
}

UnivariateDist conditional_row(const BivariateDist& r, double x) {
  const auto idx = x_atom_index(r, x);
  if (!idx) throw std::domain_error("conditional_row: x is not an atom with positive mass");
  const std::size_t i = *idx;
  if (r.has_weights()) {
    std::vector<std::int64_t> w(r.cols());
    for (std::size_t j = 0; j < r.cols(); ++j) w[j] = r.weight_at(i, j);
    return UnivariateDist::from_weights(r.y_support(), std::move(w));
  }
  std::vector<double> p(r.cols());
  double total = 0.0;
  for (std::size_t j = 0; j < r.cols(); ++j) total += r.at(i, j);
  for (std::size_t j = 0; j < r.cols(); ++j) p[j] = r.at(i, j) / total;
  return UnivariateDist::from_probs(r.y_support(), std::move(p));
}

}  // namespace stochord
